"""Differential calculus on Boolean hypercubes over GF(2).

The hypercube of dimension n is the Cayley graph of the n-fold power of
the order-2 group over its unit vectors, so a point's neighborhood is
the Hamming ball of radius 1.  Continuous linear maps are exactly the
GF(2) matrices with at most one 1 per column, and the classification of
differentials specializes pleasantly: every nonzero column of a map and
its neighbors agree, so the three candidate shapes are isolated
matrices (two or more distinct nonzero columns), the zero matrix, and
matrices with a single repeated column.

Points are bit tuples; the index of a point spells its bits with
variable 1 as the most significant bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import anf, gf2, guards
from .cayley import CayleyGraph, cayley_graph
from .errors import (
    CrossCheckMismatch,
    DimMismatch,
    NotContinuous,
    NotDifferentiable,
)
from .groups import z2_power_group
from .spaces import FiniteMap, ReflexiveDigraph

__all__ = [
    "BoolPoint",
    "point_index",
    "index_point",
    "neighborhood_indices",
    "GF2Matrix",
    "BoolFunction",
    "hypercube",
    "hypercube_digraph",
    "apply",
    "is_continuous_linear",
    "continuous_linear_maps",
    "linear_neighbors",
    "linear_map_space",
    "boolean_differentials_at",
    "solve_matrix_equation",
    "CensusReport",
    "scalar_differentiability_census",
    "LeibnizTrial",
    "LeibnizReport",
    "leibniz_probe",
]

BoolPoint = tuple[int, ...]


def point_index(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        if b not in (0, 1):
            raise DimMismatch(f"bit {b!r} is not 0 or 1")
        idx = idx * 2 + b
    return idx


def index_point(idx: int, m: int) -> BoolPoint:
    if not 0 <= idx < 2**m:
        raise DimMismatch(f"index {idx} outside a {m}-cube")
    return tuple((idx >> (m - 1 - k)) & 1 for k in range(m))


def neighborhood_indices(idx: int, m: int) -> tuple[int, ...]:
    """Hamming ball of radius 1 around the point, as sorted indices."""
    return tuple(sorted({idx} | {idx ^ (1 << k) for k in range(m)}))


@dataclass(frozen=True)
class GF2Matrix:
    """Dense 0/1 matrix, row-major; acts on column bit vectors."""

    rows: int
    cols: int
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise DimMismatch(f"{len(self.bits)} rows, declared {self.rows}")
        for row in self.bits:
            if len(row) != self.cols:
                raise DimMismatch(f"row of length {len(row)}, declared {self.cols}")
            for v in row:
                if v not in (0, 1):
                    raise DimMismatch(f"entry {v!r} is not a bit")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "GF2Matrix":
        cols = len(columns)
        rows = len(columns[0]) if columns else 0
        return cls(
            rows, cols, tuple(tuple(c[i] for c in columns) for i in range(rows))
        )

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.bits)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def distinct_nonzero_columns(self) -> frozenset[tuple[int, ...]]:
        return frozenset(c for c in self.columns() if any(c))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.bits)

    def apply_bits(self, x: Sequence[int]) -> BoolPoint:
        if len(x) != self.cols:
            raise DimMismatch(f"point of length {len(x)} for {self.cols} columns")
        out = []
        for row in self.bits:
            acc = 0
            for rj, xj in zip(row, x):
                acc ^= rj & xj
            out.append(acc)
        return tuple(out)

    def apply_index(self, idx: int) -> int:
        return point_index(self.apply_bits(index_point(idx, self.cols)))

    def compose(self, inner: "GF2Matrix") -> "GF2Matrix":
        """Matrix product self * inner (apply inner first)."""
        if inner.rows != self.cols:
            raise DimMismatch(
                f"cannot compose: inner has {inner.rows} rows, outer {self.cols} columns"
            )
        return GF2Matrix.from_columns(
            tuple(self.apply_bits(inner.column(j)) for j in range(inner.cols))
        )

    def as_finite_map(self) -> FiniteMap:
        return FiniteMap(
            2**self.cols,
            2**self.rows,
            tuple(self.apply_index(i) for i in range(2**self.cols)),
        )


def apply(matrix: GF2Matrix, x: Sequence[int]) -> BoolPoint:
    return matrix.apply_bits(x)


@dataclass(frozen=True)
class BoolFunction:
    """Arbitrary function between hypercubes, stored as a dense table."""

    m: int
    n: int
    table: tuple[BoolPoint, ...]

    def __post_init__(self):
        guards.check("bool_table_dim", self.m, "boolean function table")
        if len(self.table) != 2**self.m:
            raise DimMismatch(
                f"table of {len(self.table)} entries for a {self.m}-cube"
            )
        for out in self.table:
            if len(out) != self.n or any(b not in (0, 1) for b in out):
                raise DimMismatch(f"output {out!r} is not a {self.n}-bit point")

    @classmethod
    def from_source(cls, source: str, m: int | None = None) -> "BoolFunction":
        m, table = anf.tabulate(source, m)
        return cls(m, len(table[0]), table)

    @classmethod
    def from_finite_map(cls, fm: FiniteMap, m: int, n: int) -> "BoolFunction":
        if fm.dom_size != 2**m or fm.cod_size != 2**n:
            raise DimMismatch(
                f"map {fm.dom_size}->{fm.cod_size} is not {2**m}->{2**n}"
            )
        return cls(m, n, tuple(index_point(v, n) for v in fm.values))

    def as_finite_map(self) -> FiniteMap:
        return FiniteMap(
            2**self.m, 2**self.n, tuple(point_index(out) for out in self.table)
        )

    def value(self, b: Sequence[int] | int) -> BoolPoint:
        idx = b if isinstance(b, int) else point_index(b)
        return self.table[idx]

    def compose(self, inner: "BoolFunction") -> "BoolFunction":
        if inner.n != self.m:
            raise DimMismatch(
                f"cannot compose: inner lands in {inner.n} bits, outer reads {self.m}"
            )
        return BoolFunction(
            inner.m,
            self.n,
            tuple(self.table[point_index(out)] for out in inner.table),
        )

    def pointwise_product(self, other: "BoolFunction") -> "BoolFunction":
        if self.n != 1 or other.n != 1 or self.m != other.m:
            raise DimMismatch("pointwise product needs two scalar functions on one cube")
        return BoolFunction(
            self.m,
            1,
            tuple((a[0] & b[0],) for a, b in zip(self.table, other.table)),
        )


def hypercube(n: int) -> CayleyGraph:
    """Cayley graph of the n-dimensional hypercube over unit vectors."""
    guards.check("hypercube_dim", n, f"hypercube of dimension {n}")
    group = z2_power_group(n)
    return cayley_graph(group, tuple(2**k for k in range(n)))


def hypercube_digraph(n: int) -> ReflexiveDigraph:
    """The hypercube's digraph alone, built directly from bit flips."""
    guards.check("hypercube_dim", n, f"hypercube digraph of dimension {n}")
    return ReflexiveDigraph(
        tuple(frozenset(neighborhood_indices(b, n)) for b in range(2**n))
    )


def is_continuous_linear(matrix: GF2Matrix) -> bool:
    """A linear map is continuous exactly when every column has weight <= 1."""
    return all(sum(matrix.column(j)) <= 1 for j in range(matrix.cols))


def continuous_linear_maps(m: int, n: int) -> tuple[GF2Matrix, ...]:
    """All continuous linear maps from the m-cube to the n-cube.

    There are (n+1)^m of them: each column is zero or a unit vector.
    """
    guards.check("bool_candidates", (n + 1) ** m, "continuous linear enumeration")
    unit = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    choices = [tuple([0] * n)] + unit
    out = [
        GF2Matrix.from_columns(cols)
        for cols in itertools.product(choices, repeat=m)
    ]
    return tuple(sorted(out, key=lambda mt: mt.bits))


def _neighbor_criterion(a: GF2Matrix, b: GF2Matrix) -> bool:
    """Neighbors in the linear map space: all nonzero columns of the two
    matrices are one and the same vector."""
    return len(a.distinct_nonzero_columns() | b.distinct_nonzero_columns()) <= 1


def linear_neighbors(matrix: GF2Matrix) -> tuple[GF2Matrix, ...]:
    """All continuous linear neighbors of a continuous linear map."""
    if not is_continuous_linear(matrix):
        raise NotContinuous("matrix has a column of weight > 1")
    m, n = matrix.cols, matrix.rows
    nz = matrix.distinct_nonzero_columns()
    if len(nz) >= 2:
        return (matrix,)
    guards.check("bool_candidates", (n + 1) * 2**m, "linear neighbor enumeration")
    out = []
    if len(nz) == 1:
        c = next(iter(nz))
        zero_col = tuple([0] * n)
        for cols in itertools.product((zero_col, c), repeat=m):
            out.append(GF2Matrix.from_columns(cols))
    else:
        out.append(GF2Matrix.zero(n, m))
        zero_col = tuple([0] * n)
        for k in range(n):
            c = tuple(1 if i == k else 0 for i in range(n))
            for cols in itertools.product((zero_col, c), repeat=m):
                mt = GF2Matrix.from_columns(cols)
                if not mt.is_zero():
                    out.append(mt)
    return tuple(sorted(out, key=lambda mt: mt.bits))


def linear_map_space(m: int, n: int):
    """The continuous linear maps as a differential map space.

    Returns (matrices, MapSpace) with matching indices, for feeding the
    generic differential machinery.
    """
    from .differential import MapSpace  # local import to keep layering one-way

    matrices = continuous_linear_maps(m, n)
    maps = tuple(mt.as_finite_map() for mt in matrices)
    # the pair criterion speaks about distinct maps; reflexivity is by fiat
    nbhd = tuple(
        frozenset({i})
        | frozenset(
            j
            for j in range(len(matrices))
            if j != i and _neighbor_criterion(matrices[i], matrices[j])
        )
        for i in range(len(matrices))
    )
    space = MapSpace(hypercube_digraph(m), hypercube_digraph(n), maps, nbhd)
    return matrices, space


def _normalize_point(b: Sequence[int] | int, m: int) -> int:
    if isinstance(b, int):
        if not 0 <= b < 2**m:
            raise DimMismatch(f"index {b} outside a {m}-cube")
        return b
    if len(b) != m:
        raise DimMismatch(f"point of length {len(b)} in a {m}-cube")
    return point_index(b)


def boolean_differentials_at(
    f: BoolFunction, b: Sequence[int] | int, *, cross_check: bool = False
) -> tuple[GF2Matrix, ...]:
    """Differentials of f at the point b among continuous linear maps.

    Classification by column shape: matrices with two distinct nonzero
    columns are isolated and must agree with f on the whole Hamming
    ball; the zero matrix needs every nearby value in the ball around
    the origin; a single-column matrix needs every nearby value inside
    its two-point image.  The latter two also force f(0) = 0 whenever
    the origin is in sight, since linear maps cannot move it.
    """
    b_idx = _normalize_point(b, f.m)
    near = neighborhood_indices(b_idx, f.m)
    zero_out = tuple([0] * f.n)
    origin_near = 0 in near
    out = []
    for mt in continuous_linear_maps(f.m, f.n):
        nz = mt.distinct_nonzero_columns()
        if len(nz) >= 2:
            ok = all(
                mt.apply_bits(index_point(x, f.m)) == f.table[x] for x in near
            )
        elif len(nz) == 0:
            ok = all(sum(f.table[x]) <= 1 for x in near) and (
                not origin_near or f.table[0] == zero_out
            )
        else:
            beta = next(iter(nz))
            ok = all(f.table[x] in (zero_out, beta) for x in near) and (
                not origin_near or f.table[0] == zero_out
            )
        if ok:
            out.append(mt)
    result = tuple(out)

    if cross_check:
        from .differential import DifferentialQuery, differentials_at

        matrices, space = linear_map_space(f.m, f.n)
        generic = differentials_at(
            DifferentialQuery(space, f.as_finite_map(), b_idx)
        )
        got = {matrices[i].bits for i in generic}
        want = {mt.bits for mt in result}
        if got != want:
            raise CrossCheckMismatch(
                f"boolean classification disagrees with the generic criterion "
                f"at point {b_idx}: {sorted(want)} vs {sorted(got)}"
            )
    return result


def row_anf(row: Sequence[int]) -> str:
    """Render one matrix row as a polynomial over p, q, r, ..."""
    terms = [anf._VARS[j] for j, bit in enumerate(row) if bit]
    return "+".join(terms) if terms else "0"


def matrix_anf(mt: GF2Matrix) -> str:
    """Render a whole matrix as a tuple of row polynomials."""
    return "(" + ", ".join(row_anf(r) for r in mt.bits) + ")"


def solve_matrix_equation(f: BoolFunction, b: Sequence[int] | int) -> tuple[GF2Matrix, ...]:
    """Continuous linear maps agreeing with f on the whole ball around b.

    Solves one GF(2) linear system per output row, takes the product of
    the row solution sets, and keeps the continuous results.  Restricted
    to isolated matrices this is an independent route to the first case
    of the classification.
    """
    b_idx = _normalize_point(b, f.m)
    near = neighborhood_indices(b_idx, f.m)
    # rows of the system: the points themselves, bit j <-> column j
    sys_rows = []
    for x in near:
        bits = index_point(x, f.m)
        mask = 0
        for j, bit in enumerate(bits):
            if bit:
                mask |= 1 << j
        sys_rows.append(mask)
    row_solutions: list[list[int]] = []
    total = 1
    for r in range(f.n):
        rhs = [f.table[x][r] for x in near]
        solved = gf2.solve_affine(sys_rows, rhs, f.m)
        if solved is None:
            return ()
        particular, basis = solved
        sols = gf2.all_solutions(particular, basis)
        row_solutions.append(sols)
        total *= len(sols)
        guards.check("bool_candidates", total, "matrix equation solution sweep")
    out = []
    for picks in itertools.product(*row_solutions):
        bits = tuple(
            tuple((mask >> j) & 1 for j in range(f.m)) for mask in picks
        )
        mt = GF2Matrix(f.n, f.m, bits)
        if is_continuous_linear(mt):
            out.append(mt)
    return tuple(sorted(out, key=lambda mt: mt.bits))


@dataclass(frozen=True)
class CensusReport:
    m: int
    differentiable: tuple[bool, ...]
    expected: tuple[bool, ...]
    matches: bool


def scalar_differentiability_census(f: BoolFunction) -> CensusReport:
    """Where a scalar function is differentiable, with the predicted pattern.

    Scalar codomain: differentiable everywhere outside the ball around
    the origin, and on that ball exactly when f(0) = 0.  The report
    compares the computed set against this pattern.
    """
    if f.n != 1:
        raise DimMismatch("census needs a scalar codomain")
    origin_ball = set(neighborhood_indices(0, f.m))
    got = tuple(
        bool(boolean_differentials_at(f, b)) for b in range(2**f.m)
    )
    zero_at_origin = f.table[0] == (0,)
    expected = tuple(
        (b not in origin_ball) or zero_at_origin for b in range(2**f.m)
    )
    return CensusReport(f.m, got, expected, got == expected)


@dataclass(frozen=True)
class LeibnizTrial:
    outer: GF2Matrix
    inner: GF2Matrix
    candidate: GF2Matrix
    is_differential: bool


@dataclass(frozen=True)
class LeibnizReport:
    total: int
    satisfied: int
    trials: tuple[LeibnizTrial, ...]


def leibniz_probe(f: BoolFunction, g: BoolFunction, b: Sequence[int] | int) -> LeibnizReport:
    """Try the product-rule shape L_f*g(b) + f(b)*L_g on pointwise products.

    Purely observational: reports how many candidate combinations land
    in the differential set of f*g at b, asserting nothing.
    """
    if f.n != 1 or g.n != 1 or f.m != g.m:
        raise DimMismatch("probe needs two scalar functions on the same cube")
    b_idx = _normalize_point(b, f.m)
    f_diffs = boolean_differentials_at(f, b_idx)
    if not f_diffs:
        raise NotDifferentiable("first factor has no differential at the point")
    g_diffs = boolean_differentials_at(g, b_idx)
    if not g_diffs:
        raise NotDifferentiable("second factor has no differential at the point")
    product = f.pointwise_product(g)
    prod_diffs = {mt.bits for mt in boolean_differentials_at(product, b_idx)}
    fb = f.table[b_idx][0]
    gb = g.table[b_idx][0]
    trials = []
    satisfied = 0
    for lf in f_diffs:
        for lg in g_diffs:
            row = tuple(
                (gb & lf.bits[0][j]) ^ (fb & lg.bits[0][j]) for j in range(f.m)
            )
            cand = GF2Matrix(1, f.m, (row,))
            hit = cand.bits in prod_diffs
            satisfied += hit
            trials.append(LeibnizTrial(lf, lg, cand, hit))
    return LeibnizReport(len(trials), satisfied, tuple(trials))

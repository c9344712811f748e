"""Finite convergence spaces presented as reflexive digraphs.

A space is a reflexive digraph on vertices ``0..size-1``; ``nbhd[v]`` is
the set of out-neighbors of ``v`` including ``v`` itself, and plays the
role of the smallest neighborhood of ``v``.  On a finite carrier every
filter is principal, so a filter is just its nonempty minimal set, and
the filter converges to ``v`` exactly when that set sits inside
``nbhd[v]``.  Continuity of a map then coincides with being a digraph
homomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import guards
from .errors import DimMismatch, MalformedTable, NotContinuous

__all__ = [
    "FiniteMap",
    "ReflexiveDigraph",
    "PrincipalFilter",
    "SpaceProperties",
    "converges",
    "is_continuous_at",
    "is_continuous",
    "hom_neighbor",
    "continuous_maps",
    "box_product",
    "categorical_product",
    "pair_index",
    "unpair_index",
    "diagonal_map",
    "space_properties",
    "adherence",
    "pentacle",
    "discrete_digraph",
    "digraph_to_json",
    "digraph_from_json",
]


@dataclass(frozen=True)
class FiniteMap:
    """Total function between finite carriers, stored as a value tuple."""

    dom_size: int
    cod_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.dom_size:
            raise DimMismatch(
                f"map has {len(self.values)} values for domain size {self.dom_size}"
            )
        for v in self.values:
            if not 0 <= v < self.cod_size:
                raise DimMismatch(f"value {v} outside codomain 0..{self.cod_size - 1}")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def compose(self, inner: "FiniteMap") -> "FiniteMap":
        """self after inner."""
        if inner.cod_size != self.dom_size:
            raise DimMismatch(
                f"cannot compose: inner codomain {inner.cod_size} "
                f"!= outer domain {self.dom_size}"
            )
        return FiniteMap(
            inner.dom_size, self.cod_size, tuple(self.values[v] for v in inner.values)
        )

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    @classmethod
    def identity(cls, size: int) -> "FiniteMap":
        return cls(size, size, tuple(range(size)))

    @classmethod
    def constant(cls, dom_size: int, cod_size: int, value: int) -> "FiniteMap":
        return cls(dom_size, cod_size, (value,) * dom_size)


@dataclass(frozen=True)
class ReflexiveDigraph:
    """Vertices ``0..size-1`` with reflexive out-neighborhood sets."""

    nbhd: tuple[frozenset[int], ...]

    def __post_init__(self):
        n = len(self.nbhd)
        for v, nv in enumerate(self.nbhd):
            if v not in nv:
                raise MalformedTable(f"digraph not reflexive at vertex {v}")
            for u in nv:
                if not 0 <= u < n:
                    raise MalformedTable(f"neighbor {u} of {v} outside 0..{n - 1}")

    @property
    def size(self) -> int:
        return len(self.nbhd)

    @classmethod
    def from_neighborhoods(cls, neighborhoods: Iterable[Iterable[int]]) -> "ReflexiveDigraph":
        return cls(tuple(frozenset(nv) for nv in neighborhoods))


@dataclass(frozen=True)
class PrincipalFilter:
    """A filter on a finite carrier, identified with its minimal set."""

    minset: frozenset[int]

    def __post_init__(self):
        if not self.minset:
            raise MalformedTable("principal filter needs a nonempty minimal set")

    @classmethod
    def point(cls, v: int) -> "PrincipalFilter":
        return cls(frozenset((v,)))

    @classmethod
    def of(cls, elems: Iterable[int]) -> "PrincipalFilter":
        return cls(frozenset(elems))


def converges(space: ReflexiveDigraph, filt: PrincipalFilter, v: int) -> bool:
    """Whether the filter converges to ``v``.

    The filter contains ``nbhd[v]`` exactly when its minimal set is a
    subset of ``nbhd[v]``.
    """
    return filt.minset <= space.nbhd[v]


def is_continuous_at(
    dom: ReflexiveDigraph, cod: ReflexiveDigraph, f: FiniteMap, v: int
) -> bool:
    """f maps the smallest neighborhood of ``v`` into that of ``f(v)``."""
    _check_map_dims(dom, cod, f)
    target = cod.nbhd[f.values[v]]
    return all(f.values[u] in target for u in dom.nbhd[v])


def is_continuous(dom: ReflexiveDigraph, cod: ReflexiveDigraph, f: FiniteMap) -> bool:
    _check_map_dims(dom, cod, f)
    vals = f.values
    for v, nv in enumerate(dom.nbhd):
        target = cod.nbhd[vals[v]]
        for u in nv:
            if vals[u] not in target:
                return False
    return True


def _check_map_dims(dom: ReflexiveDigraph, cod: ReflexiveDigraph, f: FiniteMap) -> None:
    if f.dom_size != dom.size or f.cod_size != cod.size:
        raise DimMismatch(
            f"map {f.dom_size}->{f.cod_size} does not fit spaces "
            f"{dom.size}->{cod.size}"
        )


def hom_neighbor(
    dom: ReflexiveDigraph, cod: ReflexiveDigraph, f: FiniteMap, g: FiniteMap
) -> bool:
    """Whether ``f`` lies in the neighborhood of ``g`` in the map space.

    Both maps must be continuous.  The criterion: f(a) is a neighbor of
    g(b) whenever a is a neighbor of b.
    """
    if not is_continuous(dom, cod, f):
        raise NotContinuous("first map is not continuous")
    if not is_continuous(dom, cod, g):
        raise NotContinuous("second map is not continuous")
    for b, nb in enumerate(dom.nbhd):
        target = cod.nbhd[g.values[b]]
        for a in nb:
            if f.values[a] not in target:
                return False
    return True


def continuous_maps(dom: ReflexiveDigraph, cod: ReflexiveDigraph) -> tuple[FiniteMap, ...]:
    """All continuous maps dom -> cod, in lexicographic order of value tuples."""
    total = cod.size**dom.size
    guards.check("map_enumeration", total, "exhaustive map enumeration")
    out = []
    nbhd_d = dom.nbhd
    nbhd_c = cod.nbhd
    for combo in itertools.product(range(cod.size), repeat=dom.size):
        ok = True
        for v, nv in enumerate(nbhd_d):
            target = nbhd_c[combo[v]]
            for u in nv:
                if combo[u] not in target:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(FiniteMap(dom.size, cod.size, combo))
    return tuple(out)


def pair_index(a: int, b: int, right_size: int) -> int:
    """Canonical index of the pair (a, b): a * right_size + b."""
    return a * right_size + b


def unpair_index(idx: int, right_size: int) -> tuple[int, int]:
    return divmod(idx, right_size)


def box_product(x: ReflexiveDigraph, y: ReflexiveDigraph) -> ReflexiveDigraph:
    """Box product: a pair moves in one coordinate at a time."""
    guards.check("product_vertices", x.size * y.size, "box product")
    nbhd = []
    for a in range(x.size):
        for b in range(y.size):
            cur = {pair_index(a, v, y.size) for v in y.nbhd[b]}
            cur.update(pair_index(u, b, y.size) for u in x.nbhd[a])
            nbhd.append(frozenset(cur))
    return ReflexiveDigraph(tuple(nbhd))


def categorical_product(x: ReflexiveDigraph, y: ReflexiveDigraph) -> ReflexiveDigraph:
    """Categorical product: both coordinates move independently."""
    guards.check("product_vertices", x.size * y.size, "categorical product")
    nbhd = []
    for a in range(x.size):
        for b in range(y.size):
            nbhd.append(
                frozenset(
                    pair_index(u, v, y.size) for u in x.nbhd[a] for v in y.nbhd[b]
                )
            )
    return ReflexiveDigraph(tuple(nbhd))


def diagonal_map(size: int) -> FiniteMap:
    """The map a -> (a, a) into a product carrier of size*size."""
    return FiniteMap(size, size * size, tuple(pair_index(a, a, size) for a in range(size)))


@dataclass(frozen=True)
class SpaceProperties:
    is_T0: bool
    is_T1: bool
    is_discrete: bool
    is_topological: bool


def space_properties(space: ReflexiveDigraph) -> SpaceProperties:
    """Separation and topologicity flags.

    ``is_T1`` is computed from unique limits of point filters (u in
    N(v) forces u == v) while ``is_discrete`` compares each
    neighborhood against the singleton; their equivalence is a theorem,
    not an assumption, and the test suite asserts it.
    """
    nbhd = space.nbhd
    t0 = len(set(nbhd)) == space.size
    t1 = all(u == v for v, nv in enumerate(nbhd) for u in nv)
    discrete = all(nv == frozenset((v,)) for v, nv in enumerate(nbhd))
    topological = all(nbhd[u] <= nv for v, nv in enumerate(nbhd) for u in nv)
    return SpaceProperties(t0, t1, discrete, topological)


def adherence(space: ReflexiveDigraph, subset: frozenset[int]) -> frozenset[int]:
    """Points whose smallest neighborhood meets the subset.

    This closure operator is idempotent exactly on topological spaces,
    which gives an independent route to ``is_topological``.
    """
    return frozenset(v for v in range(space.size) if space.nbhd[v] & subset)


def pentacle() -> ReflexiveDigraph:
    """Five vertices; p sees everything except p+3 mod 5.

    Homogeneous, T0, and not topological.
    """
    full = frozenset(range(5))
    return ReflexiveDigraph(tuple(full - {(p + 3) % 5} for p in range(5)))


def discrete_digraph(size: int) -> ReflexiveDigraph:
    return ReflexiveDigraph(tuple(frozenset((v,)) for v in range(size)))


def digraph_to_json(space: ReflexiveDigraph) -> dict:
    return {
        "size": space.size,
        "nbhd": [sorted(nv) for nv in space.nbhd],
    }


def digraph_from_json(data: dict) -> ReflexiveDigraph:
    try:
        size = data["size"]
        nbhd = data["nbhd"]
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"digraph JSON missing field: {exc}")
    if size != len(nbhd):
        raise MalformedTable(f"size {size} does not match {len(nbhd)} neighborhoods")
    return ReflexiveDigraph.from_neighborhoods(nbhd)


def map_to_json(f: FiniteMap) -> dict:
    return {
        "dom_size": f.dom_size,
        "cod_size": f.cod_size,
        "values": list(f.values),
    }


def map_from_json(data: dict) -> FiniteMap:
    try:
        dom_size = data["dom_size"]
        cod_size = data["cod_size"]
        values = data["values"]
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"map JSON missing field: {exc}")
    return FiniteMap(int(dom_size), int(cod_size), tuple(int(v) for v in values))

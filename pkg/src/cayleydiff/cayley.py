"""Cayley graphs of finite groups and their spaces of differentials.

The Cayley graph of (G, S) is the reflexive digraph with
``nbhd[g] = {g} union {g*s for s in S}``.  The differential space
D(C, D) collects the continuous group homomorphisms between the
underlying groups; continuity only needs checking at the identity, and
two distinct members are neighbors exactly when both images fit inside
{identity, d} for a single order-2 generator d of the codomain.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import CrossCheckMismatch, DimMismatch
from .groups import (
    FiniteGroup,
    GeneratingSet,
    element_order,
    enumerate_homomorphisms,
    validate_generating_set,
)
from .spaces import (
    FiniteMap,
    ReflexiveDigraph,
    hom_neighbor,
    is_continuous,
)

__all__ = [
    "CayleyGraph",
    "cayley_graph",
    "AutomorphismCheck",
    "left_mult_automorphism_check",
    "DiffSpace",
    "diff_space",
    "is_isolated",
    "group_multiplication_map",
    "IntegerMap",
    "IntegerDiffSpace",
    "integers_diff_space",
    "IntegerPlaneMap",
    "IntegerPlaneDiffSpace",
    "integers_plane_diff_space",
    "plane_member_as_cyclic_map",
]


@dataclass(frozen=True)
class CayleyGraph:
    group: FiniteGroup
    gens: GeneratingSet
    digraph: ReflexiveDigraph

    def __post_init__(self):
        if self.digraph.size != self.group.order:
            raise DimMismatch(
                f"digraph on {self.digraph.size} vertices for group of order "
                f"{self.group.order}"
            )


def cayley_graph(group: FiniteGroup, gens: Iterable[int] | GeneratingSet) -> CayleyGraph:
    """Build the reflexive Cayley digraph over a validated generating set."""
    if not isinstance(gens, GeneratingSet):
        gens = validate_generating_set(group, gens)
    table = group.table
    nbhd = tuple(
        frozenset({g} | {table[g][s] for s in gens.elements})
        for g in range(group.order)
    )
    return CayleyGraph(group, gens, ReflexiveDigraph(nbhd))


class AutomorphismCheck(NamedTuple):
    ok: bool
    witness: str | None


def left_mult_automorphism_check(c: CayleyGraph) -> AutomorphismCheck:
    """Verify that every left multiplication is a digraph automorphism.

    Returns a failure witness instead of raising, so corrupted graphs
    can be probed.
    """
    n = c.group.order
    dig = c.digraph
    for v in range(n):
        row = c.group.table[v]
        if len(set(row)) != n:
            return AutomorphismCheck(False, f"left multiplication by {v} is not a bijection")
        fwd = FiniteMap(n, n, tuple(row))
        inv_values = [0] * n
        for x, vx in enumerate(row):
            inv_values[vx] = x
        bwd = FiniteMap(n, n, tuple(inv_values))
        if not is_continuous(dig, dig, fwd):
            return AutomorphismCheck(
                False, f"left multiplication by {v} is not continuous"
            )
        if not is_continuous(dig, dig, bwd):
            return AutomorphismCheck(
                False, f"inverse of left multiplication by {v} is not continuous"
            )
    return AutomorphismCheck(True, None)


@dataclass(frozen=True)
class DiffSpace:
    """Continuous homomorphisms domain -> codomain with their neighborhoods.

    ``maps`` is sorted by value tuple; ``nbhd[i]`` holds the indices of
    maps converging to ``maps[i]`` (always including ``i``).
    """

    domain: CayleyGraph
    codomain: CayleyGraph
    maps: tuple[FiniteMap, ...]
    nbhd: tuple[frozenset[int], ...]


def diff_space(
    domain: CayleyGraph, codomain: CayleyGraph, *, cross_check: bool = False
) -> DiffSpace:
    """Enumerate D(domain, codomain).

    Membership uses continuity at the identity only; neighborhoods use
    the order-2 generator criterion.  With ``cross_check`` both are
    re-derived from the generic definitions and any disagreement raises
    :class:`CrossCheckMismatch`.
    """
    homs = enumerate_homomorphisms(domain.group, codomain.group)
    ne_h = codomain.digraph.nbhd[codomain.group.identity]
    ne_g = domain.digraph.nbhd[domain.group.identity]
    maps = tuple(
        phi for phi in homs if all(phi.values[x] in ne_h for x in ne_g)
    )

    order2 = frozenset(
        d for d in codomain.gens.elements if element_order(codomain.group, d) == 2
    )
    images = [phi.image() for phi in maps]
    e_h = codomain.group.identity
    nbhd = []
    for i in range(len(maps)):
        cur = {i}
        for j in range(len(maps)):
            if j == i:
                continue
            both = images[i] | images[j]
            if any(both <= frozenset((e_h, d)) for d in order2):
                cur.add(j)
        nbhd.append(frozenset(cur))
    space = DiffSpace(domain, codomain, maps, tuple(nbhd))

    if cross_check:
        for phi in homs:
            at_identity = all(phi.values[x] in ne_h for x in ne_g)
            globally = is_continuous(domain.digraph, codomain.digraph, phi)
            if at_identity != globally:
                raise CrossCheckMismatch(
                    f"continuity at identity ({at_identity}) disagrees with global "
                    f"continuity ({globally}) for map {phi.values}"
                )
        for i in range(len(maps)):
            for j in range(len(maps)):
                generic = hom_neighbor(
                    domain.digraph, codomain.digraph, maps[j], maps[i]
                )
                if generic != (j in space.nbhd[i]):
                    raise CrossCheckMismatch(
                        f"map-space edge ({j} -> {i}): generic criterion says "
                        f"{generic}, order-2 generator criterion says not"
                    )
    return space


def is_isolated(space: DiffSpace, index: int) -> bool:
    return space.nbhd[index] == frozenset((index,))


def group_multiplication_map(c: CayleyGraph) -> FiniteMap:
    """The product (a, b) -> a*b on the paired carrier of size |G|^2."""
    n = c.group.order
    values = tuple(
        c.group.table[a][b] for a in range(n) for b in range(n)
    )
    return FiniteMap(n * n, n, values)


class IntegerMap(Enum):
    """Members of the differential space of the integer line."""

    ZERO = "zero"
    IDENTITY = "identity"

    def evaluate(self, n: int) -> int:
        return 0 if self is IntegerMap.ZERO else n


@dataclass(frozen=True)
class IntegerDiffSpace:
    """Symbolic D(Z, Z): the zero map and the identity, both isolated."""

    members: tuple[IntegerMap, ...]

    def is_isolated(self, member: IntegerMap) -> bool:
        return True

    def neighbors(self, member: IntegerMap) -> tuple[IntegerMap, ...]:
        return (member,)

    @staticmethod
    def compose(outer: IntegerMap, inner: IntegerMap) -> IntegerMap:
        if outer is IntegerMap.IDENTITY and inner is IntegerMap.IDENTITY:
            return IntegerMap.IDENTITY
        return IntegerMap.ZERO


def integers_diff_space() -> IntegerDiffSpace:
    return IntegerDiffSpace((IntegerMap.ZERO, IntegerMap.IDENTITY))


class IntegerPlaneMap(Enum):
    """Members of the differential space of the integer plane into the line."""

    ZERO = "zero"
    PROJ1 = "proj1"
    PROJ2 = "proj2"
    SUM = "sum"

    def evaluate(self, a: int, b: int) -> int:
        if self is IntegerPlaneMap.ZERO:
            return 0
        if self is IntegerPlaneMap.PROJ1:
            return a
        if self is IntegerPlaneMap.PROJ2:
            return b
        return a + b


@dataclass(frozen=True)
class IntegerPlaneDiffSpace:
    """Symbolic D(Z^2, Z); discrete, so every member is isolated."""

    members: tuple[IntegerPlaneMap, ...]

    def is_isolated(self, member: IntegerPlaneMap) -> bool:
        return True

    def neighbors(self, member: IntegerPlaneMap) -> tuple[IntegerPlaneMap, ...]:
        return (member,)


def integers_plane_diff_space() -> IntegerPlaneDiffSpace:
    return IntegerPlaneDiffSpace(
        (
            IntegerPlaneMap.ZERO,
            IntegerPlaneMap.PROJ1,
            IntegerPlaneMap.PROJ2,
            IntegerPlaneMap.SUM,
        )
    )


def plane_member_as_cyclic_map(member: IntegerPlaneMap, n: int) -> FiniteMap:
    """Materialize a plane member on the paired carrier of Z_n x Z_n."""
    values = tuple(
        member.evaluate(a, b) % n for a in range(n) for b in range(n)
    )
    return FiniteMap(n * n, n, values)

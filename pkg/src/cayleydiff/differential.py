"""Differentials of arbitrary maps at a point.

A map L in a space of continuous maps is a differential of f at a when
every x in the smallest neighborhood of a has a witness k in the
smallest neighborhood of L with k(x) = f(x).  On finite carriers this
single check is equivalent to the full filter-quantifier definition,
because principal filters are determined by their minimal sets.

Three independent routes are provided: the neighborhood-matching
criterion (:func:`differentials_at`), a classification by the shape of
L for Cayley spaces (:func:`differentials_by_theorem`), and a naive
oracle with an optional literal sweep over all principal filters at the
point (:func:`differential_oracle`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import guards
from .cayley import DiffSpace, IntegerMap, is_isolated
from .errors import (
    DimMismatch,
    HypothesisViolated,
    NotCayley,
    NotContinuous,
    WindowTooSmall,
)
from .groups import element_order, squares_subgroup
from .spaces import (
    FiniteMap,
    ReflexiveDigraph,
    hom_neighbor,
    is_continuous,
    is_continuous_at,
    space_properties,
)

__all__ = [
    "MapSpace",
    "DifferentialQuery",
    "differentials_at",
    "differentials_by_theorem",
    "differential_oracle",
    "t1_forces_value_check",
    "ChainRuleReport",
    "chain_rule_check",
    "integers_differentiable_at",
]


@dataclass(frozen=True)
class MapSpace:
    """A chosen subspace of continuous maps with its convergence structure."""

    domain: ReflexiveDigraph
    codomain: ReflexiveDigraph
    maps: tuple[FiniteMap, ...]
    nbhd: tuple[frozenset[int], ...]
    cayley: DiffSpace | None = None

    @classmethod
    def from_diff_space(cls, space: DiffSpace) -> "MapSpace":
        return cls(
            space.domain.digraph,
            space.codomain.digraph,
            space.maps,
            space.nbhd,
            cayley=space,
        )

    @classmethod
    def from_continuous_maps(
        cls,
        domain: ReflexiveDigraph,
        codomain: ReflexiveDigraph,
        maps: Sequence[FiniteMap],
        *,
        verify: bool = True,
    ) -> "MapSpace":
        """Wrap an explicit map list, deriving neighborhoods from the
        generic map-space criterion."""
        maps = tuple(maps)
        if verify:
            for i, f in enumerate(maps):
                if not is_continuous(domain, codomain, f):
                    raise NotContinuous(f"map {i} with values {f.values}")
        nbhd = tuple(
            frozenset(
                j
                for j in range(len(maps))
                if hom_neighbor(domain, codomain, maps[j], maps[i])
            )
            for i in range(len(maps))
        )
        return cls(domain, codomain, maps, nbhd)


@dataclass(frozen=True)
class DifferentialQuery:
    space: MapSpace
    f: FiniteMap
    a: int

    def __post_init__(self):
        if self.f.dom_size != self.space.domain.size:
            raise DimMismatch(
                f"function domain {self.f.dom_size} != space domain "
                f"{self.space.domain.size}"
            )
        if self.f.cod_size != self.space.codomain.size:
            raise DimMismatch(
                f"function codomain {self.f.cod_size} != space codomain "
                f"{self.space.codomain.size}"
            )
        if not 0 <= self.a < self.space.domain.size:
            raise DimMismatch(f"point {self.a} outside the domain carrier")


def differentials_at(q: DifferentialQuery) -> tuple[int, ...]:
    """Indices of all differentials of f at a, sorted ascending.

    Uses bitmask intersection: for each x near a, collect the maps that
    agree with f at x; L qualifies when every such mask meets N(L).
    """
    maps = q.space.maps
    fv = q.f.values
    match_masks = []
    for x in sorted(q.space.domain.nbhd[q.a]):
        mask = 0
        want = fv[x]
        for k, m in enumerate(maps):
            if m.values[x] == want:
                mask |= 1 << k
        match_masks.append(mask)
    out = []
    for i in range(len(maps)):
        nb = 0
        for j in q.space.nbhd[i]:
            nb |= 1 << j
        if all(nb & mm for mm in match_masks):
            out.append(i)
    return tuple(out)


def differentials_by_theorem(q: DifferentialQuery) -> tuple[int, ...]:
    """Differentials computed by classifying each candidate map.

    Needs Cayley structure (raises :class:`NotCayley` otherwise).  The
    classification:

    * isolated L: f must agree with L on the whole neighborhood of a;
    * non-isolated constant L: every value of f near a is the identity
      or an order-2 generator of the codomain, and points of N(a) lying
      in the subgroup generated by squares must map to the identity;
    * non-isolated non-constant L: the image of L is {identity, d} for
      an order-2 generator d, every value of f near a lies in that
      image, and the squares-subgroup points again force the identity.

    The squares subgroup is exactly the common kernel of all
    homomorphisms onto an order-2 subgroup, so it marks the points
    where no neighbor of L can produce a non-identity value.
    """
    ds = q.space.cayley
    if ds is None:
        raise NotCayley("theorem route needs a diff space built from Cayley graphs")
    group = ds.domain.group
    e_h = ds.codomain.group.identity
    order2 = frozenset(
        d
        for d in ds.codomain.gens.elements
        if element_order(ds.codomain.group, d) == 2
    )
    forced = squares_subgroup(group)
    near = sorted(q.space.domain.nbhd[q.a])
    fv = q.f.values

    out = []
    for i, m in enumerate(q.space.maps):
        if is_isolated(ds, i):
            ok = all(fv[x] == m.values[x] for x in near)
        else:
            image = m.image()
            if image == frozenset((e_h,)):
                allowed = frozenset((e_h,)) | order2
                ok = all(
                    fv[x] == e_h if x in forced else fv[x] in allowed for x in near
                )
            else:
                # non-isolated and non-constant: image must be a pair
                delta = next(iter(image - {e_h}))
                ok = all(
                    fv[x] == e_h if x in forced else fv[x] in (e_h, delta)
                    for x in near
                )
        if ok:
            out.append(i)
    return tuple(out)


def differential_oracle(q: DifferentialQuery, *, literal: bool = False) -> tuple[int, ...]:
    """Slow reference implementation by direct search.

    Default mode checks the smallest-neighborhood reduction with plain
    loops.  ``literal`` additionally sweeps every principal filter
    converging to a (every nonempty subset of N(a)); the per-point
    witness search is shared, the quantifier structure is executed in
    full.
    """
    maps = q.space.maps
    near = sorted(q.space.domain.nbhd[q.a])
    guards.check("oracle_work", len(near) * max(len(maps), 1), "differential oracle")
    fv = q.f.values
    out = []
    for i in range(len(maps)):
        neighbor_maps = [maps[k] for k in q.space.nbhd[i]]
        matched = []
        for x in near:
            found = False
            for k in neighbor_maps:
                if k.values[x] == fv[x]:
                    found = True
                    break
            matched.append(found)
        if literal:
            ok = True
            for r in range(1, len(near) + 1):
                for subset in itertools.combinations(range(len(near)), r):
                    if not all(matched[t] for t in subset):
                        ok = False
                        break
                if not ok:
                    break
        else:
            ok = all(matched)
        if ok:
            out.append(i)
    return tuple(out)


def t1_forces_value_check(q: DifferentialQuery) -> bool:
    """On a T1 codomain every differential takes the value f(a) at a."""
    props = space_properties(q.space.codomain)
    if not props.is_T1:
        raise ValueError("codomain is not T1; the check does not apply")
    target = q.f.values[q.a]
    return all(
        q.space.maps[i].values[q.a] == target for i in differentials_at(q)
    )


@dataclass(frozen=True)
class ChainRuleReport:
    holds: bool
    inner_differentials: tuple[int, ...]
    outer_differentials: tuple[int, ...]
    composite_differentials: tuple[int, ...]
    violations: tuple[tuple[int, int], ...]
    missing_composites: tuple[tuple[int, int], ...]


def chain_rule_check(
    f: FiniteMap,
    g: FiniteMap,
    a: int,
    outer_space: MapSpace,
    inner_space: MapSpace,
    composite_space: MapSpace,
) -> ChainRuleReport:
    """Check that composites of differentials are differentials.

    ``g`` runs from the domain of ``inner_space`` and must be continuous
    at ``a`` (the chain rule hypothesis); ``f`` continues from there.
    For every pair (outer differential of f at g(a), inner differential
    of g at a) the composite is looked up in ``composite_space``;
    composites absent from that space are reported separately as
    composition-closure gaps rather than counted as violations.
    """
    if not is_continuous_at(inner_space.domain, inner_space.codomain, g, a):
        raise HypothesisViolated(f"inner map is not continuous at {a}")
    inner_diffs = differentials_at(DifferentialQuery(inner_space, g, a))
    outer_diffs = differentials_at(
        DifferentialQuery(outer_space, f, g.values[a])
    )
    composite = f.compose(g)
    composite_diffs = differentials_at(
        DifferentialQuery(composite_space, composite, a)
    )
    index_of = {m.values: i for i, m in enumerate(composite_space.maps)}
    violations = []
    missing = []
    for lf in outer_diffs:
        for lg in inner_diffs:
            comp = outer_space.maps[lf].compose(inner_space.maps[lg])
            at = index_of.get(comp.values)
            if at is None:
                missing.append((lf, lg))
            elif at not in composite_diffs:
                violations.append((lf, lg))
    return ChainRuleReport(
        holds=not violations,
        inner_differentials=inner_diffs,
        outer_differentials=outer_diffs,
        composite_differentials=composite_diffs,
        violations=tuple(violations),
        missing_composites=tuple(missing),
    )


def integers_differentiable_at(window: Mapping[int, int], n: int) -> frozenset[IntegerMap]:
    """Differentials of an integer-line function at n, from a finite window.

    The smallest neighborhood of n on the line is {n, n+1} and the map
    space is discrete, so only two values of the window matter: the
    zero map qualifies when f(n) = f(n+1) = 0, the identity when
    f(n) = n and f(n+1) = n+1.
    """
    missing = [p for p in (n, n + 1) if p not in window]
    if missing:
        raise WindowTooSmall(f"window lacks required points {missing}")
    out = set()
    if window[n] == 0 and window[n + 1] == 0:
        out.add(IntegerMap.ZERO)
    if window[n] == n and window[n + 1] == n + 1:
        out.add(IntegerMap.IDENTITY)
    return frozenset(out)

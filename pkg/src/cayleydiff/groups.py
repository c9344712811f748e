"""Finite groups as validated multiplication tables.

Elements are indices ``0..order-1`` with the identity always at index 0;
``table[a][b]`` is the product a*b.  Construction goes through
``group_from_table``, which checks the group axioms exhaustively and
relabels the identity to 0 if needed.  Optional names are display-only
and never affect equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import guards
from .errors import (
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotGenerating,
    Redundant,
)
from .spaces import FiniteMap

__all__ = [
    "FiniteGroup",
    "GeneratingSet",
    "group_from_table",
    "cyclic_group",
    "symmetric_group",
    "z2_power_group",
    "direct_sum",
    "group_from_spec",
    "closure",
    "validate_generating_set",
    "element_order",
    "squares_subgroup",
    "enumerate_homomorphisms",
    "group_to_json",
    "group_from_json",
]


@dataclass(frozen=True)
class FiniteGroup:
    """Immutable multiplication table; identity at index 0.

    Build through :func:`group_from_table` (or the named constructors),
    which validate the axioms.  Direct construction skips validation.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        row = self.table[a]
        for b, ab in enumerate(row):
            if ab == self.identity and self.table[b][a] == self.identity:
                return b
        raise NoInverse(a)

    def name_of(self, g: int) -> str:
        return self.names[g] if self.names else str(g)


@dataclass(frozen=True)
class GeneratingSet:
    """Validated non-redundant generating set, stored sorted."""

    elements: tuple[int, ...]


def group_from_table(
    table: Sequence[Sequence[int]], names: Sequence[str] | None = None
) -> FiniteGroup:
    """Validate a multiplication table and normalize the identity to 0.

    Checks, in order: shape and entry range, existence of a two-sided
    identity, two-sided inverses, associativity.  Each failure names the
    first violating element or triple.  The associativity sweep is
    vectorized because it is cubic in the order.
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("empty table")
    guards.check("group_order", n, f"group of order {n}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise MalformedTable(f"entry ({i},{j}) = {v!r} outside 0..{n - 1}")
    if names is not None and len(names) != n:
        raise MalformedTable(f"{len(names)} names for {n} elements")

    t = np.array(table, dtype=np.int64)
    idx = np.arange(n)

    e = -1
    for c in range(n):
        if np.array_equal(t[c], idx) and np.array_equal(t[:, c], idx):
            e = c
            break
    if e < 0:
        raise NoIdentity("no two-sided identity element")

    for g in range(n):
        hs = np.flatnonzero(t[g] == e)
        if not any(t[h, g] == e for h in hs):
            raise NoInverse(g)

    for a in range(n):
        lhs = t[t[a]]          # lhs[b, c] = (a*b)*c
        rhs = t[a][t]          # rhs[b, c] = a*(b*c)
        if not np.array_equal(lhs, rhs):
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            raise NotAssociative(a, b, c)

    if e != 0:
        perm = list(range(n))
        perm[0], perm[e] = e, 0          # swap labels 0 and e
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[t[a][b]]
        t = np.array(new, dtype=np.int64)
        if names is not None:
            names = list(names)
            names[0], names[e] = names[e], names[0]

    return FiniteGroup(
        order=n,
        table=tuple(tuple(int(v) for v in row) for row in t),
        names=tuple(names) if names is not None else None,
    )


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise MalformedTable(f"cyclic group needs order >= 1, got {n}")
    guards.check("group_order", n, f"cyclic group of order {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(table, names=[str(i) for i in range(n)])


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[q[i]] for i in range(len(p)))


def symmetric_group(n: int) -> FiniteGroup:
    """Symmetric group on n symbols, n <= 5.

    For n = 3 the elements are ordered e, r, r2, t, tr, tr2 with
    r the 3-cycle and t the swap of 0 and 1, matching the usual
    rotation/reflection presentation; larger n uses lexicographic
    one-line order with one-line names.
    """
    if not 1 <= n <= 5:
        raise MalformedTable(f"symmetric group supported for 1 <= n <= 5, got {n}")
    if n == 3:
        e = (0, 1, 2)
        r = (1, 2, 0)
        t = (1, 0, 2)
        elems = [e, r, _compose(r, r), t, _compose(t, r), _compose(t, _compose(r, r))]
        names = ["e", "r", "r2", "t", "tr", "tr2"]
    else:
        elems = sorted(itertools.permutations(range(n)))
        names = ["".join(map(str, p)) for p in elems]
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[_compose(p, q)] for q in elems] for p in elems]
    return group_from_table(table, names=names)


def z2_power_group(n: int) -> FiniteGroup:
    """Direct power of the order-2 group; element index = bit vector."""
    if n < 1:
        raise MalformedTable(f"z2 power needs n >= 1, got {n}")
    guards.check("group_order", 2**n, f"z2^{n}")
    size = 2**n
    table = [[i ^ j for j in range(size)] for i in range(size)]
    names = [format(i, f"0{n}b") for i in range(size)]
    return group_from_table(table, names=names)


def direct_sum(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct sum with pair index (a, b) -> a * |H| + b."""
    order = g.order * h.order
    guards.check("group_order", order, "direct sum")
    hs = h.order
    table = [
        [
            g.table[a1][a2] * hs + h.table[b1][b2]
            for a2 in range(g.order)
            for b2 in range(hs)
        ]
        for a1 in range(g.order)
        for b1 in range(hs)
    ]
    names = [
        f"({g.name_of(a)},{h.name_of(b)})" for a in range(g.order) for b in range(hs)
    ]
    return group_from_table(table, names=names)


def group_from_spec(spec: str) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Parse a group spec string; returns the group and canonical generators.

    Accepted forms: ``cyclic:N``, ``s:N``, ``z2^N``.
    """
    if spec.startswith("cyclic:"):
        n = _spec_int(spec, "cyclic:")
        group = cyclic_group(n)
        return group, (1,) if n > 1 else ()
    if spec.startswith("s:"):
        n = _spec_int(spec, "s:")
        group = symmetric_group(n)
        if n == 1:
            return group, ()
        if n == 2:
            return group, (1,)
        if n == 3:
            return group, (1, 3)  # r and t in the presentation order
        elems = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(elems)}
        rot = tuple(list(range(1, n)) + [0])
        swap = tuple([1, 0] + list(range(2, n)))
        return group, tuple(sorted((index[rot], index[swap])))
    if spec.startswith("z2^"):
        n = _spec_int(spec, "z2^")
        group = z2_power_group(n)
        return group, tuple(2**k for k in range(n))
    raise MalformedTable(f"unknown group spec {spec!r}")


def _spec_int(spec: str, prefix: str) -> int:
    try:
        return int(spec[len(prefix):])
    except ValueError:
        raise MalformedTable(f"bad number in group spec {spec!r}")


def _closure_words(
    group: FiniteGroup, seeds: Iterable[int]
) -> dict[int, tuple[int, ...]]:
    """Breadth-first saturation; maps each reachable element to a word.

    Words are tuples of seed elements whose left-to-right product gives
    the element; the identity gets the empty word.
    """
    seeds = sorted(set(seeds))
    words: dict[int, tuple[int, ...]] = {group.identity: ()}
    for s in seeds:
        words.setdefault(s, (s,))
    frontier = list(words)
    table = group.table
    while frontier:
        nxt = []
        for x in frontier:
            wx = words[x]
            for s in seeds:
                y = table[x][s]
                if y not in words:
                    words[y] = wx + (s,)
                    nxt.append(y)
        frontier = nxt
    return words


def closure(group: FiniteGroup, seeds: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing the seeds and the identity, closed
    under the product."""
    return frozenset(_closure_words(group, seeds))


def validate_generating_set(group: FiniteGroup, elements: Iterable[int]) -> GeneratingSet:
    """Check that the set generates and no member is a product of the others.

    The identity is rejected as trivially redundant (empty word).  A
    redundant generator comes with a witness word over the remaining
    generators.
    """
    elems = sorted(set(elements))
    for g in elems:
        if not 0 <= g < group.order:
            raise MalformedTable(f"generator {g} outside 0..{group.order - 1}")
    if group.identity in elems:
        raise Redundant(group.identity, ())
    reached = closure(group, elems)
    if len(reached) != group.order:
        missing = tuple(sorted(set(range(group.order)) - reached))
        raise NotGenerating(missing)
    for g in elems:
        rest = [x for x in elems if x != g]
        words = _closure_words(group, rest)
        if g in words:
            raise Redundant(g, words[g])
    return GeneratingSet(tuple(elems))


def element_order(group: FiniteGroup, g: int) -> int:
    k = 1
    acc = g
    while acc != group.identity:
        acc = group.table[acc][g]
        k += 1
    return k


def squares_subgroup(group: FiniteGroup) -> frozenset[int]:
    """Subgroup generated by all squares.

    Every homomorphism into an order-2 subgroup kills exactly this set,
    which is what the differential classification needs.
    """
    return closure(group, {group.table[g][g] for g in range(group.order)})


def _greedy_generators(group: FiniteGroup) -> list[int]:
    gens: list[int] = []
    reached = closure(group, gens)
    while len(reached) < group.order:
        g = min(set(range(group.order)) - reached)
        gens.append(g)
        reached = closure(group, gens)
    return gens


def enumerate_homomorphisms(g: FiniteGroup, h: FiniteGroup) -> tuple[FiniteMap, ...]:
    """All group homomorphisms g -> h, sorted by value tuple.

    Generator images are swept and extended along products; every
    surviving candidate is verified against the full defining identity.
    """
    gens = _greedy_generators(g)
    guards.check(
        "hom_candidates", h.order ** len(gens), "homomorphism enumeration"
    )
    tg, th = g.table, h.table
    out = []
    for images in itertools.product(range(h.order), repeat=len(gens)):
        phi = [-1] * g.order
        phi[g.identity] = h.identity
        queue = [g.identity]
        ok = True
        while queue and ok:
            x = queue.pop()
            px = phi[x]
            for gen, img in zip(gens, images):
                y = tg[x][gen]
                py = th[px][img]
                if phi[y] < 0:
                    phi[y] = py
                    queue.append(y)
                elif phi[y] != py:
                    ok = False
                    break
        if not ok:
            continue
        for a in range(g.order):
            pa = phi[a]
            ra = tg[a]
            for b in range(g.order):
                if phi[ra[b]] != th[pa][phi[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(phi))
    out.sort()
    return tuple(FiniteMap(g.order, h.order, v) for v in out)


def group_to_json(group: FiniteGroup) -> dict:
    data: dict = {"order": group.order, "table": [list(r) for r in group.table]}
    if group.names is not None:
        data["names"] = list(group.names)
    return data


def group_from_json(data: Mapping) -> FiniteGroup:
    try:
        order = data["order"]
        table = data["table"]
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"group JSON missing field: {exc}")
    if order != len(table):
        raise MalformedTable(f"order {order} does not match table of size {len(table)}")
    return group_from_table(table, names=data.get("names"))

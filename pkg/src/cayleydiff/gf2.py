"""Tiny GF(2) linear solver over int bitmasks.

Rows are ints with bit j standing for variable j.  Used to solve the
small matrix equations of the Boolean differential routines.
"""

from __future__ import annotations

import itertools

__all__ = ["solve_affine", "all_solutions"]


def solve_affine(
    rows: list[int], rhs: list[int], width: int
) -> tuple[int, list[int]] | None:
    """Solve row.x = rhs over GF(2) for all equations at once.

    Returns (particular solution, nullspace basis) as bitmasks, or None
    when the system is inconsistent.
    """
    aug = [(r, b & 1) for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int, int]] = []  # (column bit, row, rhs)
    for r, b in aug:
        for bit, pr, pb in pivots:
            if r & bit:
                r ^= pr
                b ^= pb
        if r == 0:
            if b:
                return None
            continue
        low = r & -r
        pivots.append((low, r, b))
    particular = 0
    pivot_cols = 0
    # back-substitute from the last pivot upward
    for bit, r, b in reversed(pivots):
        others = r & ~bit
        val = b ^ bin(others & particular).count("1") % 2
        if val:
            particular |= bit
        pivot_cols |= bit
    basis = []
    for j in range(width):
        free = 1 << j
        if pivot_cols & free:
            continue
        vec = free
        for bit, r, b in reversed(pivots):
            others = r & ~bit
            if bin(others & vec).count("1") % 2:
                vec |= bit
        basis.append(vec)
    return particular, basis


def all_solutions(particular: int, basis: list[int]) -> list[int]:
    """Every solution of the affine system, 2^len(basis) bitmasks."""
    out = []
    for picks in itertools.product((0, 1), repeat=len(basis)):
        v = particular
        for take, vec in zip(picks, basis):
            if take:
                v ^= vec
        out.append(v)
    return out

"""Size guards for operations with exponential or cubic worst cases.

Every limit can be overridden with an environment variable named
``CAYLEYDIFF_MAX_<NAME>``, e.g. ``CAYLEYDIFF_MAX_GROUP_ORDER=2048``.
Limits are read at call time so overrides apply without reimport.
"""

from __future__ import annotations

import os

from .errors import SizeGuardExceeded

__all__ = ["DEFAULT_LIMITS", "limit", "check"]

ENV_PREFIX = "CAYLEYDIFF_MAX_"

DEFAULT_LIMITS = {
    # largest multiplication table accepted (validation is O(n^3))
    "group_order": 1024,
    # candidate generator-image assignments in homomorphism enumeration
    "hom_candidates": 10**6,
    # total maps swept when enumerating continuous maps exhaustively
    "map_enumeration": 10**7,
    # vertices in a box or categorical product
    "product_vertices": 65536,
    # |N(a)| * |map space| in the differential oracle
    "oracle_work": 10**6,
    # hypercube dimension; the Cayley graph carries a full 2^n x 2^n table
    "hypercube_dim": 10,
    # bits per point in dense Boolean function tables
    "bool_table_dim": 20,
    # candidate matrices swept by the Boolean differential routines
    "bool_candidates": 10**6,
}


def limit(name: str) -> int:
    """Current limit for ``name``, honoring environment overrides."""
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_LIMITS[name]


def check(name: str, value: int, what: str) -> None:
    """Raise :class:`SizeGuardExceeded` if ``value`` exceeds the limit."""
    cap = limit(name)
    if value > cap:
        raise SizeGuardExceeded(
            f"{what} needs {value}, exceeds guard {name}={cap} "
            f"(override with {ENV_PREFIX}{name.upper()})"
        )

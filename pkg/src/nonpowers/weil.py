"""Explicit thresholds from the Weil bound."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import factor_int
from .errors import Unsupported


@dataclass(frozen=True)
class WeilConstants:
    p: int
    genus_plane: int
    genus_curve: int
    boundary_points: int
    M_plane: int
    M_curve: int


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factor_int(n)) == 1


def _at_least(q: int, g: int, extra: int) -> bool:
    """Exact test of q + 1 - 2g*sqrt(q) >= extra."""
    lhs = q + 1 - extra
    if lhs < 0:
        return False
    return lhs * lhs >= 4 * g * g * q


def plane_ok(q: int, p: int) -> bool:
    g = (p - 1) * (p - 2) // 2
    return _at_least(q, g, 2 * p + 1)


def curve_ok(q: int, p: int) -> bool:
    g = p**3 - 2 * p**2 + 1
    return _at_least(q, g, 1 + 3 * p * p)


def _threshold(pred, p: int, scan_to: int) -> int:
    """Smallest prime power M such that pred holds for every prime power in [M, scan_to]."""
    last_bad = 1
    for q in range(2, scan_to + 1):
        if is_prime_power(q) and not pred(q, p):
            last_bad = q
    m = last_bad + 1
    while not is_prime_power(m):
        m += 1
    return m


@lru_cache(maxsize=None)
def weil_constants(p: int, scan_to: int = 10_000) -> WeilConstants:
    """Point-count thresholds for smooth plane degree-p curves and the auxiliary curve.

    M_plane: q + 1 - 2g sqrt(q) >= 2p + 1 with g = (p-1)(p-2)/2.
    M_curve: q + 1 - 2g' sqrt(q) - 3p^2 >= 1 with g' = p^3 - 2p^2 + 1.
    Both sides are compared in integers after squaring.
    """
    if p not in (2, 3):
        raise Unsupported("Weil thresholds are tabulated for p in {2, 3}")
    return WeilConstants(
        p=p,
        genus_plane=(p - 1) * (p - 2) // 2,
        genus_curve=p**3 - 2 * p**2 + 1,
        boundary_points=3 * p * p,
        M_plane=_threshold(plane_ok, p, scan_to),
        M_curve=_threshold(curve_ok, p, scan_to),
    )

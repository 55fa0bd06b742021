"""Exact real root isolation over Q by Sturm sequences."""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly, poly_gcd


def _rational(p: Poly) -> Poly:
    return Poly([Fraction(c) for c in p.coeffs])


def squarefree_part(p: Poly) -> Poly:
    p = _rational(p)
    g = poly_gcd(p, p.derivative())
    return p // g if g.degree > 0 else p


def sturm_sequence(p: Poly) -> list[Poly]:
    p = _rational(p)
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _changes_at(seq: list[Poly], x) -> int:
    return _sign_changes([s(x) for s in seq])


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lc = Fraction(p.lc)
    return 1 + max((abs(Fraction(c) / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one distinct real root, sorted."""
    p = _rational(p)
    if p.degree < 1:
        return []
    p = squarefree_part(p)
    seq = sturm_sequence(p)
    b = root_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = _changes_at(seq, lo) - _changes_at(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.extend([(lo, mid), (mid, hi)])
    out.sort()
    return out


def sample_points(p: Poly) -> list[Fraction]:
    """One rational point in every open interval cut out by the real roots of p."""
    ivs = isolate_real_roots(p)
    if not ivs:
        return [Fraction(0)]
    pts = [ivs[0][0] - 1]
    for (_, h1), (l2, _) in zip(ivs, ivs[1:]):
        # h1 <= l2; the roots lie in (l1, h1] and (l2, h2], so refine if they touch
        pts.append(_gap_point(p, h1, l2))
    pts.append(ivs[-1][1] + 1)
    return pts


def _gap_point(p: Poly, h1: Fraction, l2: Fraction) -> Fraction:
    p = _rational(p)
    if h1 < l2:
        return (h1 + l2) / 2
    # shared endpoint: it may itself be a root; step off it toward the left root's side
    if p(h1) != 0:
        return h1
    # h1 is the left root; the next root is strictly larger, find a point in between
    seq = sturm_sequence(squarefree_part(p))
    step = Fraction(1, 2)
    while True:
        x = h1 + step
        if _changes_at(seq, h1) - _changes_at(seq, x) == 0 and p(x) != 0:
            return x
        step /= 2

"""Rational solutions of y^2 - D z^2 = m over Q."""
from __future__ import annotations

from fractions import Fraction

from .arith import iroot


def _square_root(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, en = iroot(x.numerator, 2)
    d, ed = iroot(x.denominator, 2)
    return Fraction(n, d) if en and ed else None


def solve_norm_equation(D, m) -> tuple[Fraction, Fraction] | None:
    """A rational (y, z) with y^2 - D z^2 = m, or None when the conic has no point.

    Integer scaling turns this into Y^2 - D' Z^2 - m' W^2 = 0 with
    D' = D Dd^2 and m' = m md^2, which sympy's Legendre solver handles.
    """
    from sympy import symbols
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

    D, m = Fraction(D), Fraction(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    s = _square_root(D)
    if s is not None:
        if s == 0:
            r = _square_root(m)
            return (r, Fraction(0)) if r is not None else None
        return (1 + m) / 2, (m - 1) / (2 * s)
    r = _square_root(m)
    if r is not None:
        return r, Fraction(0)
    dd, md = D.denominator, m.denominator
    d1 = D.numerator * dd
    m1 = m.numerator * md
    # the solver returns values ordered by symbol name
    Y, Z, W = symbols("t1 t2 t3", integer=True)
    sol = diop_ternary_quadratic_normal(Y**2 - d1 * Z**2 - m1 * W**2)
    if sol is None or sol[0] is None:
        return None
    y0, z0, w0 = (int(t) for t in sol)
    if w0 == 0:
        return None
    y = Fraction(y0, md * w0)
    z = Fraction(dd * z0, md * w0)
    if y * y - D * z * z != m:
        raise AssertionError("scaled conic solution does not verify")
    return y, z

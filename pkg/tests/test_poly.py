from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from nonpowers.arith import Eis
from nonpowers.errors import Unsupported
from nonpowers.poly import (
    Poly,
    discriminant,
    is_irreducible_deg_p,
    is_irreducible_mod,
    is_squarefree,
    poly_gcd,
    resultant,
    roots_in_field,
)
from nonpowers.realroots import isolate_real_roots, sample_points

X = sympy.symbols("x")
coeffs = st.lists(st.integers(-30, 30), min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


def _sp(p: Poly):
    return sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(p.coeffs)], X)


@given(coeffs, coeffs)
def test_resultant_matches_sylvester_determinant(a, b):
    # sympy.resultant swaps arguments when deg a < deg b, so compare with det(Sylvester)
    from sympy.polys.subresultants_qq_zz import sylvester

    pa, pb = Poly(a), Poly(b)
    expected = sylvester(_sp(pa).as_expr(), _sp(pb).as_expr(), X, 1).det()
    assert resultant(pa, pb) == expected


@given(coeffs)
def test_discriminant_matches_sympy(a):
    p = Poly(a)
    assert discriminant(p) == sympy.discriminant(_sp(p))


@given(coeffs, coeffs)
def test_divmod(a, b):
    pa, pb = Poly(a), Poly(b)
    q, r = pa.divmod(pb)
    assert q * pb + r == pa
    assert not r or r.degree < pb.degree


@given(coeffs, st.integers(-20, 20))
def test_taylor(a, x0):
    p = Poly(a)
    t = p.taylor(x0)
    for h in (-2, 0, 3):
        assert sum(c * h**k for k, c in enumerate(t)) == p(x0 + h)


@given(coeffs)
def test_reversed(a):
    p = Poly(a)
    r = p.reversed()
    for y in (1, 2, Fraction(1, 3)):
        assert r(y) == y ** p.degree * p(1 / Fraction(y))


def test_gcd_monic():
    a = Poly([-1, 0, 1])  # x^2 - 1
    b = Poly([1, 1])
    assert poly_gcd(a * Poly([2]), b * Poly([3])) == Poly([1, 1])


def test_squarefree():
    assert is_squarefree(Poly([1, 0, 1]))
    assert not is_squarefree(Poly([1, 2, 1]))


@given(coeffs)
def test_rational_roots_match_sympy(a):
    p = Poly(a)
    ours = sorted(roots_in_field(p, "Q"))
    theirs = sorted(Fraction(int(r.p), int(r.q)) for r in sympy.roots(_sp(p), filter="Q", multiple=False))
    assert ours == theirs


def test_roots_in_eisenstein_field():
    # x^3 - 1 has the three cube roots of unity in Q(zeta3)
    roots = roots_in_field(Poly([-1, 0, 0, 1]), "Q(zeta3)")
    assert len(roots) == 3
    assert all(r**3 == 1 for r in roots)
    # x^2 + 3 = (x - sqrt(-3))(x + sqrt(-3)) and sqrt(-3) = 1 + 2 zeta
    roots = roots_in_field(Poly([3, 0, 1]), "Q(zeta3)")
    assert sorted(str(r) for r in roots) == sorted(str(r) for r in (Eis(1, 2), Eis(-1, -2)))


def test_irreducible_deg_p():
    assert is_irreducible_deg_p(Poly([35, 0, 1]), "Q", 2)
    assert not is_irreducible_deg_p(Poly([-4, 0, 1]), "Q", 2)
    assert not is_irreducible_deg_p(Poly([1, 0, 0, 1]), "Q(zeta3)", 3)
    with pytest.raises(Unsupported):
        is_irreducible_deg_p(Poly([1, 0, 0, 0, 0, 1]), "Q", 5)


@given(st.sampled_from([2, 3, 5, 7, 13]), st.lists(st.integers(0, 12), min_size=1, max_size=6))
def test_irreducible_mod_matches_sympy(ell, tail):
    c = tail + [1]
    expected = sympy.Poly(list(reversed(c)), X, modulus=ell).is_irreducible
    assert is_irreducible_mod(c, ell) == expected


@given(coeffs)
def test_real_root_isolation_matches_sympy(a):
    p = Poly(a)
    ivs = isolate_real_roots(p)
    roots = sorted(set(sympy.real_roots(_sp(p))))
    assert len(ivs) == len(roots)
    for (lo, hi), r in zip(ivs, roots):
        assert lo < r <= hi


@given(coeffs)
def test_sample_points_hit_every_gap(a):
    p = Poly(a)
    pts = sample_points(p)
    roots = sorted(float(r) for r in set(sympy.real_roots(_sp(p))))
    assert len(pts) == len(roots) + 1
    assert all(p(x) != 0 for x in pts)
    for i, x in enumerate(pts):
        below = sum(1 for r in roots if r < x)
        assert below == i

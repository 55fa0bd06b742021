from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nonpowers.arith import LAMBDA, ZETA, Eis, primes_up_to
from nonpowers.errors import DegenerateInput, NotFinite, NotIntegral
from nonpowers.places import (
    COMPLEX,
    K,
    Q,
    REAL,
    hensel_root,
    is_local_pth_power,
    local_class_key,
    local_digits,
    local_int,
    local_pth_root,
    parse_place,
    places_over,
    places_up_to,
    residue_code,
    residue_field,
    residue_lift,
    residue_reps,
    valuation,
    wild_level,
)
from nonpowers.poly import Poly

Q2 = places_over(Q, 2)[0]
LAM = places_over(K, 3)[0]
SPLIT7 = places_over(K, 7)
INERT5 = places_over(K, 5)[0]

fracs = st.fractions(min_value=-10**6, max_value=10**6).filter(lambda f: f != 0)
eis = st.builds(Eis, st.integers(-200, 200), st.integers(-200, 200), st.integers(1, 30)).filter(lambda e: e != 0)


def test_place_shapes():
    assert [v.label for v in places_over(K, 7)] == ["(3+ζ)", "(3+2ζ)"]
    assert INERT5.f == 2 and INERT5.q == 25
    assert LAM.e == 2 and LAM.pi == LAMBDA
    assert parse_place(K, "(3+2ζ)") == SPLIT7[1]
    assert parse_place(Q, "89").ell == 89
    assert parse_place(Q, "real") == REAL
    with pytest.raises(DegenerateInput):
        parse_place(K, "real")


def test_places_up_to_counts():
    # every rational prime below 50 gives one place of Q
    assert len(places_up_to(Q, 50)) == len(primes_up_to(50))
    qs = [v.q for v in places_up_to(K, 50)]
    assert qs == sorted(qs) and 4 in qs and 25 in qs and 3 in qs


@given(fracs, fracs, st.sampled_from([2, 3, 5, 41]))
def test_valuation_additive_q(a, b, ell):
    v = places_over(Q, ell)[0]
    assert valuation(a * b, v) == valuation(a, v) + valuation(b, v)


@given(eis, eis, st.sampled_from([2, 3, 5, 7, 13]))
def test_valuation_additive_k(a, b, ell):
    for v in places_over(K, ell):
        assert valuation(a * b, v) == valuation(a, v) + valuation(b, v)
        # ultrametric
        if a + b != 0:
            assert valuation(a + b, v) >= min(valuation(a, v), valuation(b, v))


def test_valuation_examples():
    assert valuation(Eis(3), LAM) == 2
    assert valuation(Eis(7), SPLIT7[0]) == 1
    assert valuation(Eis(3, 1) ** 2 / 7, SPLIT7[0]) == 1
    assert valuation(Eis(3, 1) ** 2 / 7, SPLIT7[1]) == -1
    with pytest.raises(NotFinite):
        valuation(3, REAL)


@given(eis, eis, st.sampled_from([2, 5, 7, 13, 3]))
def test_residue_homomorphism(a, b, ell):
    for v in places_over(K, ell):
        if valuation(a, v) < 0 or valuation(b, v) < 0:
            continue
        rf = residue_field(v)
        ra, rb = residue_code(a, v), residue_code(b, v)
        assert residue_code(a * b, v) == rf.mul(ra, rb)
        if a + b != 0:
            assert residue_code(a + b, v) == rf.add(ra, rb)


@given(eis, st.sampled_from([2, 5, 7, 13]), st.integers(1, 4))
def test_local_int_congruence(a, ell, n):
    for v in places_over(K, ell):
        if valuation(a, v) < 0:
            with pytest.raises(NotIntegral):
                local_int(a, v, n)
            continue
        r = local_int(a, v, n)
        diff = a - r
        assert diff == 0 or valuation(diff, v) >= n


def test_residue_field_zeta():
    for v in places_up_to(K, 200):
        rf = residue_field(v)
        z = residue_code(ZETA, v)
        assert z == rf.zeta
        if v.ell != 3:
            assert rf.pow(z, 3) == 1 and z != 1


def test_residue_reps_are_a_system():
    for v in [LAM, SPLIT7[0], INERT5]:
        codes = [residue_code(r, v) if r != 0 else 0 for r in residue_reps(v, 1)]
        assert sorted(codes) == list(range(v.q))
        assert all(residue_code(residue_lift(c, v), v) == c for c in range(1, v.q))


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
def test_local_squares_q_bruteforce(ell):
    v = places_over(Q, ell)[0]
    squares = {x * x % ell for x in range(1, ell)}
    for u in range(1, 3 * ell):
        if u % ell == 0:
            continue
        assert is_local_pth_power(u, v, 2) == (u % ell in squares)


def test_two_adic_squares():
    # odd u is a square in Q_2 iff u = 1 mod 8
    for u in range(1, 200, 2):
        assert is_local_pth_power(u, Q2, 2) == (u % 8 == 1)
    assert is_local_pth_power(Fraction(17, 4), Q2, 2)
    assert not is_local_pth_power(2, Q2, 2)
    assert not is_local_pth_power(-1, REAL, 2)
    assert is_local_pth_power(-1, COMPLEX, 3)


def test_cubes_at_lambda_bruteforce():
    # units of Z_3[zeta] mod lambda^5: brute-force cube classes vs the test
    reps5 = residue_reps(LAM, 5)
    cube_digits = {local_digits(r**3, LAM, 5) for r in reps5 if residue_code(r, LAM) != 0}
    assert len(cube_digits) == 6  # the cube-class representatives fill 6 classes
    for r in residue_reps(LAM, 5):
        if residue_code(r, LAM) == 0:
            continue
        assert is_local_pth_power(r, LAM, 3) == (local_digits(r, LAM, 5) in cube_digits)
    assert is_local_pth_power(ZETA**0 * Eis(1) + 9 * Eis(1, 1), LAM, 3)  # = 1 mod lambda^4 is a cube


def test_zeta_is_not_a_local_cube_at_lambda():
    assert not is_local_pth_power(ZETA, LAM, 3)


@given(eis, st.sampled_from([SPLIT7[0], SPLIT7[1], INERT5, places_over(K, 13)[0]]))
def test_cubes_are_cubes(a, v):
    assert is_local_pth_power(a**3, v, 3)
    assert local_class_key(a**3 * 5, v, 3) == local_class_key(Eis(5), v, 3)


def test_hensel_root_sqrt2_mod_7():
    v = places_over(Q, 7)[0]
    h = Poly([-2, 0, 1])
    w = hensel_root(h, 3, v, 30)
    assert w is not None and w.precision >= 30
    assert valuation(w.root**2 - 2, v) >= 30
    assert hensel_root(h, 1, v) is None


def test_local_pth_root_at_lambda():
    u = 1 + 9 * Eis(1, 1)
    w = local_pth_root(u, LAM, 3, 20)
    assert w is not None
    assert valuation(w.root**3 - u, LAM) >= 20


def test_local_pth_root_none():
    assert local_pth_root(ZETA, LAM, 3) is None
    assert local_pth_root(3, places_over(Q, 7)[0], 2) is None


def test_wild_levels():
    assert wild_level(Q2, 2) == 3
    assert wild_level(LAM, 3) == 4
    assert wild_level(SPLIT7[0], 3) == 1

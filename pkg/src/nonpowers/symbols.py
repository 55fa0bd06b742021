"""Local invariants of cyclic algebras (d, c)_zeta and residues along the line.

Invariants are returned as integers mod p (so 0/1 for p = 2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionViolated, Unsupported, UnsupportedWildSymbol, WrongPlaceKind
from .fields import check_pair, is_global_pth_power, relevant_places
from .places import (
    Q,
    Place,
    coerce,
    is_local_pth_power,
    local_int,
    places_over,
    residue_code,
    residue_field,
    unit_part,
)
from .poly import Poly, discriminant, is_irreducible_deg_p, is_squarefree

_Q2 = places_over(Q, 2)[0]


def tame_symbol(u, w, v: Place, p: int) -> int:
    """Tame symbol at a finite place v not above p.

    With a = v(u), b = v(w) the residue of t = (-1)^{ab} u^b / w^a is raised to
    (q-1)/p and written as a power of the reduced root of unity.
    """
    if not v.is_finite or v.ell == p:
        raise WrongPlaceKind(f"tame symbol needs a finite place prime to {p}, got {v.label}")
    rf = residue_field(v)
    if (rf.q - 1) % p:
        raise Unsupported(f"residue field F_{rf.q} lacks p-th roots of unity")
    a, u0 = unit_part(u, v)
    b, w0 = unit_part(w, v)
    uc, wc = residue_code(u0, v), residue_code(w0, v)
    t = rf.mul(rf.pow(uc, b % (rf.q - 1)), rf.pow(rf.inv(wc), a % (rf.q - 1)))
    if (a * b) % 2:
        t = rf.neg(t)
    return rf.dlog_root_of_unity(rf.pow(t, (rf.q - 1) // p), p)


def _eps_omega(u0: Fraction) -> tuple[int, int]:
    r = local_int(u0, _Q2, 3)
    return ((r - 1) // 2) % 2, ((r * r - 1) // 8) % 2


def hilbert_symbol(a, b, v: Place) -> int:
    """Quadratic Hilbert symbol over Q, 0 for +1 and 1 for -1."""
    if v.fld != Q:
        raise Unsupported("Hilbert symbol is implemented over Q only")
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PreconditionViolated("Hilbert symbol of 0")
    if v.kind == "real":
        return 1 if (a < 0 and b < 0) else 0
    if v.ell != 2:
        return tame_symbol(a, b, v, 2)
    al, u = unit_part(a, v)
    be, w = unit_part(b, v)
    eu, ou = _eps_omega(u)
    ew, ow = _eps_omega(w)
    return (eu * ew + al * ow + be * ou) % 2


@dataclass(frozen=True)
class CyclicAlgebraClass:
    """The class of the cyclic algebra (d, c)_zeta in Br(k)[p]."""

    d: object
    c: object
    p: int
    fld: str

    def __post_init__(self):
        check_pair(self.fld, self.p)
        d, c = coerce(self.d, self.fld), coerce(self.c, self.fld)
        if d == 0 or c == 0:
            raise PreconditionViolated("cyclic algebra entries must be nonzero")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "c", c)


def local_symbol(d, c, v: Place, p: int) -> int:
    """Invariant of (d, c)_zeta at v for elements of the ground field."""
    if v.kind == "complex":
        return 0
    if v.kind == "real":
        return hilbert_symbol(d, c, v) if p == 2 else 0
    if v.ell != p:
        return tame_symbol(d, c, v, p)
    if p == 2:
        return hilbert_symbol(d, c, v)
    if is_local_pth_power(d, v, p) or is_local_pth_power(c, v, p):
        return 0
    raise UnsupportedWildSymbol(f"cubic symbol at {v.label} for ({d}, {c}) is not certified")


def inv_cyclic(alg: CyclicAlgebraClass, v: Place) -> int:
    """Local invariant of (d, c)_zeta at v, as an integer mod p.

    Over Q the wild place uses the Hilbert symbol.  Above 3 in Q(zeta3) the
    invariant is returned only when it is forced to vanish (one entry a local
    cube); otherwise :class:`UnsupportedWildSymbol` is raised.
    """
    if v.fld != alg.fld:
        raise WrongPlaceKind(f"place {v.label} is not a place of {alg.fld}")
    return local_symbol(alg.d, alg.c, v, alg.p)


def global_sum(alg: CyclicAlgebraClass, check: bool = True) -> tuple[int, list[tuple[Place, int]]]:
    """Sum of local invariants over all places where one can be nonzero.

    Outside the archimedean places, the places above p and the support of
    d and c, both entries are units at a tame place and the symbol vanishes.
    With ``check`` a nonzero total raises AssertionError.
    """
    breakdown = [(v, inv_cyclic(alg, v)) for v in relevant_places(alg.fld, alg.p, alg.d, alg.c)]
    total = sum(i for _, i in breakdown) % alg.p
    if check and total:
        raise AssertionError(f"invariants of ({alg.d}, {alg.c}) sum to {total} mod {alg.p}")
    return total, breakdown


# ---------------------------------------------------------------------------
# residues along the affine line
# ---------------------------------------------------------------------------


@dataclass
class LineResidueProfile:
    """Residues of (d, Q*R) at the closed points Q = 0, R = 0 and infinity."""

    points: list[tuple[str, int, bool]] = field(default_factory=list)  # (label, degree, nontrivial)
    s: int = 0


def _is_pure(poly: Poly) -> bool:
    return all(c == 0 for c in poly.coeffs[1:-1])


def is_pth_power_in_extension(d, poly: Poly, fld: str, p: int) -> bool:
    """Whether d becomes a p-th power in k[x]/(poly) for irreducible poly of degree p.

    For p = 2 the extension is k(sqrt(disc)); for pure polynomials x^p + e0/e_p
    it is k((-e0/e_p)^(1/p)).  In both cases d is a p-th power there iff
    d * g^i is a p-th power in k for some i, g the Kummer generator.
    """
    if p == 2:
        gen = discriminant(poly)
    elif _is_pure(poly):
        gen = -coerce(poly.coeffs[0], fld) / coerce(poly.coeffs[-1], fld)
    else:
        raise Unsupported("degree-3 extensions are handled only for pure cubics")
    d = coerce(d, fld)
    gen = coerce(gen, fld)
    return any(is_global_pth_power(d * gen**i, fld, p) for i in range(p))


def residues_on_line(d, q_poly: Poly, r_poly: Poly, p: int, fld: str) -> LineResidueProfile:
    """Closed points of A^1 (plus infinity) where (d, QR) has nonzero residue.

    Each of the two degree-p points contributes p to ``s`` when d is not a
    p-th power in its residue field; the point at infinity has trivial
    residue because deg(QR) = 2p.
    """
    check_pair(fld, p)
    for poly in (q_poly, r_poly):
        if not is_irreducible_deg_p(poly, fld, p):
            raise PreconditionViolated(f"{poly} is not irreducible of degree {p}")
    if not is_squarefree(q_poly * r_poly):
        raise PreconditionViolated("Q*R is not separable")
    prof = LineResidueProfile()
    for name, poly in (("Q", q_poly), ("R", r_poly)):
        nontriv = not is_pth_power_in_extension(d, poly, fld, p)
        prof.points.append((f"{name}=0", p, nontriv))
        if nontriv:
            prof.s += p
    prof.points.append(("infinity", 1, False))
    return prof

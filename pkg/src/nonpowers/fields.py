"""Global arithmetic of the ground fields: parsing, support, global p-th powers."""
from __future__ import annotations

from fractions import Fraction

from .arith import Eis, eisenstein_unit_part, factor_eisenstein, factor_int, iroot, EIS_UNITS
from .errors import DegenerateInput, Unsupported
from .places import K, Q, Elem, Place, archimedean_places, check_field, coerce, place_of_prime, places_over

DEFAULT_P = {Q: 2, K: 3}


def check_pair(fld: str, p: int) -> None:
    """Only (Q, 2) and (Q(zeta3), 3) carry a primitive p-th root of unity here."""
    check_field(fld)
    if DEFAULT_P[fld] != p:
        raise Unsupported(f"p={p} is not supported over {fld}; use p={DEFAULT_P[fld]}")


def parse_element(s, fld: str) -> Elem:
    if not isinstance(s, str):
        return coerce(s, fld)
    if fld == Q:
        return Fraction(s.strip())
    return Eis.parse(s)


def format_element(u, fld: str) -> str:
    return str(coerce(u, fld))


def support(u, fld: str) -> list[Place]:
    """Finite places where u has nonzero valuation, sorted."""
    u = coerce(u, fld)
    if u == 0:
        raise DegenerateInput("support of 0")
    out = []
    if fld == Q:
        for n in (u.numerator, u.denominator):
            if abs(n) > 1:
                out.extend(places_over(Q, ell)[0] for ell in factor_int(n))
    else:
        if u.numer().int_norm() > 1:
            out.extend(place_of_prime(K, pi) for pi, _ in factor_eisenstein(u.numer()))
        if u.den > 1:
            for ell in factor_int(u.den):
                out.extend(places_over(K, ell))
    return sorted(set(out))


def relevant_places(fld: str, p: int, *elems) -> list[Place]:
    """Archimedean places, places above p, and the support of the given elements."""
    out = set(archimedean_places(fld))
    out.update(places_over(fld, p))
    for u in elems:
        out.update(support(u, fld))
    return sorted(out)


def is_global_pth_power(u, fld: str, p: int) -> bool:
    """Exact test u in k^{*p} (u nonzero) by integer roots / factorization exponents."""
    u = coerce(u, fld)
    if u == 0:
        raise DegenerateInput("0 is excluded")
    if fld == Q:
        if p % 2 == 0 and u < 0:
            return False
        return iroot(abs(u.numerator), p)[1] and iroot(u.denominator, p)[1]
    # u = n/den is a p-th power iff n * den^(p-1) is
    m = u.numer() * u.den ** (p - 1)
    facs = factor_eisenstein(m)
    if any(e % p for _, e in facs):
        return False
    unit = eisenstein_unit_part(m, facs)
    return any(unit == w**p for w in EIS_UNITS)

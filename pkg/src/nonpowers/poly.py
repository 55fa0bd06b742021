"""Dense univariate polynomials over Q or Q(zeta3).

Coefficients are stored low degree first.  Any coefficient type supporting
the field operations works (``Fraction``, :class:`~nonpowers.arith.Eis`,
``int`` for integral input).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .arith import Eis, factor_eisenstein, factor_int, EIS_UNITS
from .errors import DegenerateInput, Unsupported


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def monomial(cls, c, k: int) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise DegenerateInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, o):
        if not isinstance(o, Poly):
            o = Poly([o])
        return len(self.coeffs) == len(o.coeffs) and all(a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return self.to_str("x")

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            cs = str(c)
            if k and (c == 1):
                term = ""
            elif k and (c == -1):
                term = "-"
            else:
                term = f"({cs})" if k and ("+" in cs[1:] or "-" in cs[1:]) else cs
            if k == 1:
                term += var
            elif k > 1:
                term += f"{var}^{k}"
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    # ring operations ------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Poly):
            o = Poly([o])
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, o):
        if not isinstance(o, Poly):
            o = Poly([o])
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return Poly([c * o for c in self.coeffs])
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, o: "Poly") -> tuple["Poly", "Poly"]:
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        inv = 1 / Fraction(o.lc) if isinstance(o.lc, int) else 1 / o.lc
        quot = [0] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            f = c * inv
            quot[k - dq] = f
            for j, b in enumerate(o.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - f * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __mod__(self, o):
        return self.divmod(o)[1]

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    # evaluation and calculus ------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, a, b) -> "Poly":
        """``P(a + b*h)`` as a polynomial in h."""
        out = Poly()
        lin = Poly([a, b])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def taylor(self, x0) -> list:
        """Coefficients of ``P(x0 + h)`` in h, low degree first (length deg+1)."""
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + x0 * cs[j + 1]
        return cs

    def reversed(self, n: int | None = None) -> "Poly":
        """``y^n P(1/y)`` with n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Poly(cs[::-1])

    def monic(self) -> "Poly":
        return self * (1 / (Fraction(self.lc) if isinstance(self.lc, int) else self.lc))

    def map(self, f) -> "Poly":
        return Poly([f(c) for c in self.coeffs])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def resultant(a: Poly, b: Poly):
    """Resultant via the Euclidean recurrence (coefficients in a field)."""
    if not a or not b:
        return 0
    res = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.lc**da
        r = a % b
        if not r:
            return 0
        sign = -1 if (da * db) % 2 else 1
        res = res * sign * b.lc ** (da - r.degree)
        a, b = b, r


def discriminant(p: Poly):
    n = p.degree
    if n < 1:
        raise DegenerateInput("discriminant of a constant")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    res = resultant(p, p.derivative())
    if res == 0:
        return Fraction(0)
    return sign * res / p.lc


def is_squarefree(p: Poly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


# ---------------------------------------------------------------------------
# roots in the ground field
# ---------------------------------------------------------------------------

def _integralize(coeffs: Sequence, field: str) -> list:
    """Scale to integral coefficients (ints, or integral Eis)."""
    if field == "Q":
        fr = [Fraction(c) for c in coeffs]
        m = lcm(*(c.denominator for c in fr))
        return [int(c * m) for c in fr]
    es = [Eis.coerce(c) for c in coeffs]
    m = lcm(*(c.den for c in es))
    return [c * m for c in es]


def _divisors_int(n: int) -> list[int]:
    ds = [1]
    for q, e in factor_int(n).items():
        ds = [d * q**k for d in ds for k in range(e + 1)]
    return ds


def _divisors_eis(n: Eis) -> list[Eis]:
    ds = [Eis(1)]
    for pi, e in factor_eisenstein(n):
        ds = [d * pi**k for d in ds for k in range(e + 1)]
    return [d * u for d in ds for u in EIS_UNITS]


def roots_in_field(p: Poly, field: str) -> list:
    """All roots of ``p`` lying in the ground field (no multiplicity)."""
    if p.degree < 1:
        return []
    cs = _integralize(p.coeffs, field)
    n = len(cs) - 1
    roots = []
    if cs[0] == 0:
        roots.append(0 if field == "Q" else Eis(0))
        k = 0
        while cs[k] == 0:
            k += 1
        cs = cs[k:]
        n = len(cs) - 1
        if n == 0:
            return roots
    an = cs[-1]
    # monic transform y = an*x:  m(y) = sum c_i an^(n-1-i) y^i
    m0 = cs[0] * an ** (n - 1)
    mono = Poly([cs[i] * an ** (n - 1 - i) for i in range(n)] + [1])
    if field == "Q":
        cands = [s * d for d in _divisors_int(m0) for s in (1, -1)]
        for y in cands:
            if mono(y) == 0:
                roots.append(Fraction(y, an))
    else:
        for y in _divisors_eis(Eis.coerce(m0)):
            if mono(y) == 0:
                roots.append(y / an)
    out = []
    for r in roots:
        if r not in out:
            out.append(r)
    return out


def is_irreducible_deg_p(q: Poly, field: str, p: int) -> bool:
    """Irreducibility of a degree-p polynomial, p in {2, 3}: no root in the field."""
    if p not in (2, 3):
        raise Unsupported(f"irreducibility test only for degree 2 or 3, got {p}")
    if q.degree != p:
        raise DegenerateInput(f"expected degree {p}, got {q.degree}")
    return not roots_in_field(q, field)


# ---------------------------------------------------------------------------
# polynomials over F_ell given as coefficient lists
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_ell(a: list[int], b: list[int], ell: int) -> list[int]:
    a = _trim([c % ell for c in a])
    inv = pow(b[-1], -1, ell)
    db = len(b) - 1
    while len(a) - 1 >= db:
        f = a[-1] * inv % ell
        shift = len(a) - 1 - db
        for j, c in enumerate(b):
            a[shift + j] = (a[shift + j] - f * c) % ell
        _trim(a)
    return a


def _mulmod_ell(a: list[int], b: list[int], m: list[int], ell: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod_ell(out, m, ell)


def _gcd_ell(a: list[int], b: list[int], ell: int) -> list[int]:
    a, b = _trim([c % ell for c in a]), _trim([c % ell for c in b])
    while b:
        a, b = b, _mod_ell(a, b, ell)
    return a


def is_irreducible_mod(coeffs: Sequence[int], ell: int) -> bool:
    """Ben-Or test for a polynomial over F_ell (low degree first, nonzero leading coefficient mod ell)."""
    f = _trim([int(c) % ell for c in coeffs])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(n // 2):
        # power <- power^ell mod f
        acc, base, k = [1], power, ell
        while k:
            if k & 1:
                acc = _mulmod_ell(acc, base, f, ell)
            base = _mulmod_ell(base, base, f, ell)
            k >>= 1
        power = acc
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] -= 1
        if len(_gcd_ell(f, diff, ell)) > 1:
            return False
    return True

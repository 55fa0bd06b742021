"""Places of Q and Q(zeta3), residue fields, valuations and local p-th powers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .arith import (
    LAMBDA,
    Eis,
    eis_exact_div,
    eisenstein_primes_over,
    is_prime,
    vp,
)
from .errors import DegenerateInput, NotFinite, NotIntegral, Unsupported
from .poly import Poly

Q = "Q"
K = "Q(zeta3)"
FIELDS = (Q, K)

Elem = Union[Fraction, Eis]


def check_field(name: str) -> str:
    if name not in FIELDS:
        raise Unsupported(f"unknown ground field {name!r}; expected 'Q' or 'Q(zeta3)'")
    return name


def coerce(u, fld: str) -> Elem:
    if fld == Q:
        if isinstance(u, Eis):
            return u.to_fraction()
        return Fraction(u)
    return Eis.coerce(u)


@dataclass(frozen=True)
class Place:
    """A place of the ground field.

    For finite places ``pi`` is the fixed uniformizer (a rational prime over Q,
    a normalized Eisenstein prime over Q(zeta3)), ``e`` the ramification
    index over ``ell`` and ``f`` the residue degree.
    """

    fld: str
    kind: str  # "real" | "complex" | "finite"
    ell: int = 0
    pi: object = None
    e: int = 1
    f: int = 1

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def q(self) -> int:
        if not self.is_finite:
            raise NotFinite(f"{self.label} has no residue field")
        return self.ell**self.f

    @property
    def is_split(self) -> bool:
        return self.fld == K and self.is_finite and self.f == 1 and self.e == 1

    @property
    def label(self) -> str:
        if not self.is_finite:
            return self.kind
        return f"({self.pi})"

    @property
    def sort_key(self) -> tuple:
        if not self.is_finite:
            return (0, 0, 0, 0)
        pi = self.pi
        if isinstance(pi, Eis):
            return (1, self.ell, pi.x, pi.y)
        return (1, self.ell, pi, 0)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"Place({self.fld}, {self.label})"


REAL = Place(Q, "real")
COMPLEX = Place(K, "complex")


def archimedean_places(fld: str) -> list[Place]:
    return [REAL] if check_field(fld) == Q else [COMPLEX]


@lru_cache(maxsize=None)
def places_over(fld: str, ell: int) -> tuple[Place, ...]:
    if not is_prime(ell):
        raise DegenerateInput(f"{ell} is not prime")
    if check_field(fld) == Q:
        return (Place(Q, "finite", ell, ell, 1, 1),)
    if ell == 3:
        return (Place(K, "finite", 3, LAMBDA, 2, 1),)
    if ell % 3 == 2:
        return (Place(K, "finite", ell, Eis(ell), 1, 2),)
    return tuple(Place(K, "finite", ell, pi, 1, 1) for pi in eisenstein_primes_over(ell))


def place_of_prime(fld: str, pi) -> Place:
    """The place attached to a rational prime or an Eisenstein prime element."""
    if fld == Q:
        return places_over(Q, int(pi))[0]
    pi = Eis.coerce(pi)
    n = pi.int_norm()
    ell = n if is_prime(n) else math.isqrt(n)
    for v in places_over(K, ell):
        if valuation(pi, v) == 1 and pi.int_norm() == v.pi.int_norm():
            return v
    raise DegenerateInput(f"{pi} is not a prime of Z[zeta3]")


def parse_place(fld: str, label: str) -> Place:
    """Parse ``"real"``, ``"complex"``, ``"5"``, ``"(5)"``, ``"(3+ζ)"``."""
    label = label.strip()
    if label in ("real", "infinity", "inf"):
        if fld != Q:
            raise DegenerateInput("Q(zeta3) has no real place")
        return REAL
    if label == "complex":
        if fld != K:
            raise DegenerateInput("Q has no complex place")
        return COMPLEX
    inner = label[1:-1] if label.startswith("(") and label.endswith(")") else label
    if fld == Q:
        return place_of_prime(Q, int(inner))
    return place_of_prime(K, Eis.parse(inner))


def places_up_to(fld: str, bound: int, start: int = 2) -> list[Place]:
    """Finite places with residue cardinality ``start <= q <= bound`` sorted by q."""
    from .arith import primes_up_to

    out = []
    for ell in primes_up_to(bound):
        for v in places_over(fld, ell):
            if start <= v.q <= bound:
                out.append(v)
    out.sort(key=lambda v: (v.q, v.sort_key))
    return out


# ---------------------------------------------------------------------------
# residue fields
# ---------------------------------------------------------------------------


class ResidueField:
    """F_ell (f=1) or F_ell[z]/(z^2+z+1) (f=2) with elements encoded as ints.

    In degree 2 the element ``a + b*z`` is encoded as ``a + b*ell``.
    ``zeta`` is the code of the reduction of the root of unity used for
    symbols (-1 over Q, zeta over Q(zeta3)).
    """

    def __init__(self, ell: int, f: int, zeta: int):
        self.ell, self.f, self.zeta = ell, f, zeta
        self.q = ell**f

    def split(self, c: int) -> tuple[int, int]:
        return c % self.ell, c // self.ell

    def code(self, a: int, b: int = 0) -> int:
        return a % self.ell + (b % self.ell) * self.ell if self.f == 2 else a % self.ell

    def mul(self, s: int, t: int) -> int:
        if self.f == 1:
            return s * t % self.ell
        a, b = self.split(s)
        c, d = self.split(t)
        bd = b * d
        return self.code(a * c - bd, a * d + b * c - bd)

    def add(self, s: int, t: int) -> int:
        if self.f == 1:
            return (s + t) % self.ell
        a, b = self.split(s)
        c, d = self.split(t)
        return self.code(a + c, b + d)

    def neg(self, s: int) -> int:
        if self.f == 1:
            return -s % self.ell
        a, b = self.split(s)
        return self.code(-a, -b)

    def pow(self, s: int, k: int) -> int:
        if self.f == 1:
            return pow(s, k, self.ell)
        k %= self.q - 1
        out, base = 1, s
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, s: int) -> int:
        if s == 0:
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.pow(s, self.q - 2)

    def dlog_root_of_unity(self, t: int, p: int) -> int:
        """The k in 0..p-1 with ``zeta^k == t``; t must be a p-th root of unity."""
        z = 1
        for k in range(p):
            if z == t:
                return k
            z = self.mul(z, self.zeta)
        raise ValueError(f"{t} is not a power of zeta in F_{self.q}")

    def is_pth_power(self, s: int, p: int) -> bool:
        if s == 0:
            return True
        g = math.gcd(p, self.q - 1)
        return self.pow(s, (self.q - 1) // g) == 1


@lru_cache(maxsize=None)
def residue_field(v: Place) -> ResidueField:
    if not v.is_finite:
        raise NotFinite(f"{v.label} has no residue field")
    if v.fld == Q:
        return ResidueField(v.ell, 1, v.ell - 1)
    if v.f == 2:
        return ResidueField(v.ell, 2, v.ell)  # code of z
    if v.ell == 3:
        return ResidueField(3, 1, 1)
    return ResidueField(v.ell, 1, _split_root(v.pi, 1))


@lru_cache(maxsize=None)
def _split_root(pi: Eis, n: int) -> int:
    """r mod ell^n with zeta -> r the reduction map Z[zeta] -> Z/ell^n with kernel pi^n."""
    ell = pi.int_norm()
    r = -pi.x * pow(pi.y, -1, ell) % ell
    mod = ell
    for _ in range(n.bit_length() + 1):
        if mod >= ell**n:
            break
        mod = min(mod * mod, ell**n)
        # Newton step on r^2 + r + 1
        r = (r - (r * r + r + 1) * pow(2 * r + 1, -1, mod)) % mod
    return r % ell**n


# ---------------------------------------------------------------------------
# valuations and local representatives
# ---------------------------------------------------------------------------


def _v_int_eis(n: Eis, v: Place) -> int:
    """v_pi of a nonzero Eisenstein integer."""
    ell = v.ell
    if v.e == 2:
        return vp(n.int_norm(), 3)
    if v.f == 2:
        return min(vp(c, ell) for c in (n.x, n.y) if c)
    k = min(vp(c, ell) for c in (n.x, n.y) if c)
    x, y = n.x // ell**k, n.y // ell**k
    r = _split_root(v.pi, 1)
    if (x + y * r) % ell:
        return k
    return k + vp(x * x - x * y + y * y, ell)


def valuation(u, v: Place) -> int:
    if not v.is_finite:
        raise NotFinite(f"valuation at archimedean place {v.label}")
    if u == 0:
        raise DegenerateInput("valuation of 0")
    if v.fld == Q:
        u = Fraction(u)
        return vp(u.numerator, v.ell) - vp(u.denominator, v.ell)
    u = Eis.coerce(u)
    val = _v_int_eis(u.numer(), v)
    if u.den % v.ell == 0:
        val -= v.e * vp(u.den, v.ell)
    return val


def local_int(u, v: Place, n: int):
    """A global integral representative of a v-integral ``u`` modulo pi^n.

    Over Q and at split places the result is an int in ``[0, ell^n)``.
    """
    if u == 0:
        return 0 if v.fld == Q or v.is_split else Eis(0)
    if valuation(u, v) < 0:
        raise NotIntegral(f"{u} is not integral at {v.label}")
    ell = v.ell
    if v.fld == Q:
        u = Fraction(u)
        m = ell**n
        return u.numerator * pow(u.denominator, -1, m) % m
    u = Eis.coerce(u)
    num, den = u.numer(), u.den
    k = vp(den, ell) if den % ell == 0 else 0
    m_rest = den // ell**k
    if v.is_split:
        mod = ell**n
        r = _split_root(v.pi, n)
        if k:
            num = eis_exact_div(num, v.pi**k)
            pibar = v.pi.conj()
            pb = (pibar.x + pibar.y * r) % mod
            m_rest = m_rest * pow(pb, k, mod)
        return (num.x + num.y * r) * pow(m_rest, -1, mod) % mod
    if v.f == 2:
        mod = ell**n
        num = Eis(num.x // ell**k, num.y // ell**k)
        inv = pow(m_rest, -1, mod)
        return Eis(num.x * inv % mod, num.y * inv % mod)
    # place above 3
    if k:
        num = Eis(num.x // 3**k, num.y // 3**k)
    mod = 3 ** ((n + 1) // 2)
    inv = pow(m_rest, -1, mod)
    return Eis(num.x * inv % mod, num.y * inv % mod)


def residue_code(u, v: Place) -> int:
    """Reduction of a v-integral element, encoded in :func:`residue_field` form."""
    rep = local_int(u, v, 1)
    if v.fld == Q or v.is_split:
        return rep % v.ell
    if v.f == 2:
        return rep.x % v.ell + (rep.y % v.ell) * v.ell
    return (rep.x + rep.y) % 3


def residue_lift(code: int, v: Place):
    """A global integral element reducing to ``code``."""
    if v.fld == Q:
        return code
    if v.f == 2:
        return Eis(code % v.ell, code // v.ell)
    return Eis(code)


def unit_part(u, v: Place) -> tuple[int, Elem]:
    """``(m, u0)`` with ``u = pi^m * u0`` and u0 a v-unit."""
    m = valuation(u, v)
    if v.fld == Q:
        return m, Fraction(u) / Fraction(v.ell) ** m
    return m, Eis.coerce(u) / v.pi**m


def local_digits(u, v: Place, n: int) -> tuple:
    """Canonical pi-adic digits of a v-integral ``u`` modulo pi^n."""
    digits = []
    if v.fld == Q:
        rep = local_int(u, v, n)
        return (rep,)
    x = coerce(u, v.fld)
    for _ in range(n):
        if x == 0:
            digits.append(0)
            continue
        d = residue_code(x, v)
        digits.append(d)
        x = (x - residue_lift(d, v)) / v.pi
    return tuple(digits)


@lru_cache(maxsize=None)
def residue_reps(v: Place, n: int = 1) -> tuple:
    """Global integral representatives of O_v / pi^n, one per class."""
    if v.fld == Q or v.is_split:
        return tuple(range(v.ell**n))
    if v.f == 2:
        m = v.ell**n
        return tuple(Eis(a, b) for b in range(m) for a in range(m))
    reps = [Eis(0)]
    lam_pow = Eis(1)
    for _ in range(n):
        reps = [r + lam_pow * d for d in range(3) for r in reps]
        lam_pow = lam_pow * LAMBDA
    return tuple(reps)


def abs_ram(v: Place, p: int) -> int:
    """v(p)."""
    return valuation(p, v)


def wild_level(v: Place, p: int) -> int:
    """Smallest n with 1 + pi^n O_v contained in the p-th powers."""
    ep = abs_ram(v, p)
    if ep == 0:
        return 1
    return ep * p // (p - 1) + 1


# ---------------------------------------------------------------------------
# Hensel lifting and local p-th powers
# ---------------------------------------------------------------------------


@dataclass
class HenselWitness:
    """Certificate for a root of h in O_v near the starting point.

    ``root`` is a global element with ``v(root - alpha) >= precision`` for a
    genuine root alpha; ``history`` lists ``v(h(x_n))`` along the iteration.
    """

    root: object
    precision: int
    history: list[int] = field(default_factory=list)


def hensel_root(h: Poly, x0, v: Place, precision: int = 64) -> HenselWitness | None:
    """Newton iteration from x0 under the condition v(h(x0)) > 2 v(h'(x0)).

    Returns None when the condition fails.  Iterates are reduced to global
    representatives so coefficient growth stays bounded.
    """
    if not v.is_finite:
        raise NotFinite("Hensel lifting needs a finite place")
    for c in h.coeffs:
        if c != 0 and valuation(c, v) < 0:
            raise NotIntegral(f"coefficient {c} not integral at {v.label}")
    if x0 != 0 and valuation(x0, v) < 0:
        raise NotIntegral(f"start point {x0} not integral at {v.label}")
    dh = h.derivative()
    hx = h(x0)
    if hx == 0:
        return HenselWitness(x0, precision, [precision])
    d = dh(x0)
    if d == 0:
        return None
    a, b = valuation(hx, v), valuation(d, v)
    if a <= 2 * b:
        return None
    keep = precision + b + 1
    x = x0
    history = [a]
    while a - b < precision:
        x = coerce(x, v.fld) - coerce(hx, v.fld) / coerce(d, v.fld)
        x = local_int(x, v, keep)
        hx = h(x)
        if hx == 0:
            history.append(keep)
            return HenselWitness(x, precision, history)
        d = dh(x)
        new_a = valuation(hx, v)
        if valuation(d, v) != b or new_a <= a:
            raise AssertionError("Newton iteration left the Hensel basin")
        a = new_a
        history.append(a)
    return HenselWitness(x, a - b, history)


@lru_cache(maxsize=None)
def _wild_power_classes(v: Place, p: int) -> frozenset:
    """Digits mod pi^n of p-th powers of units, n = 2 v(p) + 1."""
    n = 2 * abs_ram(v, p) + 1
    out = set()
    for r in residue_reps(v, n):
        if r == 0 or residue_code(r, v) == 0:
            continue
        out.add(local_digits(coerce(r, v.fld) ** p, v, n))
    return frozenset(out)


def is_local_pth_power(u, v: Place, p: int) -> bool:
    """Whether u (nonzero) is a p-th power in the completion k_v."""
    if u == 0:
        raise DegenerateInput("0 is excluded")
    if v.kind == "complex":
        return True
    if v.kind == "real":
        return p % 2 == 1 or coerce(u, v.fld) > 0
    m, u0 = unit_part(u, v)
    if m % p:
        return False
    if v.ell != p:
        return residue_field(v).is_pth_power(residue_code(u0, v), p)
    n = 2 * abs_ram(v, p) + 1
    return local_digits(u0, v, n) in _wild_power_classes(v, p)


def local_pth_root(u, v: Place, p: int, precision: int = 64) -> HenselWitness | None:
    """A certified approximation of a p-th root of ``u`` in k_v (None if none exists).

    The unit part is lifted from a root modulo pi^(2v(p)+1) (or modulo pi at
    tame places) by :func:`hensel_root`; the witness describes the root of
    the unit part ``u / pi^m``.
    """
    if not v.is_finite:
        raise NotFinite("root certificates are only produced at finite places")
    m, u0 = unit_part(u, v)
    if m % p:
        return None
    n = 2 * abs_ram(v, p) + 1
    h = Poly([-u0] + [0] * (p - 1) + [1])
    for r in residue_reps(v, n):
        if r == 0 or residue_code(r, v) == 0:
            continue
        w = hensel_root(h, r, v, precision)
        if w is not None:
            return w
    return None


def local_class_key(d, v: Place, p: int) -> tuple:
    """Hashable key determined by the class of d in k_v^* / k_v^{*p}.

    Equal keys imply equal classes; at wild places the key is the unit part
    modulo a level where principal units are p-th powers, which is finer than
    the class but still sound for caching.
    """
    if v.kind == "complex":
        return ("c",)
    if v.kind == "real":
        return ("r", coerce(d, v.fld) > 0 if p == 2 else True)
    m, u0 = unit_part(d, v)
    if v.ell != p:
        rf = residue_field(v)
        g = math.gcd(p, rf.q - 1)
        return (m % p, rf.pow(residue_code(u0, v), (rf.q - 1) // g))
    return (m % p, local_digits(u0, v, wild_level(v, p)))

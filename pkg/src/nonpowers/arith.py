"""Exact integer and Eisenstein arithmetic.

Elements of Q are plain :class:`fractions.Fraction` values.  Elements of
Q(zeta3) are :class:`Eis` values ``(x + y*zeta) / den`` with zeta^2 + zeta + 1 = 0.
"""
from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateInput

# ---------------------------------------------------------------------------
# rational integers
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = primes_up_to(1000)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES[:40]:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int, trial_bound: int = 10**6) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    Trial division up to ``trial_bound`` (stopping early once the cofactor is
    prime), then Brent's variant of Pollard rho on what is left.
    """
    n = abs(int(n))
    if n == 0:
        raise DegenerateInput("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while n > 1 and d <= trial_bound and d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
                out[d] = out.get(d, 0) + 1
            if is_prime(n):
                break
        d += 1 if d == 2 else 2
    if n > 1:
        rng = random.Random(n)
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            f = _pollard_brent(m, rng)
            stack.extend((f, m // f))
    return dict(sorted(out.items()))


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Floor of the k-th root of ``n >= 0`` and whether it is exact."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n, True
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == n


def vp(n: int, ell: int) -> int:
    """ell-adic valuation of a nonzero integer."""
    if n == 0:
        raise DegenerateInput("valuation of 0")
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


def vp_frac(u: Fraction, ell: int) -> int:
    return vp(u.numerator, ell) - vp(u.denominator, ell)


def cube_root_of_unity_mod(ell: int) -> int:
    """A root of r^2 + r + 1 modulo a prime ell = 1 mod 3."""
    if ell % 3 != 1:
        raise ValueError(f"{ell} is not 1 mod 3")
    for g in range(2, ell):
        r = pow(g, (ell - 1) // 3, ell)
        if r != 1:
            return r
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Q(zeta3)
# ---------------------------------------------------------------------------

_EIS_RE = re.compile(r"^\s*([+-]?\d*)\s*(?:\*?\s*[ζzw])?\s*$")


class Eis:
    """Element ``(x + y*zeta)/den`` of Q(zeta3), kept in lowest terms with den > 0."""

    __slots__ = ("x", "y", "den")

    def __init__(self, x: int = 0, y: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            x, y, den = -x, -y, -den
        g = math.gcd(math.gcd(x, y), den)
        if g > 1:
            x, y, den = x // g, y // g, den // g
        self.x, self.y, self.den = x, y, den

    @classmethod
    def coerce(cls, v) -> "Eis":
        if isinstance(v, Eis):
            return v
        if isinstance(v, int):
            return cls(v, 0, 1)
        if isinstance(v, Fraction):
            return cls(v.numerator, 0, v.denominator)
        raise TypeError(f"cannot coerce {type(v).__name__} to Eis")

    @classmethod
    def parse(cls, s: str) -> "Eis":
        """Parse ``"3+ζ"``, ``"2-z"``, ``"(1+2ζ)/3"``, ``"-5/7"`` and the like."""
        s = s.strip().replace(" ", "")
        den = 1
        m = re.match(r"^\((.*)\)/(\d+)$", s)
        if m:
            s, den = m.group(1), int(m.group(2))
        elif "/" in s:
            num, d = s.split("/")
            return cls.parse(num) / int(d)
        terms = re.findall(r"[+-]?[^+-]+", s)
        x = y = 0
        for t in terms:
            if t[-1] in "ζzw":
                coef = t[:-1].rstrip("*")
                y += int(coef + "1") if coef in ("", "+", "-") else int(coef)
            else:
                x += int(t)
        return cls(x, y, den)

    # structural helpers -------------------------------------------------
    @property
    def is_integral(self) -> bool:
        return self.den == 1

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def numer(self) -> "Eis":
        return Eis(self.x, self.y, 1)

    def conj(self) -> "Eis":
        # conj(zeta) = zeta^2 = -1 - zeta
        return Eis(self.x - self.y, -self.y, self.den)

    def norm(self) -> Fraction:
        return Fraction(self.x * self.x - self.x * self.y + self.y * self.y, self.den * self.den)

    def int_norm(self) -> int:
        """Norm of the numerator ``x + y*zeta``."""
        return self.x * self.x - self.x * self.y + self.y * self.y

    def to_fraction(self) -> Fraction:
        if self.y:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.x, self.den)

    def __bool__(self) -> bool:
        return bool(self.x or self.y)

    # arithmetic -----------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Eis):
            try:
                o = Eis.coerce(o)
            except TypeError:
                return NotImplemented
        if self.den == o.den:
            return Eis(self.x + o.x, self.y + o.y, self.den)
        return Eis(self.x * o.den + o.x * self.den, self.y * o.den + o.y * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Eis(-self.x, -self.y, self.den)

    def __sub__(self, o):
        if not isinstance(o, Eis):
            try:
                o = Eis.coerce(o)
            except TypeError:
                return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, int):
            return Eis(self.x * o, self.y * o, self.den)
        if not isinstance(o, Eis):
            try:
                o = Eis.coerce(o)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.x, self.y, o.x, o.y
        bd = b * d
        return Eis(a * c - bd, a * d + b * c - bd, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Eis":
        n = self.int_norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(zeta3)")
        c = Eis(self.x - self.y, -self.y, 1)
        return Eis(c.x * self.den, c.y * self.den, n)

    def __truediv__(self, o):
        if isinstance(o, int):
            if o == 0:
                raise ZeroDivisionError("division by 0")
            return Eis(self.x, self.y, self.den * o)
        if not isinstance(o, Eis):
            try:
                o = Eis.coerce(o)
            except TypeError:
                return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Eis.coerce(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Eis(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons ------------------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, Eis):
            return self.x == o.x and self.y == o.y and self.den == o.den
        if isinstance(o, (int, Fraction)):
            return self.y == 0 and Fraction(self.x, self.den) == o
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(Fraction(self.x, self.den))
        return hash((self.x, self.y, self.den))

    def __repr__(self):
        return f"Eis({self.x}, {self.y}, {self.den})"

    def __str__(self):
        x, y = self.x, self.y
        if y == 0:
            core = str(x)
        else:
            ystr = {1: "ζ", -1: "-ζ"}.get(y, f"{y}ζ")
            if x == 0:
                core = ystr
            else:
                core = f"{x}{'+' if y > 0 else ''}{ystr}"
        if self.den == 1:
            return core
        if y == 0 or x == 0 and y in (1, -1):
            return f"{core}/{self.den}"
        return f"({core})/{self.den}"


ZETA = Eis(0, 1)
LAMBDA = Eis(1, -1)  # 1 - zeta, uniformizer above 3
EIS_UNITS = (Eis(1), Eis(0, 1), Eis(-1, -1), Eis(-1), Eis(0, -1), Eis(1, 1))  # +-zeta^j


def eis_divides(a: Eis, b: Eis) -> bool:
    """True iff ``a | b`` in Z[zeta] (both integral, a != 0)."""
    q = b * a.conj()
    n = a.int_norm()
    return q.x % n == 0 and q.y % n == 0


def eis_exact_div(b: Eis, a: Eis) -> Eis:
    q = b * a.conj()
    n = a.int_norm()
    if q.x % n or q.y % n:
        raise ValueError(f"{a} does not divide {b}")
    return Eis(q.x // n, q.y // n)


def eis_divmod(b: Eis, a: Eis) -> tuple[Eis, Eis]:
    """Euclidean division in Z[zeta] with nearest-lattice-point quotient."""
    q = b * a.conj()
    n = a.int_norm()
    qx = (2 * q.x + n) // (2 * n)
    qy = (2 * q.y + n) // (2 * n)
    best = None
    for dx in (0, 1, -1):
        for dy in (0, 1, -1):
            cand = Eis(qx + dx, qy + dy)
            r = b - cand * a
            if best is None or r.int_norm() < best[1].int_norm():
                best = (cand, r)
    return best


def eis_gcd(a: Eis, b: Eis) -> Eis:
    while b:
        _, r = eis_divmod(a, b)
        a, b = b, r
    return a


def mul_zeta(n: Eis) -> Eis:
    return Eis(-n.y, n.x - n.y, n.den)


def normalize_associate(n: Eis) -> tuple[Eis, Eis]:
    """Return ``(unit, m)`` with ``n = unit*m`` and ``0 <= m.y < m.x``.

    The sector ``0 <= arg < pi/3`` of the complex plane is a fundamental domain
    for multiplication by the sixth roots of unity.
    """
    if not n:
        raise DegenerateInput("zero has no associate class")
    for w in EIS_UNITS:
        m = n * w
        if 0 <= m.y < m.x:
            return w.inverse(), m
    raise AssertionError(f"no normalized associate for {n!r}")


def is_eis_unit(n: Eis) -> bool:
    return n.den == 1 and n.int_norm() == 1


def unit_zeta_exponent(u: Eis) -> int:
    """The j in 0..2 with ``u = +-zeta^j``."""
    for j, z in enumerate((Eis(1), ZETA, Eis(-1, -1))):
        if u == z or u == -z:
            return j
    raise ValueError(f"{u} is not a unit")


@lru_cache(maxsize=None)
def eisenstein_primes_over(ell: int) -> tuple[Eis, ...]:
    """Normalized Eisenstein primes above the rational prime ``ell``.

    The prime above 3 is fixed as ``1 - zeta`` rather than its normalized
    associate.
    """
    if ell == 3:
        return (LAMBDA,)
    if ell % 3 == 2:
        return (Eis(ell),)
    r = cube_root_of_unity_mod(ell)
    pi = eis_gcd(Eis(ell), Eis(-r, 1))
    _, pi = normalize_associate(pi)
    _, pibar = normalize_associate(pi.conj())
    if pi.int_norm() != ell:
        raise AssertionError(f"bad prime above {ell}: {pi}")
    return tuple(sorted((pi, pibar), key=lambda e: (e.x, e.y)))


def factor_eisenstein(n: Eis, trial_bound: int = 10**6) -> list[tuple[Eis, int]]:
    """Factor a nonzero Eisenstein integer into normalized primes.

    The product of ``pi**e`` over the output equals ``n`` up to a unit; see
    :func:`eisenstein_unit_part` for the unit.
    """
    if not n.is_integral:
        raise ValueError("factor_eisenstein expects an Eisenstein integer")
    if not n:
        raise DegenerateInput("cannot factor 0")
    out = []
    rest = n
    for ell in factor_int(n.int_norm(), trial_bound):
        for pi in eisenstein_primes_over(ell):
            e = 0
            while eis_divides(pi, rest):
                rest = eis_exact_div(rest, pi)
                e += 1
            if e:
                out.append((pi, e))
    if not is_eis_unit(rest):
        raise AssertionError(f"leftover {rest} after factoring {n}")
    return out


def eisenstein_unit_part(n: Eis, factors: list[tuple[Eis, int]]) -> Eis:
    prod = Eis(1)
    for pi, e in factors:
        prod = prod * pi**e
    return eis_exact_div(n, prod)

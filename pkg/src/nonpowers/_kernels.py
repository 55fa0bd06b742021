"""Finite-field hot loops: log tables, polynomial value tables, power-residue hits.

Elements of F_{ell^n} = F_ell[t]/(g) are encoded as ints whose base-ell digits
are the coefficients in the basis 1, t, ..., t^(n-1).  Each kernel exists as a
numba ``@njit`` function and as a pure-numpy function with identical output.
Setting ``NONPOWERS_DISABLE_NUMBA=1`` selects the numpy path.
"""
from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .arith import factor_int

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def numba_enabled() -> bool:
    flag = os.environ.get("NONPOWERS_DISABLE_NUMBA", "").strip().lower()
    return _HAVE_NUMBA and flag not in ("1", "true", "yes", "on")


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _exp_table_nb(ell, n, modulus, gen_digits, size):
    exp = np.empty(size, dtype=np.int64)
    cur = np.zeros(n, dtype=np.int64)
    cur[0] = 1
    prod = np.zeros(2 * n, dtype=np.int64)
    for k in range(size):
        code = 0
        for i in range(n - 1, -1, -1):
            code = code * ell + cur[i]
        exp[k] = code
        for i in range(2 * n):
            prod[i] = 0
        for i in range(n):
            if cur[i] == 0:
                continue
            for j in range(n):
                prod[i + j] += cur[i] * gen_digits[j]
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % ell
            if c:
                for j in range(n + 1):
                    prod[i - n + j] -= c * modulus[j]
        for i in range(n):
            cur[i] = prod[i] % ell
    return exp


@njit(cache=True)
def _add_codes_nb(x, y, ell, n):
    out = 0
    mult = 1
    for _ in range(n):
        out += ((x % ell + y % ell) % ell) * mult
        x //= ell
        y //= ell
        mult *= ell
    return out


@njit(cache=True)
def _poly_values_nb(ell, n, exp, log, coef_codes):
    q = log.shape[0]
    qm1 = q - 1
    deg = coef_codes.shape[0] - 1
    out = np.empty(q, dtype=np.int64)
    if n == 1:
        # prime field: codes are the integers mod ell themselves
        for x in range(q):
            acc = 0
            for k in range(deg, -1, -1):
                acc = (acc * x + coef_codes[k]) % ell
            out[x] = acc
        return out
    for x in range(q):
        acc = 0
        for k in range(deg, -1, -1):
            # acc = acc * x + c_k
            if acc != 0 and x != 0:
                acc = exp[(log[acc] + log[x]) % qm1]
            else:
                acc = 0
            acc = _add_codes_nb(acc, coef_codes[k], ell, n)
        out[x] = acc
    return out


@njit(cache=True)
def _char_nb(vals, log, z0inv, p):
    out = np.empty(vals.shape[0], dtype=np.int64)
    for i in range(vals.shape[0]):
        v = vals[i]
        out[i] = -1 if v == 0 else (log[v] * z0inv) % p
    return out


@njit(cache=True)
def _hits_nb(chi_q, chi_r, p, scale):
    wit = np.full(p, -1, dtype=np.int64)
    for x in range(chi_q.shape[0]):
        a = chi_q[x]
        b = chi_r[x]
        if a < 0 or b < 0:
            continue
        if (a + b) % p:
            continue
        val = (scale * a) % p
        if wit[val] < 0:
            wit[val] = x
    return wit


# ---------------------------------------------------------------------------
# numpy versions
# ---------------------------------------------------------------------------


def _decode(codes: np.ndarray, ell: int, n: int) -> np.ndarray:
    digits = np.empty((codes.shape[0], n), dtype=np.int64)
    rest = codes.astype(np.int64)
    for i in range(n):
        digits[:, i] = rest % ell
        rest = rest // ell
    return digits


def _encode(digits: np.ndarray, ell: int) -> np.ndarray:
    out = np.zeros(digits.shape[0], dtype=np.int64)
    for i in range(digits.shape[1] - 1, -1, -1):
        out = out * ell + digits[:, i]
    return out


def _mul_const_np(codes, const_digits, ell, n, modulus):
    a = _decode(codes, ell, n)
    prod = np.zeros((codes.shape[0], 2 * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if const_digits[j]:
                prod[:, i + j] += a[:, i] * const_digits[j]
    for i in range(2 * n - 2, n - 1, -1):
        c = prod[:, i] % ell
        for j in range(n + 1):
            prod[:, i - n + j] -= c * modulus[j]
    return _encode(prod[:, :n] % ell, ell)


def _exp_table_np(ell, n, modulus, gen_digits, size, gen_pow):
    """Doubling: exp[L:2L] = exp[:L] * g^L."""
    exp = np.ones(1, dtype=np.int64)
    while exp.shape[0] < size:
        length = exp.shape[0]
        block = _mul_const_np(exp, gen_pow(length), ell, n, modulus)
        exp = np.concatenate([exp, block])
    return exp[:size]


def _add_codes_np(x: np.ndarray, y: np.ndarray, ell: int, n: int) -> np.ndarray:
    return _encode((_decode(x, ell, n) + _decode(y, ell, n)) % ell, ell)


def _poly_values_np(ell, n, exp, log, coef_codes):
    q = log.shape[0]
    xs = np.arange(q, dtype=np.int64)
    if n == 1:
        acc = np.zeros(q, dtype=np.int64)
        for c in coef_codes[::-1]:
            acc = (acc * xs + c) % ell
        return acc
    logx = log[xs]
    acc = np.zeros(q, dtype=np.int64)
    for c in coef_codes[::-1]:
        nz = (acc != 0) & (xs != 0)
        nxt = np.zeros(q, dtype=np.int64)
        nxt[nz] = exp[(log[acc[nz]] + logx[nz]) % (q - 1)]
        acc = _add_codes_np(nxt, np.full(q, c, dtype=np.int64), ell, n)
    return acc


def _char_np(vals, log, z0inv, p):
    out = np.full(vals.shape[0], -1, dtype=np.int64)
    nz = vals != 0
    out[nz] = (log[vals[nz]] * z0inv) % p
    return out


def _hits_np(chi_q, chi_r, p, scale):
    wit = np.full(p, -1, dtype=np.int64)
    ok = (chi_q >= 0) & (chi_r >= 0) & ((chi_q + chi_r) % p == 0)
    idx = np.nonzero(ok)[0]
    vals = (scale * chi_q[idx]) % p
    for val in range(p):
        hit = idx[vals == val]
        if hit.size:
            wit[val] = hit[0]
    return wit


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------


class GF:
    """F_{ell^n} with log/antilog tables (so q is limited by memory)."""

    def __init__(self, ell: int, modulus: tuple[int, ...]):
        self.ell = ell
        self.n = len(modulus) - 1
        self.modulus = np.array([c % ell for c in modulus], dtype=np.int64)
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.q = ell**self.n
        self.gen = self._find_generator()
        size = self.q - 1
        gdig = np.array(self.digits(self.gen), dtype=np.int64)
        if numba_enabled():
            self.exp = _exp_table_nb(ell, self.n, self.modulus, gdig, size)
        else:
            self.exp = _exp_table_np(
                ell, self.n, self.modulus, gdig, size,
                lambda k: np.array(self.digits(self._pow_slow(self.gen, k)), dtype=np.int64),
            )
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(size, dtype=np.int64)
        if (self.log[1:] < 0).any():
            raise AssertionError("generator table incomplete")

    # slow helpers used before tables exist
    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(code % self.ell)
            code //= self.ell
        return out

    def from_digits(self, digits) -> int:
        code = 0
        for d in reversed(list(digits)):
            code = code * self.ell + d % self.ell
        return code

    def _mul_slow(self, s: int, t: int) -> int:
        a, b = self.digits(s), self.digits(t)
        n, ell = self.n, self.ell
        prod = [0] * (2 * n)
        for i in range(n):
            for j in range(n):
                prod[i + j] += a[i] * b[j]
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % ell
            for j in range(n + 1):
                prod[i - n + j] -= c * int(self.modulus[j])
        return self.from_digits(prod[:n])

    def _pow_slow(self, s: int, k: int) -> int:
        out, base = 1, s
        while k:
            if k & 1:
                out = self._mul_slow(out, base)
            base = self._mul_slow(base, base)
            k >>= 1
        return out

    def _find_generator(self) -> int:
        order = self.q - 1
        primes = list(factor_int(order)) if order > 1 else []
        for g in range(1, self.q):
            if all(self._pow_slow(g, order // r) != 1 for r in primes):
                if self._pow_slow(g, order) == 1:
                    return g
        raise ValueError("modulus is not irreducible")

    # table arithmetic
    def mul(self, s: int, t: int) -> int:
        if s == 0 or t == 0:
            return 0
        return int(self.exp[(self.log[s] + self.log[t]) % (self.q - 1)])

    def add(self, s: int, t: int) -> int:
        return self.from_digits([x + y for x, y in zip(self.digits(s), self.digits(t))])

    def neg(self, s: int) -> int:
        return self.from_digits([-x for x in self.digits(s)])

    def pow(self, s: int, k: int) -> int:
        if s == 0:
            return 0 if k else 1
        return int(self.exp[(int(self.log[s]) * k) % (self.q - 1)])

    def inv(self, s: int) -> int:
        if s == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.exp[(-int(self.log[s])) % (self.q - 1)])

    def char_index(self, s: int, p: int, zeta: int) -> int:
        """k with zeta^k = s^((q-1)/p)."""
        return int((int(self.log[s]) * self._z0inv(p, zeta)) % p)

    def _z0inv(self, p: int, zeta: int) -> int:
        if (self.q - 1) % p:
            raise ValueError(f"no p-th roots of unity in F_{self.q}")
        lz = int(self.log[zeta])
        step = (self.q - 1) // p
        if lz % step or (lz // step) % p == 0:
            raise ValueError("zeta is not a primitive p-th root of unity")
        return pow(lz // step, -1, p)

    # vectorized passes
    def poly_values(self, coef_codes) -> np.ndarray:
        cc = np.array(coef_codes, dtype=np.int64)
        if numba_enabled():
            return _poly_values_nb(self.ell, self.n, self.exp, self.log, cc)
        return _poly_values_np(self.ell, self.n, self.exp, self.log, cc)

    def characters(self, vals: np.ndarray, p: int, zeta: int) -> np.ndarray:
        """Per value: -1 for zero, else its power-residue index in Z/p."""
        z0inv = self._z0inv(p, zeta)
        if numba_enabled():
            return _char_nb(vals, self.log, z0inv, p)
        return _char_np(vals, self.log, z0inv, p)


def hit_witnesses(chi_q: np.ndarray, chi_r: np.ndarray, p: int, scale: int = 1) -> np.ndarray:
    """For each value s in Z/p, the first x with chi_q+chi_r = 0 and scale*chi_q = s (else -1)."""
    if numba_enabled():
        return _hits_nb(chi_q, chi_r, p, scale)
    return _hits_np(chi_q, chi_r, p, scale)


@lru_cache(maxsize=64)
def gf(ell: int, modulus: tuple[int, ...]) -> GF:
    return GF(ell, modulus)


def irreducible_modulus(ell: int, n: int) -> tuple[int, ...]:
    """A monic integer polynomial of degree n (n <= 3) irreducible mod ell, smallest first."""
    if n == 1:
        return (0, 1)
    from itertools import product

    for tail in product(range(ell), repeat=n):
        coeffs = list(tail) + [1]
        if coeffs[0] == 0:
            continue
        if all(sum(c * pow(x, i, ell) for i, c in enumerate(coeffs)) % ell for x in range(ell)):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")

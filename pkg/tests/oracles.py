"""Brute-force reference computations used only by the tests.

Nothing here calls the symbol formulas under test: norms and quadratic forms
are enumerated over residue rings with numpy.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from nonpowers.arith import Eis
from nonpowers.places import K, Place, coerce, local_int, valuation


# ---------------------------------------------------------------------------
# residue rings O_v / pi^j as numpy arrays
# ---------------------------------------------------------------------------


class _IntRing:
    """Z/m (Q, or split places of Q(zeta3) through zeta -> r)."""

    def __init__(self, v: Place, j: int):
        self.v, self.j = v, j
        self.m = v.ell**j

    def all(self) -> np.ndarray:
        return np.arange(self.m, dtype=np.int64)

    def const(self, x) -> int:
        return int(local_int(x, self.v, self.j)) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def key(self, a):
        return a


class _PairRing:
    """(Z/ell^j)[zeta] for inert places, elements as (x, y) arrays."""

    def __init__(self, v: Place, j: int):
        self.v, self.j = v, j
        self.m = v.ell**j

    def all(self):
        g = np.arange(self.m, dtype=np.int64)
        x, y = np.meshgrid(g, g, indexing="ij")
        return (x.ravel(), y.ravel())

    def const(self, x):
        e = local_int(x, self.v, self.j)
        e = Eis.coerce(e)
        return (e.x % self.m, e.y % self.m)

    def mul(self, a, b):
        (x1, y1), (x2, y2) = a, b
        return ((x1 * x2 - y1 * y2) % self.m, (x1 * y2 + x2 * y1 - y1 * y2) % self.m)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.m, (a[1] + b[1]) % self.m)

    def key(self, a):
        return a[0] + self.m * a[1]


def _ring(v: Place, j: int):
    if v.fld == K and v.f == 2:
        return _PairRing(v, j)
    return _IntRing(v, j)


def _projective_points(r, n: int) -> list:
    """Coordinate arrays of one representative per line through 0 in F^n (r a field)."""
    els = r.all()
    size = els[0].shape[0] if isinstance(els, tuple) else els.shape[0]
    zero = (np.zeros(1, np.int64), np.zeros(1, np.int64)) if isinstance(els, tuple) else np.zeros(1, np.int64)
    one = (np.ones(1, np.int64), np.zeros(1, np.int64)) if isinstance(els, tuple) else np.ones(1, np.int64)
    blocks = []
    for lead in range(n):
        free = n - lead - 1
        idx = np.indices((size,) * free).reshape(free, -1) if free else np.zeros((0, 1), np.int64)
        count = idx.shape[1]
        coords = []
        for k in range(n):
            if k < lead:
                src, pick = zero, np.zeros(count, np.int64)
            elif k == lead:
                src, pick = one, np.zeros(count, np.int64)
            else:
                src, pick = els, idx[k - lead - 1]
            coords.append((src[0][pick], src[1][pick]) if isinstance(src, tuple) else src[pick])
        blocks.append(coords)
    return blocks


def _norm_form(r, dc, ys, p: int):
    if p == 2:
        y, z = ys
        dz2 = r.mul(_const_like(r, dc, z), r.mul(z, z))
        return r.add(r.mul(y, y), r.mul(_const_like(r, -1, z), dz2))
    y0, y1, y2 = ys
    d2 = r.mul(dc, dc)
    m3d = r.mul(dc, r.const(-3))
    cube = lambda t: r.mul(r.mul(t, t), t)  # noqa: E731
    c1 = r.mul(_const_like(r, dc, y1), cube(y1))
    c2 = r.mul(_const_like(r, d2, y2), cube(y2))
    cross = r.mul(_const_like(r, m3d, y0), r.mul(r.mul(y0, y1), y2))
    return r.add(r.add(cube(y0), c1), r.add(c2, cross))


def _const_like(r, c, like):
    if isinstance(like, tuple):
        c = c if isinstance(c, tuple) else r.const(c)
        return (np.full_like(like[0], c[0]), np.full_like(like[0], c[1]))
    c = c if not isinstance(c, int) or 0 <= c < r.m else c % r.m
    return np.full_like(like, c)


def _keys(r, vals) -> np.ndarray:
    return r.key(vals) if isinstance(vals, tuple) else vals


def _norm_values(d, v: Place, p: int) -> set:
    """All values of the norm form of k_v[t]/(t^p - d) on the residue field.

    The form is homogeneous of degree p, so its values are N(P) * t^p over
    projective points P and nonzero t.
    """
    r = _ring(v, 1)
    return _norm_values_cached(v, p, r.key(r.const(d)) if not isinstance(r, _PairRing) else int(r.key(r.const(d))))


@lru_cache(maxsize=None)
def _norm_values_cached(v: Place, p: int, dkey: int) -> frozenset:
    r = _ring(v, 1)
    dc = (dkey % r.m, dkey // r.m) if isinstance(r, _PairRing) else dkey
    vals = np.unique(np.concatenate([_keys(r, _norm_form(r, dc, block, p)) for block in _projective_points(r, p)]))
    els = r.all()
    pw = r.mul(r.mul(els, els), els) if p == 3 else r.mul(els, els)
    powers = np.setdiff1d(np.unique(_keys(r, pw)), [0])
    nz = vals[vals != 0]
    out = {0} if (vals == 0).any() else set()
    if nz.size:
        if isinstance(r, _PairRing):
            x = (nz[:, None] % r.m, nz[:, None] // r.m)
            y = (powers[None, :] % r.m, powers[None, :] // r.m)
            prod = r.key(r.mul(x, y))
        else:
            prod = nz[:, None] * powers[None, :] % r.m
        out |= set(np.unique(prod).tolist())
    return frozenset(out)


def _uniformizer(v: Place):
    return coerce(v.pi, v.fld)


def is_local_norm_bruteforce(d, c, v: Place, p: int) -> bool:
    """Whether c is a norm from k_v(d^(1/p)) at a finite place v not above p.

    After removing norms of powers of pi (which are pi^p, and d itself when
    v(d) = 1), c is a unit or has valuation prime to p with d a unit.  A unit
    solution of N(xi) = c mod pi is exact: the quotient is = 1 mod pi, hence a
    p-th power, hence a norm.  In the second case c is a norm exactly when the
    norm form has a nontrivial zero mod pi: then t^p - d has a root and the
    norm is onto, otherwise every norm has valuation divisible by p.
    """
    fld = v.fld
    d, c = coerce(d, fld), coerce(c, fld)
    pi = _uniformizer(v)
    a = valuation(d, v)
    d = d / pi ** (p * (a // p))
    if p == 3 and valuation(d, v) == 2:
        d = d * d / pi**3
    b = valuation(c, v)
    c = c / pi ** (p * (b // p))
    a, b = valuation(d, v), valuation(c, v)
    if a == 1 and b:
        nd = d if p == 3 else -d
        c = c / nd**b
        b = 0
    if b:
        return not _residue_norm_kernel_trivial(d, v, p)
    r = _ring(v, 1)
    return r.key(r.const(c)) in _norm_values(d, v, p)


def _residue_norm_kernel_trivial(d, v: Place, p: int) -> bool:
    """True when N(xi) = 0 mod pi forces xi = 0 mod pi."""
    r = _ring(v, 1)
    dc = r.const(d)
    for block in _projective_points(r, p):
        if (_keys(r, _norm_form(r, dc, block, p)) == 0).any():
            return False
    return True


# ---------------------------------------------------------------------------
# quadratic forms over Q_ell
# ---------------------------------------------------------------------------


def _squarefree_int(x: Fraction) -> int:
    from nonpowers.arith import factor_int

    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in factor_int(abs(n)).items():
        if e % 2:
            out *= q
    return sign * out


def hilbert_bruteforce(a, b, ell: int) -> int:
    """0 when z^2 = a x^2 + b y^2 has a primitive solution modulo ell^k, else 1.

    a, b are first reduced to squarefree integers; k = 6 for ell = 2 and 2
    otherwise.  For odd ell a primitive solution mod ell^2 has a unit
    coordinate with nonzero partial derivative (after dividing out ell when
    both a and b are divisible by it), so it lifts.
    """
    a, b = _squarefree_int(Fraction(a)), _squarefree_int(Fraction(b))
    m = ell ** (6 if ell == 2 else 2)
    return _hilbert_mod(a % m, b % m, ell, m)


@lru_cache(maxsize=None)
def _hilbert_mod(a: int, b: int, ell: int, m: int) -> int:
    g = np.arange(m, dtype=np.int64)
    sq = np.zeros(m, dtype=bool)
    sq_prim = np.zeros(m, dtype=bool)  # squares of ell-units
    s = (g * g) % m
    sq[s] = True
    sq_prim[s[g % ell != 0]] = True
    x = g[:, None]
    y = g[None, :]
    rhs = (a * x * x + b * y * y) % m
    xy_prim = (x % ell != 0) | (y % ell != 0)
    # primitive: some coordinate is a unit; if x or y is a unit any z works
    if (xy_prim & sq[rhs]).any():
        return 0
    # x, y both divisible by ell but z a unit
    if (~xy_prim & sq_prim[rhs]).any():
        return 0
    return 1


def real_hilbert(a, b) -> int:
    return 1 if (a < 0 and b < 0) else 0


# ---------------------------------------------------------------------------
# blind enumeration of attainable invariants on the family
# ---------------------------------------------------------------------------


def attainable_by_sampling(params, u, v: Place, symbol, samples) -> set:
    """Values inv(D, Q(x)) over sample points x with inv(D, Q(x)) + inv(D, R(x)) = 0."""
    D = params.d * coerce(u, params.fld)
    p = params.p
    out = set()
    for x in samples:
        qv, rv = params.q_poly(x), params.r_poly(x)
        if qv == 0 or rv == 0:
            continue
        iq, ir = symbol(D, qv, v), symbol(D, rv, v)
        if (iq + ir) % p == 0:
            out.add(iq % p)
    return out


def sample_points_q(ell: int, count: int = 400) -> list[Fraction]:
    """Integers, ell-adic small and large rationals: a blind sample of Q_ell."""
    pts = [Fraction(x) for x in range(count)]
    pts += [Fraction(x, ell) for x in range(1, count // 4)]
    pts += [Fraction(1, ell**2 * x) for x in range(1, count // 8)]
    pts += [Fraction(x * ell**2) for x in range(1, count // 8)]
    return pts


def sample_points_k(v: Place, count: int = 30) -> list:
    """Eisenstein integers of small size plus a few elements of negative valuation."""
    pi = _uniformizer(v)
    pts = [Eis(x, y) for x in range(count) for y in range(0, count, 3)]
    pts += [Eis(x, y) / pi for x in range(1, 8) for y in range(0, 8)]
    return pts

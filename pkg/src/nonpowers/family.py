"""The family U_u : Norm_{K/k}(Xi) = P(x) != 0, with K = k((d u)^(1/p)).

Here P = Q R, Q = x^p + c, R = a x^p + ac + 1, d = ab, and A = (du, Q(x))_zeta
is the Brauer class whose local evaluations decide the obstruction.  At a
k_v-point, inv(du, Q(x)) + inv(du, R(x)) = 0 because P(x) is a norm, so the
attainable set at v is

    S_v = { inv(D, Q(x)) : x in k_v, P(x) != 0, inv(D, Q(x)) + inv(D, R(x)) = 0 }

with D = du.  It is computed by a disk scan over O_v and over the region
v(x) < 0 (through y = 1/x), with each disk certified by Taylor expansions.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import Indeterminate, PreconditionViolated, UnsupportedWildSymbol
from .fields import check_pair, is_global_pth_power, parse_element, support
from .places import (
    K,
    Q,
    REAL,
    Place,
    archimedean_places,
    coerce,
    is_local_pth_power,
    local_class_key,
    places_over,
    places_up_to,
    residue_code,
    residue_field,
    residue_reps,
    valuation,
    wild_level,
)
from .poly import Poly, discriminant, is_irreducible_deg_p
from .realroots import sample_points
from .symbols import hilbert_symbol, local_symbol
from .unram import ExtElem
from .weil import weil_constants

DEFAULT_DEPTH = 12
ENUMERATION_CAP = 50_000  # residue-field size above which the Weil-bound path is used


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (a, b, c) of the family over k = Q (p = 2) or Q(zeta3) (p = 3)."""

    p: int
    fld: str
    a: object
    b: object
    c: object

    def __post_init__(self):
        check_pair(self.fld, self.p)
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, coerce(getattr(self, name), self.fld))
        if self.a == 0 or self.b == 0:
            raise PreconditionViolated("a and b must be nonzero")

    @classmethod
    def from_json(cls, data) -> "FamilyParams":
        if isinstance(data, str):
            data = json.loads(data)
        fld = data.get("field", Q)
        return cls(
            int(data["p"]), fld,
            parse_element(str(data["a"]), fld),
            parse_element(str(data["b"]), fld),
            parse_element(str(data["c"]), fld),
        )

    def to_json(self) -> dict:
        return {"p": self.p, "field": self.fld, "a": str(self.a), "b": str(self.b), "c": str(self.c)}

    @cached_property
    def d(self):
        return self.a * self.b

    @cached_property
    def q_poly(self) -> Poly:
        return Poly([self.c] + [0] * (self.p - 1) + [coerce(1, self.fld)])

    @cached_property
    def r_poly(self) -> Poly:
        return Poly([self.a * self.c + 1] + [0] * (self.p - 1) + [self.a])

    @cached_property
    def p_poly(self) -> Poly:
        return self.q_poly * self.r_poly

    @cached_property
    def place_a(self) -> Place | None:
        return _prime_place(self.a, self.fld)

    @cached_property
    def place_b(self) -> Place | None:
        return _prime_place(self.b, self.fld)

    def invariant_violations(self) -> list[str]:
        out = []
        try:
            if discriminant(self.p_poly) == 0:
                out.append("P is not separable")
        except Exception:  # noqa: BLE001
            out.append("P is not separable")
        if not is_irreducible_deg_p(self.q_poly, self.fld, self.p):
            out.append("Q is reducible")
        if self.r_poly.degree != self.p or not is_irreducible_deg_p(self.r_poly, self.fld, self.p):
            out.append("R is reducible")
        if self.r_poly - self.q_poly * self.a != Poly([1]):
            out.append("R - aQ != 1")
        if not _divides(self.b, self.a * self.c + 1, self.fld):
            out.append("b does not divide ac+1")
        if is_global_pth_power(self.d, self.fld, self.p):
            out.append("d is a p-th power")
        return out

    def require_valid(self) -> None:
        bad = self.invariant_violations()
        if bad:
            raise PreconditionViolated("; ".join(bad))

    @cached_property
    def bad_places(self) -> tuple[Place, ...]:
        """Finite places dividing lc(P) disc(P) or a coefficient denominator."""
        disc = discriminant(self.p_poly)
        out = set(support(self.p_poly.lc, self.fld)) | set(support(disc, self.fld))
        for c in self.p_poly.coeffs:
            if c != 0:
                out.update(v for v in support(c, self.fld) if valuation(c, v) < 0)
        return tuple(sorted(out))

    @cached_property
    def base_places(self) -> tuple[Place, ...]:
        """Archimedean places, places over p, supports of a and b, bad places of P."""
        out = set(archimedean_places(self.fld))
        out.update(places_over(self.fld, self.p))
        out.update(support(self.a, self.fld))
        out.update(support(self.b, self.fld))
        out.update(self.bad_places)
        return tuple(sorted(out))

    @cached_property
    def small_unsurjective_places(self) -> tuple[Place, ...]:
        """Good places below M_curve where the residue symbol map is not onto."""
        m = weil_constants(self.p).M_curve
        base = set(self.base_places)
        out = []
        for v in places_up_to(self.fld, m - 1):
            if v in base:
                continue
            if not symbol_surjective(self, v).surjective:
                out.append(v)
        return tuple(out)

    @cached_property
    def S(self) -> tuple[Place, ...]:
        return tuple(sorted(set(self.base_places) | set(self.small_unsurjective_places)))


def _prime_place(x, fld: str) -> Place | None:
    sup = support(x, fld)
    if len(sup) == 1 and valuation(x, sup[0]) == 1:
        return sup[0]
    return None


def _divides(b, n, fld: str) -> bool:
    if n == 0:
        return True
    quotient = coerce(n, fld) / coerce(b, fld)
    if fld == Q:
        return quotient.denominator == 1
    return quotient.is_integral


# ---------------------------------------------------------------------------
# residue-level symbol surjectivity
# ---------------------------------------------------------------------------


@dataclass
class SurjectivityResult:
    place: Place
    surjective: bool
    witnesses: dict[int, int]  # value -> residue code of x
    q: int


def _residue_gf(v: Place) -> "_kernels.GF":
    if v.fld == K and v.f == 2:
        return _kernels.gf(v.ell, (1, 1, 1))
    return _kernels.gf(v.ell, (0, 1))


def _gf_zeta(v: Place) -> int:
    return residue_field(v).zeta


def _poly_codes(poly: Poly, v: Place) -> list[int]:
    return [residue_code(c, v) if c != 0 else 0 for c in poly.coeffs]


def symbol_surjective(params: FamilyParams, v: Place) -> SurjectivityResult:
    """Whether chi(Q(x)) runs over all of Z/p on the points of z^p = Q(x)R(x) != 0 over F_v."""
    gfield = _residue_gf(v)
    p = params.p
    zeta = _gf_zeta(v)
    chi_q = gfield.characters(gfield.poly_values(_poly_codes(params.q_poly, v)), p, zeta)
    chi_r = gfield.characters(gfield.poly_values(_poly_codes(params.r_poly, v)), p, zeta)
    wit = _kernels.hit_witnesses(chi_q, chi_r, p, 1)
    hits = {int(s): int(x) for s, x in enumerate(wit) if x >= 0}
    return SurjectivityResult(v, len(hits) == p, hits, gfield.q)


# ---------------------------------------------------------------------------
# local contexts for the disk scan
# ---------------------------------------------------------------------------


class _BaseCtx:
    """O_v itself."""

    f = 1

    def __init__(self, v: Place, p: int):
        self.v, self.p = v, p
        self.tame = v.ell != p
        self.n0 = wild_level(v, p)
        self.pi = coerce(v.pi, v.fld)
        self.gf = _residue_gf(v) if self.tame else None
        self.zeta = _gf_zeta(v)

    def elem(self, x):
        return coerce(x, self.v.fld)

    def val(self, z) -> int:
        return valuation(z, self.v)

    def reps(self):
        return residue_reps(self.v, 1)

    def code_rep(self, code: int):
        return self.reps()[code]

    def residue(self, z) -> int:
        return residue_code(z, self.v)

    def symbol(self, D, w) -> int:
        return local_symbol(D, w, self.v, self.p)


class _ExtCtx:
    """The unramified extension of degree f of k_v (v tame with prime residue field)."""

    def __init__(self, v: Place, p: int, f: int):
        if v.f != 1 or v.ell == p:
            raise PreconditionViolated("extension scans need a tame place with prime residue field")
        self.v, self.p, self.f = v, p, f
        self.tame = True
        self.n0 = 1
        self.pi = coerce(v.pi, v.fld)
        self.g = _kernels.irreducible_modulus(v.ell, f)
        self.gf = _kernels.gf(v.ell, self.g)
        self.zeta = _gf_zeta(v)
        self._reps = None

    def elem(self, x):
        return ExtElem([coerce(x, self.v.fld)], self.g)

    def val(self, z) -> int:
        if not isinstance(z, ExtElem):
            return valuation(z, self.v)
        return min(valuation(c, self.v) for c in z.c if c != 0)

    def reps(self):
        if self._reps is None:
            self._reps = [self.code_rep(i) for i in range(self.gf.q)]
        return self._reps

    def code_rep(self, code: int):
        return ExtElem(self.gf.digits(code), self.g)

    def residue(self, z) -> int:
        if not isinstance(z, ExtElem):
            return residue_code(z, self.v)
        return self.gf.from_digits([residue_code(c, self.v) if c != 0 else 0 for c in z.c])

    def symbol(self, D, w) -> int:
        a = valuation(D, self.v)
        b = self.val(w)
        d0 = coerce(D, self.v.fld) / self.pi**a
        w0 = w / self.pi**b if b else w
        dc = residue_code(d0, self.v)
        wc = self.residue(w0)
        gfield = self.gf
        t = gfield.mul(gfield.pow(dc, b), gfield.pow(wc, -a))
        if (a * b) % 2:
            t = gfield.neg(t)
        return gfield.char_index(t, self.p, self.zeta)


# ---------------------------------------------------------------------------
# disk scan
# ---------------------------------------------------------------------------


@dataclass
class AttainableSet:
    """Attainable values of A at one place, with a completeness flag."""

    place: Place
    values: frozenset
    complete: bool
    witnesses: dict = field(default_factory=dict)
    method: str = "scan"
    max_radius: int = 0
    extension_degree: int = 1

    def to_json(self) -> dict:
        return {
            "place": self.place.label,
            "values": sorted(self.values),
            "complete": self.complete,
            "method": self.method,
            "witnesses": {str(k): str(w) for k, w in sorted(self.witnesses.items())},
            "max_radius": self.max_radius,
        }


_INF = float("inf")


def _status(ctx, poly: Poly, pmin: int, x0, t: int):
    """Classify poly on the disk x0 + pi^t O: ('const', value), ('root', None) or ('open', None)."""
    taylor = poly.taylor(x0)
    f0 = taylor[0]
    if f0 == 0:
        return "root", None
    m = ctx.val(f0)
    crit = _INF
    for k in range(1, len(taylor)):
        if taylor[k] != 0:
            crit = min(crit, ctx.val(taylor[k]) + k * t)
    if crit >= m + ctx.n0:
        return "const", f0
    if len(taylor) > 1 and taylor[1] != 0:
        a = m - pmin
        b = ctx.val(taylor[1]) - pmin
        if a > 2 * b and a - b >= t:
            return "root", None
    return "open", None


def _poly_min_val(ctx, poly: Poly) -> int:
    return min(valuation(c, ctx.v) for c in poly.coeffs if c != 0)


def _integral(ctx, poly: Poly) -> bool:
    return _poly_min_val(ctx, poly) >= 0


def _scan(
    ctx,
    D,
    q_poly: Poly,
    r_poly: Poly,
    depth: int,
    stop_first: bool = False,
) -> tuple[dict, bool, int]:
    """Disk scan; returns (value -> witness, complete, largest radius exponent used)."""
    p = ctx.p
    found: dict[int, str] = {}
    complete = True
    max_t = 0
    qr = q_poly.reversed(p)
    rr = r_poly.reversed(p)
    polys = {"x": (q_poly, r_poly), "y": (qr, rr)}
    mins = {br: (_poly_min_val(ctx, a), _poly_min_val(ctx, b)) for br, (a, b) in polys.items()}

    def add(val: int, wit: str) -> None:
        found.setdefault(val % p, wit)

    def done() -> bool:
        return len(found) == p or (stop_first and bool(found))

    stack: list[tuple[str, object, int]] = [("y", ctx.elem(0), 1)]
    # residue-level pass over the unit disks of the x-branch
    if ctx.tame and _integral(ctx, q_poly) and _integral(ctx, r_poly):
        gfield = ctx.gf
        zeta = ctx.zeta
        vals_q = gfield.poly_values([ctx.residue(c) if c != 0 else 0 for c in q_poly.coeffs])
        vals_r = gfield.poly_values([ctx.residue(c) if c != 0 else 0 for c in r_poly.coeffs])
        chi_q = gfield.characters(vals_q, p, zeta)
        chi_r = gfield.characters(vals_r, p, zeta)
        a = valuation(D, ctx.v)
        scale = (-a) % p
        if scale == 0:
            units = np.nonzero((chi_q >= 0) & (chi_r >= 0))[0]
            if units.size:
                add(0, f"x = {ctx.code_rep(int(units[0]))}")
        else:
            wit = _kernels.hit_witnesses(chi_q, chi_r, p, scale)
            for s, x in enumerate(wit):
                if x >= 0:
                    add(s, f"x = {ctx.code_rep(int(x))}")
        max_t = 1
        for code in np.nonzero((vals_q == 0) | (vals_r == 0))[0][::-1]:
            stack.append(("x", ctx.code_rep(int(code)), 1))
    else:
        stack.append(("x", ctx.elem(0), 0))

    while stack and not done():
        br, x0, t = stack.pop()
        max_t = max(max_t, t)
        fa, fb = polys[br]
        ma, mb = mins[br]
        sa, va = _status(ctx, fa, ma, x0, t)
        sb, vb = (None, None)
        if sa != "open":
            sb, vb = _status(ctx, fb, mb, x0, t)
        if sa == "const" and sb == "const":
            ia, ib = ctx.symbol(D, va), ctx.symbol(D, vb)
            if (ia + ib) % p == 0:
                add(ia, _point_label(ctx, br, x0, t))
            continue
        if sa == "root" and sb == "const":
            add(-ctx.symbol(D, vb), f"near a root of {'Q' if br == 'x' else 'Q*'} in {_disk_label(br, x0, t)}")
            continue
        if sb == "root" and sa == "const":
            add(ctx.symbol(D, va), f"near a root of {'R' if br == 'x' else 'R*'} in {_disk_label(br, x0, t)}")
            continue
        if t >= depth:
            complete = False
            continue
        step = ctx.pi**t
        for r in reversed(ctx.reps()):
            stack.append((br, x0 + step * r, t + 1))
    if done():
        complete = True
    return found, complete, max_t


def _disk_label(br: str, x0, t: int) -> str:
    var = "x" if br == "x" else "1/x"
    return f"{var} in {x0} + pi^{t} O"


def _point_label(ctx, br: str, x0, t: int) -> str:
    if br == "x":
        return f"x = {x0}"
    y = x0 if x0 != 0 else ctx.pi**t
    return f"x = 1/({y})"


# ---------------------------------------------------------------------------
# archimedean places
# ---------------------------------------------------------------------------


def _real_sets(D, q_poly: Poly, r_poly: Poly) -> tuple[dict, bool]:
    """S at the real place for p = 2: sign analysis on the gaps between real roots of QR."""
    found: dict[int, str] = {}
    pts = sample_points(q_poly * r_poly)
    for x in pts:
        qv, rv = q_poly(x), r_poly(x)
        if qv == 0 or rv == 0:
            continue
        ia = hilbert_symbol(D, qv, REAL)
        ib = hilbert_symbol(D, rv, REAL)
        if (ia + ib) % 2 == 0:
            found.setdefault(ia, f"x = {x}")
    return found, True


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


_CACHE: dict = {}


def twisted(params: FamilyParams, u):
    u = coerce(u, params.fld)
    if u == 0:
        raise PreconditionViolated("u must be nonzero")
    return params.d * u


def _any_point(params: FamilyParams):
    for x in range(0, 10):
        if params.p_poly(x) != 0:
            return x
    raise AssertionError("P vanishes on 0..9")


def attainable_for_D(
    D, q_poly: Poly, r_poly: Poly, v: Place, p: int, depth: int = DEFAULT_DEPTH, stop_first: bool = False, ext: int = 1
) -> AttainableSet:
    """S_v for an arbitrary twist D and pair (Q, R) of degree-p polynomials."""
    fld = v.fld
    D = coerce(D, fld)
    if v.kind == "complex":
        return AttainableSet(v, frozenset({0}), True, {0: "any x"}, "complex")
    if v.kind == "real":
        if p != 2 or D > 0:
            return AttainableSet(v, frozenset({0}), True, {0: "any x with P(x) != 0"}, "real-split")
        found, complete = _real_sets(D, q_poly, r_poly)
        return AttainableSet(v, frozenset(found), complete, found, "real-signs")
    if ext == 1 and is_local_pth_power(D, v, p):
        return AttainableSet(v, frozenset({0}), True, {0: "D is a local p-th power"}, "split")
    if v.ell == p and p == 3:
        raise UnsupportedWildSymbol(f"D = {D} is not a cube at {v.label}")
    ctx = _BaseCtx(v, p) if ext == 1 else _ExtCtx(v, p, ext)
    found, complete, max_t = _scan(ctx, D, q_poly, r_poly, depth, stop_first)
    return AttainableSet(v, frozenset(found), complete, found, "scan", max_t, ext)


def attainable_invariants(
    params: FamilyParams, u, v: Place, depth: int = DEFAULT_DEPTH, ext: int = 1
) -> AttainableSet:
    """The set {inv_v A(x)} over k_v-points (or points over the unramified extension of degree ext)."""
    D = twisted(params, u)
    key = (params, v, local_class_key(D, v, params.p) if ext == 1 else D, depth, ext)
    hit = _CACHE.get(key)
    if hit is None:
        hit = attainable_for_D(D, params.q_poly, params.r_poly, v, params.p, depth, ext=ext)
        _CACHE[key] = hit
    return hit


@dataclass
class LocalSolvability:
    place: Place
    solvable: bool
    witness: str
    method: str


def local_solvable(params: FamilyParams, u, v: Place, depth: int = DEFAULT_DEPTH) -> LocalSolvability:
    """Existence of a k_v-point on U_u, with a witness."""
    D = twisted(params, u)
    if v.kind == "complex":
        return LocalSolvability(v, True, "x = 0", "complex")
    if is_local_pth_power(D, v, params.p):
        return LocalSolvability(v, True, f"x = {_any_point(params)}", "split")
    if v.kind == "real":
        found, _ = _real_sets(D, params.q_poly, params.r_poly)
        if found:
            return LocalSolvability(v, True, next(iter(found.values())), "real-signs")
        return LocalSolvability(v, False, "P(x) < 0 for all real x", "real-signs")
    return solvable_for_D(D, params.q_poly, params.r_poly, v, params.p, depth)


def solvable_for_D(D, q_poly: Poly, r_poly: Poly, v: Place, p: int, depth: int = DEFAULT_DEPTH) -> LocalSolvability:
    if v.kind != "finite":
        s = attainable_for_D(D, q_poly, r_poly, v, p, depth)
        return LocalSolvability(v, bool(s.values), next(iter(s.witnesses.values()), ""), s.method)
    if is_local_pth_power(D, v, p):
        return LocalSolvability(v, True, "D is a local p-th power", "split")
    if v.ell == p and p == 3:
        raise UnsupportedWildSymbol(f"D = {D} is not a cube at {v.label}")
    ctx = _BaseCtx(v, p)
    found, complete, _ = _scan(ctx, D, q_poly, r_poly, depth, stop_first=True)
    if found:
        return LocalSolvability(v, True, next(iter(found.values())), "scan")
    if not complete:
        raise Indeterminate(f"local solvability at {v.label} not settled at depth {depth}")
    return LocalSolvability(v, False, f"exhausted at depth {depth}", "scan")


# ---------------------------------------------------------------------------
# obstruction verdicts
# ---------------------------------------------------------------------------


@dataclass
class ObstructionReport:
    u: object
    D: object
    p: int
    sets: list[AttainableSet]
    verdict: str  # NoLocalPoints | Obstructed | Unobstructed | Indeterminate
    depth: int
    note: str = ""

    @property
    def complete(self) -> bool:
        return all(s.complete for s in self.sets)

    def set_at(self, v: Place) -> AttainableSet | None:
        for s in self.sets:
            if s.place == v:
                return s
        return None

    def to_json(self) -> dict:
        return {
            "u": str(self.u),
            "D": str(self.D),
            "verdict": self.verdict,
            "complete": self.complete,
            "depth": self.depth,
            "places": [s.to_json() for s in self.sets],
            "note": self.note,
        }


def sumset_contains_zero(sets: Iterable[Iterable[int]], p: int) -> bool:
    reach = {0}
    for s in sets:
        reach = {(r + x) % p for r in reach for x in s}
        if not reach:
            return False
    return 0 in reach


def verdict_from_sets(sets: list[AttainableSet], p: int) -> str:
    if any(not s.values for s in sets):
        if all(s.complete for s in sets if not s.values):
            return "NoLocalPoints"
        return "Indeterminate"
    if sumset_contains_zero([s.values for s in sets], p):
        return "Unobstructed"
    return "Obstructed" if all(s.complete for s in sets) else "Indeterminate"


def obstruction_verdict(params: FamilyParams, u, depth: int = DEFAULT_DEPTH) -> ObstructionReport:
    """Evaluate S_v on S and on the places where v(u) is not divisible by p.

    Elsewhere v(D) = 0 mod p with a, c, ac+1 integral and v(a) = 0, and
    R - aQ = 1 forces v(Q(x)) = 0 mod p on every point, so S_v = {0}.
    """
    D = twisted(params, u)
    p = params.p
    u = coerce(u, params.fld)
    places = set(params.S)
    for v in support(u, params.fld):
        if valuation(u, v) % p:
            places.add(v)
    sets = []
    m_curve = weil_constants(p).M_curve
    for v in sorted(places):
        if v not in params.S and v.q > ENUMERATION_CAP and v.q >= m_curve:
            sets.append(AttainableSet(v, frozenset(range(p)), True, {}, "weil-bound"))
            continue
        sets.append(attainable_invariants(params, u, v, depth))
    verdict = verdict_from_sets(sets, p)
    return ObstructionReport(u, D, p, sets, verdict, depth, "S_v = {0} at all other places")


# ---------------------------------------------------------------------------
# zero-cycles
# ---------------------------------------------------------------------------


@dataclass
class ZeroCycleAnalysis:
    obstructed: bool
    constants: dict  # place label -> c_v
    total: int
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "obstructed": self.obstructed,
            "constants": self.constants,
            "total": self.total,
            "extension_checks": self.checks,
            "skipped": self.skipped,
        }


def zero_cycle_analysis(
    params: FamilyParams,
    u,
    report: ObstructionReport | None = None,
    degrees: tuple[int, ...] = (2, 3),
    ext_cap: int = 2_000_000,
    depth: int = DEFAULT_DEPTH,
) -> ZeroCycleAnalysis:
    """Decide whether every family of local zero-cycles of degree 1 has nonzero A-sum.

    This holds when each S_v is a singleton {c_v} that scales with the degree
    of the point, i.e. points over the unramified extension of degree f give
    f c_v, and sum c_v != 0.  Extensions of the listed degrees are scanned at
    tame places where D is not a local p-th power; fields with more than
    ``ext_cap`` residues are skipped and recorded.
    """
    if report is None:
        report = obstruction_verdict(params, u, depth)
    if report.verdict == "Unobstructed":
        return ZeroCycleAnalysis(False, {}, 0)
    if report.verdict != "Obstructed":
        raise Indeterminate(f"obstruction verdict is {report.verdict}")
    p = params.p
    consts = {}
    for s in report.sets:
        if len(s.values) != 1:
            # two values c1 != c2 give n c1 + (1 - n) c2, which covers Z/p
            return ZeroCycleAnalysis(False, {}, 0)
        consts[s.place.label] = next(iter(s.values))
    D = report.D
    checks, skipped = [], []
    for s in report.sets:
        v = s.place
        if not v.is_finite or is_local_pth_power(D, v, p):
            continue
        if v.ell == p:
            raise Indeterminate(f"extension values at the wild place {v.label} are not computable")
        if v.f != 1:
            skipped.append({"place": v.label, "reason": "non-prime residue field"})
            continue
        c_v = consts[v.label]
        for f in degrees:
            if v.q**f > ext_cap:
                skipped.append({"place": v.label, "degree": f, "reason": f"q^f = {v.q**f} above cap"})
                continue
            ext_set = attainable_invariants(params, u, v, depth, ext=f)
            expected = (f * c_v) % p
            ok = ext_set.complete and ext_set.values == frozenset({expected})
            checks.append({
                "place": v.label, "degree": f, "values": sorted(ext_set.values),
                "expected": expected, "complete": ext_set.complete, "ok": ok,
            })
            if not ok:
                raise Indeterminate(
                    f"points over the degree-{f} extension at {v.label} give {sorted(ext_set.values)}"
                )
    total = sum(consts.values()) % p
    return ZeroCycleAnalysis(total != 0, consts, total, checks, skipped)


def zero_cycle_obstruction(params: FamilyParams, u, report: ObstructionReport | None = None, **kw) -> bool:
    """True when no zero-cycle of degree 1 can be orthogonal to A."""
    return zero_cycle_analysis(params, u, report, **kw).obstructed


# ---------------------------------------------------------------------------
# Salberger bound
# ---------------------------------------------------------------------------


def salberger_bound(p: int, s: int) -> int:
    """Smallest N = 1 mod p with N >= max(1, (p-1)(s - 2(p+1)/p)/2)."""
    if s < 0:
        raise PreconditionViolated("s must be non-negative")
    threshold = Fraction(p - 1) * (s - Fraction(2 * (p + 1), p)) / 2
    n = max(1, math.ceil(threshold))
    while n % p != 1 % p:
        n += 1
    return n


# ---------------------------------------------------------------------------
# searches for global points (p = 2 over Q)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction
    z: Fraction

    def to_json(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "z": str(self.z)}


def height_ordered_rationals(bound: int, positive_only: bool = False):
    """Rationals s/t in lowest terms ordered by max(|s|, t), then t, then s."""
    yield Fraction(0)
    for h in range(1, bound + 1):
        batch = set()
        for t in range(1, h + 1):
            for s in (h,) if t < h else range(0, h + 1):
                for sign in (1, -1):
                    if math.gcd(s, t) == 1 and s:
                        batch.add(Fraction(sign * s, t))
        for x in sorted(batch, key=lambda f: (f.denominator, abs(f.numerator), f.numerator < 0)):
            if positive_only and x < 0:
                continue
            yield x


def _norm_solvable(D: Fraction, m: Fraction, hint: Iterable[Place]) -> bool:
    hint = list(hint)
    for v in hint:
        if hilbert_symbol(D, m, v):
            return False
    for v in support(m, Q):
        if v not in hint and hilbert_symbol(D, m, v):
            return False
    return True


def rational_point_search(params: FamilyParams, u, height_bound: int = 200) -> RationalPoint | None:
    """First rational point on y^2 - D z^2 = P(x) with x of height <= height_bound, else None."""
    from .conic import solve_norm_equation

    if params.p != 2 or params.fld != Q:
        raise PreconditionViolated("rational point search is for p = 2 over Q")
    D = twisted(params, u)
    hint = sorted(set(params.S) | set(support(D, Q)) | {REAL})
    for x in height_ordered_rationals(height_bound):
        m = params.p_poly(x)
        if m == 0:
            continue
        if not _norm_solvable(D, m, hint):
            continue
        sol = solve_norm_equation(D, m)
        if sol is None:
            continue
        y, z = sol
        if y * y - D * z * z != m:
            raise AssertionError("conic solver returned a non-solution")
        return RationalPoint(Fraction(x), y, z)
    return None


@dataclass
class FiberPoint:
    """A closed point of degree deg G: t a root of G, y = Y(t), z = Z(t)."""

    G: Poly
    Y: Poly
    Z: Poly
    certificate: str

    def to_json(self) -> dict:
        return {"G": self.G.to_str("t"), "Y": self.Y.to_str("t"), "Z": self.Z.to_str("t"), "certificate": self.certificate}


def closed_point_fiber_search(
    params: FamilyParams, u, degree: int = 5, search_budget: int = 2000, height_bound: int = 200
) -> FiberPoint | None:
    """Search for a closed point of degree 2p+1 on U_u (p = 2 over Q).

    Starting from a rational point (x0, y0, z0), set Y = y0 + (t - x0) A(t),
    Z = z0 + (t - x0) B(t) with A, B quadratics of small height.  Then
    Y^2 - D Z^2 - P = (t - x0) G(t) identically, and a root of G gives a
    point over Q[t]/G.  G is certified irreducible by irreducibility modulo a
    prime not dividing its leading coefficient.
    """
    from .poly import is_irreducible_mod

    if params.p != 2 or params.fld != Q or degree != 5:
        raise PreconditionViolated("fiber search is implemented for p = 2 over Q, degree 5")
    D = twisted(params, u)
    P = params.p_poly
    root, exact = _rational_sqrt(D)
    if exact:
        # split norm: y = (1 + P)/2, z = (P - 1)/(2 sqrt D) at any point
        G = Poly([-2, 0, 0, 0, 0, 1])
        return FiberPoint(G, (P + 1) * Fraction(1, 2), (P - 1) * (1 / (2 * root)), "D is a square; t^5 - 2 is Eisenstein at 2")
    pt = rational_point_search(params, u, height_bound)
    if pt is None:
        return None
    lin = Poly([-pt.x, 1])
    tried = 0
    rng = range(-2, 3)
    for a2 in (1, 2, -1, -2):
        for b2 in rng:
            if Fraction(a2 * a2) == D * b2 * b2:
                continue
            for a1 in rng:
                for a0 in rng:
                    for b1 in rng:
                        for b0 in rng:
                            tried += 1
                            if tried > search_budget:
                                return None
                            Y = Poly([pt.y]) + lin * Poly([a0, a1, a2])
                            Z = Poly([pt.z]) + lin * Poly([b0, b1, b2])
                            H = Y * Y - Z * Z * D - P
                            G, rem = H.divmod(lin)
                            if rem or G.degree != 5:
                                continue
                            ell = _irreducibility_prime(G, is_irreducible_mod)
                            if ell is None:
                                continue
                            return FiberPoint(G.monic(), Y, Z, f"G irreducible modulo {ell}")
    return None


def _rational_sqrt(x: Fraction) -> tuple[Fraction, bool]:
    from .arith import iroot

    if x < 0:
        return Fraction(0), False
    n, en = iroot(x.numerator, 2)
    d, ed = iroot(x.denominator, 2)
    return Fraction(n, d), en and ed


def _irreducibility_prime(G: Poly, test) -> int | None:
    g = G.monic()
    den = math.lcm(*(Fraction(c).denominator for c in g.coeffs))
    ints = [int(Fraction(c) * den) for c in g.coeffs]
    for ell in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if den % ell == 0:
            continue
        inv = pow(den, -1, ell)
        if test([c * inv % ell for c in ints], ell):
            return ell
    return None


__all__ = [
    "AttainableSet",
    "FamilyParams",
    "FiberPoint",
    "LocalSolvability",
    "ObstructionReport",
    "RationalPoint",
    "SurjectivityResult",
    "ZeroCycleAnalysis",
    "attainable_for_D",
    "attainable_invariants",
    "closed_point_fiber_search",
    "height_ordered_rationals",
    "local_solvable",
    "obstruction_verdict",
    "rational_point_search",
    "salberger_bound",
    "solvable_for_D",
    "sumset_contains_zero",
    "symbol_surjective",
    "zero_cycle_analysis",
    "zero_cycle_obstruction",
]

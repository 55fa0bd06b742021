"""Search for parameters (a, b, c) of the counterexample family and end-to-end verification."""
from __future__ import annotations

from dataclasses import dataclass, field

from .arith import eisenstein_primes_over, primes_up_to
from .errors import Indeterminate, NotFound, PreconditionViolated, UnsupportedWildSymbol
from .family import (
    DEFAULT_DEPTH,
    FamilyParams,
    local_solvable,
    obstruction_verdict,
    zero_cycle_analysis,
)
from .fields import check_pair
from .places import (
    K,
    Q,
    coerce,
    is_local_pth_power,
    places_up_to,
    residue_code,
    residue_lift,
    valuation,
)
from .poly import roots_in_field
from .weil import WeilConstants, weil_constants

FAST_PATH_CROSSCHECK = 200  # enumerate even above the Weil threshold up to this q


def congruence_exponent(p: int) -> int:
    """The exponent 2p-1 in a, b = 1 mod (1-zeta)^(2p-1)."""
    return 2 * p - 1


def _size_floor(p: int) -> int:
    w = weil_constants(p)
    return max(w.M_plane, w.M_curve)


def candidate_primes(p: int, fld: str, bound: int) -> list:
    """Prime elements = 1 mod (1-zeta)^(2p-1), positive, residue field larger than the Weil thresholds.

    Over Q these are the rational primes = 1 mod 8 (p = 2); over Q(zeta3) the
    unique associate congruent to 1, for primes of norm up to ``bound``.
    Sorted by residue-field size, then by the element.
    """
    check_pair(fld, p)
    floor = _size_floor(p)
    k = congruence_exponent(p)
    out = []
    if fld == Q:
        for ell in primes_up_to(bound):
            if ell > floor and ell % 2**k == 1:
                out.append(ell)
        return out
    for ell in primes_up_to(bound):
        if ell == 3:
            continue
        pis = eisenstein_primes_over(ell)
        for pi in pis:
            norm = pi.int_norm()
            if norm <= floor or norm > bound:
                continue
            for w in _units():
                cand = pi * w
                if valuation(cand - 1, _lambda_place()) >= k:
                    out.append(cand)
                    break
    out.sort(key=lambda e: (e.int_norm(), e.x, e.y))
    return out


def _units():
    from .arith import EIS_UNITS

    return EIS_UNITS


def _lambda_place():
    from .places import places_over

    return places_over(K, 3)[0]


def _prime_place(x, fld):
    from .places import place_of_prime

    return place_of_prime(fld, x)


def _c_for(a, b, fld):
    """Smallest non-negative (Q) or residue-digit (Q(zeta3)) c with b | ac + 1."""
    vb = _prime_place(b, fld)
    code = residue_code(coerce(-1, fld) / coerce(a, fld), vb)
    return residue_lift(code, vb) if fld == K else code


def find_parameters(p: int, fld: str | None = None, search_bound: int = 2000) -> FamilyParams:
    """First (a, b, c) in the order (|b|, |a|, c) meeting the three conditions and the validity checks."""
    fld = fld or (Q if p == 2 else K)
    check_pair(fld, p)
    cands = candidate_primes(p, fld, search_bound)
    for b in cands:
        vb = _prime_place(b, fld)
        for a in cands:
            if a == b:
                continue
            if is_local_pth_power(a, vb, p):
                continue
            c = _c_for(a, b, fld)
            try:
                params = FamilyParams(p, fld, a, b, c)
            except PreconditionViolated:
                continue
            if not params.invariant_violations():
                return params
    raise NotFound(f"no parameters with prime norms up to {search_bound}")


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------


@dataclass
class ConditionCheck:
    label: str
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"condition": self.label, "ok": self.ok, "detail": self.detail}


def _is_prime_element(x, fld: str) -> bool:
    from .fields import support

    try:
        sup = support(x, fld)
    except Exception:  # noqa: BLE001
        return False
    if fld == Q and x < 0:
        return False
    return len(sup) == 1 and valuation(x, sup[0]) == 1 and _integral(x, fld)


def _integral(x, fld: str) -> bool:
    x = coerce(x, fld)
    return x.denominator == 1 if fld == Q else x.is_integral


def _congruent_one(x, p: int, fld: str) -> bool:
    k = congruence_exponent(p)
    x = coerce(x, fld)
    if x == 1:
        return True
    if fld == Q:
        return (x - 1).denominator == 1 and (x - 1).numerator % 2**k == 0
    return valuation(x - 1, _lambda_place()) >= k


def _large(x, p: int, fld: str) -> bool:
    from .fields import support

    return support(x, fld)[0].q > _size_floor(p)


def condition_1(params: FamilyParams) -> ConditionCheck:
    """b prime, = 1 mod (1-zeta)^(2p-1), positive, residue field above the Weil thresholds."""
    p, fld, b = params.p, params.fld, params.b
    fails = []
    if not _is_prime_element(b, fld):
        fails.append("b is not a prime element")
    else:
        if not _large(b, p, fld):
            fails.append("residue field of b too small")
    if not _congruent_one(b, p, fld):
        fails.append(f"b != 1 mod (1-zeta)^{congruence_exponent(p)}")
    return ConditionCheck("(1)", not fails, "; ".join(fails) or f"b = {b}")


def condition_2(params: FamilyParams) -> ConditionCheck:
    """a prime distinct from b, = 1 mod (1-zeta)^(2p-1), not a p-th power at b, large."""
    p, fld, a, b = params.p, params.fld, params.a, params.b
    fails = []
    if not _is_prime_element(a, fld):
        fails.append("a is not a prime element")
    else:
        if not _large(a, p, fld):
            fails.append("residue field of a too small")
        if _is_prime_element(b, fld) and _prime_place(a, fld) == _prime_place(b, fld):
            fails.append("a and b generate the same prime")
    if not _congruent_one(a, p, fld):
        fails.append(f"a != 1 mod (1-zeta)^{congruence_exponent(p)}")
    if _is_prime_element(b, fld):
        vb = _prime_place(b, fld)
        if valuation(a, vb) == 0 and is_local_pth_power(a, vb, p):
            fails.append("a is a p-th power at b")
    return ConditionCheck("(2)", not fails, "; ".join(fails) or f"a = {a}")


def condition_3(params: FamilyParams) -> ConditionCheck:
    """c integral and b | ac + 1."""
    from .family import _divides

    fails = []
    if not _integral(params.c, params.fld):
        fails.append("c is not integral")
    if not _divides(params.b, params.a * params.c + 1, params.fld):
        fails.append("b does not divide ac+1")
    return ConditionCheck("(3)", not fails, "; ".join(fails) or f"c = {params.c}")


def check_conditions(params: FamilyParams) -> list[ConditionCheck]:
    return [condition_1(params), condition_2(params), condition_3(params)]


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class CounterexampleReport:
    params: FamilyParams
    weil: WeilConstants
    conditions: list[ConditionCheck]
    invariant_violations: list[str]
    roots_in_ground_field: dict
    local: list[dict] = field(default_factory=list)
    local_ok: bool = False
    zero_cycle: dict = field(default_factory=dict)
    zero_cycle_ok: bool = False
    obstruction: dict = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            all(c.ok for c in self.conditions)
            and not self.invariant_violations
            and self.local_ok
            and self.zero_cycle_ok
        )

    def to_json(self) -> dict:
        w = self.weil
        return {
            "params": self.params.to_json(),
            "weil": {"M_plane": w.M_plane, "M_curve": w.M_curve, "genus_plane": w.genus_plane, "genus_curve": w.genus_curve},
            "conditions": [c.to_json() for c in self.conditions],
            "invariant_violations": self.invariant_violations,
            "roots_in_ground_field": self.roots_in_ground_field,
            "S": [v.label for v in self.params.S],
            "i_local_points": {"ok": self.local_ok, "places": self.local},
            "ii_zero_cycles": {"ok": self.zero_cycle_ok, **self.zero_cycle},
            "iii_no_point_on_symmetric_power": {
                "ok": self.zero_cycle_ok,
                "reason": "a k-point of the (2p+1)-th symmetric power is an effective zero-cycle of degree 2p+1, excluded by (ii)",
            },
            "obstruction": self.obstruction,
            "errors": self.errors,
            "ok": self.ok,
        }


def verify_counterexample(params: FamilyParams, depth: int = DEFAULT_DEPTH) -> CounterexampleReport:
    """Check the three conditions, local points everywhere and the zero-cycle obstruction for u = 1."""
    p, fld = params.p, params.fld
    w = weil_constants(p)
    report = CounterexampleReport(
        params,
        w,
        check_conditions(params),
        params.invariant_violations(),
        {
            "Q": [str(r) for r in roots_in_field(params.q_poly, fld)],
            "R": [str(r) for r in roots_in_field(params.r_poly, fld)],
        },
    )
    local_ok = True
    checked = set()
    try:
        for v in params.S:
            res = local_solvable(params, 1, v, depth)
            report.local.append({"place": v.label, "solvable": res.solvable, "method": res.method, "witness": res.witness, "in_S": True})
            local_ok &= res.solvable
            checked.add(v)
        enum_bound = max(w.M_curve, FAST_PATH_CROSSCHECK)
        for v in places_up_to(fld, enum_bound):
            if v in checked:
                continue
            res = local_solvable(params, 1, v, depth)
            entry = {"place": v.label, "solvable": res.solvable, "method": res.method, "witness": res.witness, "in_S": False}
            if v.q >= w.M_curve:
                entry["weil_fast_path_agrees"] = res.solvable
            report.local.append(entry)
            local_ok &= res.solvable
        report.local.append({
            "place": f"q > {enum_bound}",
            "solvable": True,
            "method": "weil-bound",
            "witness": f"smooth plane curve of degree p has at least 2p+1 points once q >= {w.M_plane}",
            "in_S": False,
        })
    except (Indeterminate, UnsupportedWildSymbol) as exc:
        report.errors.append(f"local solvability: {exc}")
        local_ok = False
    report.local_ok = local_ok
    try:
        obs = obstruction_verdict(params, 1, depth)
        report.obstruction = obs.to_json()
        zc = zero_cycle_analysis(params, 1, obs, depth=depth)
        report.zero_cycle = zc.to_json()
        report.zero_cycle_ok = zc.obstructed
    except (Indeterminate, UnsupportedWildSymbol) as exc:
        report.errors.append(f"zero-cycle obstruction: {exc}")
    return report


__all__ = [
    "ConditionCheck",
    "CounterexampleReport",
    "WeilConstants",
    "candidate_primes",
    "check_conditions",
    "condition_1",
    "condition_2",
    "condition_3",
    "find_parameters",
    "verify_counterexample",
    "weil_constants",
]

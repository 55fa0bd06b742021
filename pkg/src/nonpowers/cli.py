"""Command-line interface and the classification demonstrator.

Every subcommand reads and writes JSON.  Exit codes: 0 success, 1 a
consistency failure, 2 some computation could not be certified.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .arith import factor_int, is_prime
from .constructor import find_parameters, verify_counterexample
from .errors import Indeterminate, NonpowersError, NotFound, UnsupportedWildSymbol
from .family import (
    DEFAULT_DEPTH,
    FamilyParams,
    closed_point_fiber_search,
    height_ordered_rationals,
    obstruction_verdict,
    rational_point_search,
    salberger_bound,
)
from .fields import DEFAULT_P, is_global_pth_power, parse_element
from .globalclass import enumerate_exceptional_set, kernel_of_div, surjectivity_table
from .places import K, Q, Place, archimedean_places, coerce, is_local_pth_power, parse_place, places_over
from .symbols import local_symbol

log = logging.getLogger("nonpowers")

EXIT_OK, EXIT_MISMATCH, EXIT_INDETERMINATE = 0, 1, 2

TAGS = ("PthPower", "InNv", "UnobstructedLocallySolvable", "ExceptionalNonPower")


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass
class Classification:
    u: object
    tag: str
    place: Place | None = None
    evidence: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"InNv({self.place.label})" if self.tag == "InNv" else self.tag

    def to_json(self) -> dict:
        return {"u": str(self.u), "tag": self.label, "evidence": self.evidence}


def classify(params: FamilyParams, u, depth: int = DEFAULT_DEPTH) -> Classification:
    """Sort u into the pieces of the diophantine description of the non-p-th powers.

    Order: u outside the local p-th powers at some v in S; otherwise the
    twisted family has no Brauer obstruction; otherwise u lies in the finite
    exceptional set and is a p-th power exactly when its class is trivial.
    """
    p, fld = params.p, params.fld
    u = coerce(u, fld)
    if u == 0:
        raise NonpowersError("u must be nonzero")
    for v in params.S:
        if not is_local_pth_power(u, v, p):
            return Classification(u, "InNv", v, {"place": v.label})
    report = obstruction_verdict(params, u, depth)
    if report.verdict == "Unobstructed":
        return Classification(u, "UnobstructedLocallySolvable", None, {"verdict": report.verdict})
    if report.verdict != "Obstructed":
        raise Indeterminate(f"obstruction verdict for u = {u} is {report.verdict}")
    tag = "PthPower" if is_global_pth_power(u, fld, p) else "ExceptionalNonPower"
    return Classification(u, tag, None, {"verdict": report.verdict})


def reduce_exponent(r: int) -> list[int]:
    """Prime factors of r with multiplicity: r-th powers reduce to prime exponents."""
    if r < 2:
        raise ValueError("r must be at least 2")
    out = []
    for q, e in factor_int(r).items():
        out.extend([q] * e)
    return out


# ---------------------------------------------------------------------------
# demonstrator
# ---------------------------------------------------------------------------


def minimal_S(params: FamilyParams) -> list[Place]:
    out = set(archimedean_places(params.fld)) | set(places_over(params.fld, params.p))
    out.add(params.place_a)
    out.add(params.place_b)
    return sorted(out)


def sample_elements(fld: str, height: int) -> list:
    """Nonzero rationals of height <= H, or Eisenstein integers of norm <= H ordered by norm."""
    if fld == Q:
        return [x for x in height_ordered_rationals(height) if x != 0]
    from .arith import Eis

    out = []
    r = int(height**0.5) + 2
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            e = Eis(x, y)
            if e != 0 and e.int_norm() <= height:
                out.append(e)
    out.sort(key=lambda e: (e.int_norm(), e.x, e.y))
    return out


def probe_primes(params: FamilyParams, count: int, limit: int = 10**6) -> list:
    """Rational primes outside S that are local p-th powers at every place of S (p = 2 over Q)."""
    out = []
    S = set(params.S)
    ell = 2
    while len(out) < count and ell < limit:
        ell += 1
        if not is_prime(ell) or places_over(Q, ell)[0] in S:
            continue
        if all(is_local_pth_power(ell, v, params.p) for v in S):
            out.append(Fraction(ell))
    return out


def run_demo(
    params: FamilyParams,
    height: int = 12,
    confirm_points: int = 3,
    point_height: int = 200,
    confirm_sym: int = 0,
    probes: int = 3,
    depth: int = DEFAULT_DEPTH,
) -> dict:
    """Classify a deterministic sample of u and cross-check against the direct p-th power test."""
    fld, p = params.fld, params.p
    sample = list(sample_elements(fld, height))
    sample += [c.rep for c in kernel_of_div(minimal_S(params), p, fld)]
    if fld == Q and p == 2:
        sample += probe_primes(params, probes)
    seen, rows = set(), []
    matrix: dict[str, dict[str, int]] = {}
    mismatches, indeterminate = [], []
    uls = []
    for u in sample:
        u = coerce(u, fld)
        if u in seen:
            continue
        seen.add(u)
        power = is_global_pth_power(u, fld, p)
        try:
            cl = classify(params, u, depth)
        except (Indeterminate, UnsupportedWildSymbol) as exc:
            indeterminate.append({"u": str(u), "reason": str(exc)})
            continue
        row = matrix.setdefault(cl.tag, {"power": 0, "nonpower": 0})
        row["power" if power else "nonpower"] += 1
        if (cl.tag == "PthPower") != power:
            mismatches.append({"u": str(u), "tag": cl.label, "is_power": power})
        if cl.tag == "UnobstructedLocallySolvable":
            uls.append(u)
        rows.append({**cl.to_json(), "is_power": power})
    points = []
    if fld == Q and p == 2:
        for u in uls[:confirm_points]:
            pt = rational_point_search(params, u, point_height)
            points.append({"u": str(u), "point": pt.to_json() if pt else None})
    sym = []
    if fld == Q and p == 2:
        for u in uls[:confirm_sym]:
            fp = closed_point_fiber_search(params, u, height_bound=point_height)
            sym.append({"u": str(u), "closed_point": fp.to_json() if fp else None})
    return {
        "params": params.to_json(),
        "height": height,
        "sampled": len(seen),
        "consistency_matrix": matrix,
        "mismatches": mismatches,
        "indeterminate": indeterminate,
        "unobstructed_samples": [str(u) for u in uls],
        "point_confirmations": points,
        "points_found": sum(1 for x in points if x["point"] is not None),
        "closed_point_confirmations": sym,
        "rows": rows,
    }


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _load_params(path: str) -> FamilyParams:
    return FamilyParams.from_json(Path(path).read_text())


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _field_for(p: int, fld: str | None) -> str:
    if fld:
        return fld
    for name, q in DEFAULT_P.items():
        if q == p:
            return name
    raise NonpowersError(f"no default field for p = {p}")


def cmd_construct(args) -> int:
    fld = _field_for(args.p, args.field)
    params = find_parameters(args.p, fld, args.bound)
    _emit(params.to_json(), args.out)
    if args.out:
        _emit({"written": args.out, **params.to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_counterexample(_load_params(args.params), args.depth)
    data = report.to_json()
    _emit(data, args.report)
    if args.report:
        _emit({"ok": data["ok"], "report": args.report})
    if report.errors:
        return EXIT_INDETERMINATE
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_classify(args) -> int:
    params = _load_params(args.params)
    u = parse_element(args.u, params.fld)
    try:
        cl = classify(params, u, args.depth)
    except (Indeterminate, UnsupportedWildSymbol) as exc:
        _emit({"u": str(u), "tag": None, "refused": str(exc)})
        return EXIT_INDETERMINATE
    power = is_global_pth_power(u, params.fld, params.p)
    _emit({**cl.to_json(), "is_power": power})
    return EXIT_OK if (cl.tag == "PthPower") == power else EXIT_MISMATCH


def cmd_finitude(args) -> int:
    params = _load_params(args.params)
    S = minimal_S(params) if args.minimal else None
    ex = enumerate_exceptional_set(params, args.depth, S)
    data = ex.to_json()
    data["contains_trivial"] = "1" in ex.labels()
    _emit(data, args.out)
    return EXIT_INDETERMINATE if ex.indeterminate and not args.allow_indeterminate else EXIT_OK


def cmd_surjectivity(args) -> int:
    params = _load_params(args.params)
    table = surjectivity_table(params, args.vmax, args.vmin)
    rows = [{"place": r.place.label, "q": r.q, "surjective": r.surjective, "witnesses": r.witnesses} for r in table]
    ok = all(r.surjective for r in table)
    _emit({"vmin": args.vmin, "vmax": args.vmax, "all_surjective": ok, "places": rows})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_symbol(args) -> int:
    fld = _field_for(args.p, args.field)
    v = parse_place(fld, args.place)
    a, b = parse_element(args.a, fld), parse_element(args.b, fld)
    try:
        inv = local_symbol(a, b, v, args.p)
    except UnsupportedWildSymbol as exc:
        _emit({"place": v.label, "inv": None, "p": args.p, "error": str(exc)})
        return EXIT_INDETERMINATE
    _emit({"place": v.label, "inv": inv, "p": args.p})
    return EXIT_OK


def cmd_salberger(args) -> int:
    _emit({"p": args.p, "s": args.s, "N": salberger_bound(args.p, args.s)})
    return EXIT_OK


def cmd_reduce(args) -> int:
    stages = reduce_exponent(args.r)
    _emit({"r": args.r, "stages": stages, "unsupported": [q for q in stages if q not in (2, 3)]})
    return EXIT_OK


def cmd_demo(args) -> int:
    params = _load_params(args.params)
    summary = run_demo(
        params, args.height, args.confirm_points, args.point_height, args.confirm_sym, args.probes, args.depth
    )
    _emit(summary, args.out)
    if args.out:
        _emit({k: summary[k] for k in ("sampled", "consistency_matrix", "mismatches", "points_found")})
    if summary["mismatches"]:
        return EXIT_MISMATCH
    if summary["indeterminate"]:
        return EXIT_INDETERMINATE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nonpowers", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("construct", help="search for parameters (a, b, c)")
    s.add_argument("--p", type=int, required=True, choices=(2, 3))
    s.add_argument("--field", choices=(Q, K))
    s.add_argument("--bound", type=int, default=2000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="verify local solvability and the zero-cycle obstruction")
    s.add_argument("--params", required=True)
    s.add_argument("--report")
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", help="classify one element u")
    s.add_argument("--u", required=True)
    s.add_argument("--params", required=True)
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("finitude", help="obstruction verdicts on the kernel of div")
    s.add_argument("--params", required=True)
    s.add_argument("--minimal", action="store_true", help="use S = archimedean, over p, v_a, v_b")
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.add_argument("--allow-indeterminate", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_finitude)

    s = sub.add_parser("surjectivity", help="residue symbol surjectivity at good places")
    s.add_argument("--params", required=True)
    s.add_argument("--vmax", type=int, default=500)
    s.add_argument("--vmin", type=int)
    s.set_defaults(func=cmd_surjectivity)

    s = sub.add_parser("symbol", help="local invariant of (a, b) at a place")
    s.add_argument("--p", type=int, required=True, choices=(2, 3))
    s.add_argument("--field", choices=(Q, K))
    s.add_argument("--place", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_symbol)

    s = sub.add_parser("salberger", help="degree bound N for zero-cycles")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.set_defaults(func=cmd_salberger)

    s = sub.add_parser("reduce", help="prime stages of an exponent r")
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("demo", help="classification demonstrator")
    s.add_argument("--params", required=True)
    s.add_argument("--height", type=int, default=12)
    s.add_argument("--confirm-points", type=int, default=3)
    s.add_argument("--point-height", type=int, default=200)
    s.add_argument("--confirm-sym", type=int, default=0)
    s.add_argument("--probes", type=int, default=3)
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.add_argument("--out")
    s.set_defaults(func=cmd_demo)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except NotFound as exc:
        _emit({"error": "not found", "detail": str(exc)})
        return EXIT_INDETERMINATE
    except NonpowersError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_INDETERMINATE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

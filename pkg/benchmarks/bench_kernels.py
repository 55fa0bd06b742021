"""Compare the numba and numpy residue-field kernels.

Both backends run in one process: the NONPOWERS_DISABLE_NUMBA flag is read at
call time.  Outputs are checked for equality before timings are reported.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""
from __future__ import annotations

import argparse
import json
import os
import time

import numpy as np

from nonpowers import _kernels
from nonpowers._kernels import GF, hit_witnesses, irreducible_modulus

# (ell, degree, p): prime fields and the extension fields used by the zero-cycle checks
CASES = [(1009, 1, 2), (100003, 1, 2), (1000003, 1, 2), (101, 3, 2), (1117, 1, 3), (103, 3, 3), (307, 2, 3)]


def _zeta(field: GF, p: int) -> int:
    return field.pow(field.gen, (field.q - 1) // p)


def run_case(ell: int, n: int, p: int) -> tuple[dict, float, float]:
    """Outputs, table-build time (includes the pure-Python generator search), pass time."""
    start = time.perf_counter()
    field = GF(ell, irreducible_modulus(ell, n))
    built = time.perf_counter()
    zeta = _zeta(field, p)
    # Q = x^p + 35 and R = 89 x^p + 3116, reduced into the prime subfield
    q_codes = [35 % ell] + [0] * (p - 1) + [1]
    r_codes = [3116 % ell] + [0] * (p - 1) + [89 % ell]
    vq, vr = field.poly_values(q_codes), field.poly_values(r_codes)
    cq, cr = field.characters(vq, p, zeta), field.characters(vr, p, zeta)
    hits = hit_witnesses(cq, cr, p, 1)
    done = time.perf_counter()
    return {"exp": field.exp, "vq": vq, "vr": vr, "cq": cq, "cr": cr, "hits": hits}, built - start, done - built


def timed(backend: str, case, repeat: int) -> tuple[dict, float, float]:
    if backend == "numpy":
        os.environ["NONPOWERS_DISABLE_NUMBA"] = "1"
    else:
        os.environ.pop("NONPOWERS_DISABLE_NUMBA", None)
    assert _kernels.numba_enabled() == (backend == "numba")
    out, build, passes = None, float("inf"), float("inf")
    for _ in range(repeat):
        out, tb, tp = run_case(*case)
        build, passes = min(build, tb), min(passes, tp)
    return out, build, passes


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args()
    if not _kernels._HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    # compile once outside the timings
    timed("numba", (13, 1, 2), 1)
    rows = []
    print(f"{'field':>12} {'p':>2} {'build nb':>9} {'build np':>9} {'pass nb':>9} {'pass np':>9} {'speedup':>8}  equal")
    for case in CASES:
        ell, n, p = case
        a, ba, pa = timed("numba", case, args.repeat)
        b, bb, pb = timed("numpy", case, args.repeat)
        equal = all(np.array_equal(a[k], b[k]) for k in a)
        label = f"F_{ell}^{n}" if n > 1 else f"F_{ell}"
        rows.append({
            "field": label, "q": ell**n, "p": p, "build_numba_s": ba, "build_numpy_s": bb,
            "pass_numba_s": pa, "pass_numpy_s": pb, "equal": equal,
        })
        print(f"{label:>12} {p:>2} {ba:9.4f} {bb:9.4f} {pa:9.4f} {pb:9.4f} {pb / pa:8.1f}  {equal}")
    os.environ.pop("NONPOWERS_DISABLE_NUMBA", None)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    if not all(r["equal"] for r in rows):
        raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()

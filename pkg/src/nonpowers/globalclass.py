"""S-unit classes modulo p-th powers, the exceptional set, and residue-symbol surjectivity."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .arith import ZETA
from .errors import Indeterminate, PreconditionViolated, UnsupportedWildSymbol
from .family import (
    DEFAULT_DEPTH,
    FamilyParams,
    ObstructionReport,
    SurjectivityResult,
    obstruction_verdict,
    symbol_surjective,
)
from .fields import check_pair, is_global_pth_power, support
from .places import Q, Place, archimedean_places, coerce, places_over, places_up_to, valuation
from .weil import weil_constants


@dataclass(frozen=True)
class PowerClass:
    """A class in k^*/k^{*p}: a representative and its exponents over ``generators``."""

    rep: object
    exponents: tuple[int, ...]
    generators: tuple

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def label(self) -> str:
        if self.is_trivial:
            return "1"
        parts = []
        for g, e in zip(self.generators, self.exponents):
            if e:
                parts.append(f"({g})" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    def to_json(self) -> dict:
        return {
            "rep": str(self.rep),
            "exponents": list(self.exponents),
            "generators": [str(g) for g in self.generators],
            "label": self.label(),
        }


def kernel_generators(S: Iterable[Place], p: int, fld: str) -> tuple:
    """Generators of the S-units modulo p-th powers.

    Over Q: -1 (p = 2 only) and the primes in S.  Over Q(zeta3): zeta, whose
    class survives modulo cubes, and a prime element for each finite place of S.
    Both rings have class number 1, so the S-units are generated this way.
    """
    check_pair(fld, p)
    S = sorted(set(S))
    for v in archimedean_places(fld) + list(places_over(fld, p)):
        if v not in S:
            raise PreconditionViolated(f"S must contain {v.label}")
    gens: list = []
    if fld == Q:
        if p == 2:
            gens.append(coerce(-1, Q))
    else:
        gens.append(ZETA)
    for v in S:
        if v.is_finite:
            gens.append(coerce(v.pi, fld))
    return tuple(gens)


def kernel_of_div(S: Iterable[Place], p: int, fld: str) -> list[PowerClass]:
    """All classes of k^*/k^{*p} with valuation divisible by p outside S, trivial class first."""
    gens = kernel_generators(S, p, fld)
    out = []
    for exps in product(range(p), repeat=len(gens)):
        rep = coerce(1, fld)
        for g, e in zip(gens, exps):
            if e:
                rep = rep * g**e
        out.append(PowerClass(rep, tuple(exps), gens))
    return out


def class_exponents(u, S: Iterable[Place], p: int, fld: str) -> tuple[int, ...]:
    """Exponent vector of an S-unit class (u must have valuation = 0 mod p outside S)."""
    kernel_generators(S, p, fld)  # validates S
    u = coerce(u, fld)
    for v in support(u, fld):
        if v not in S and valuation(u, v) % p:
            raise PreconditionViolated(f"u has valuation prime to p at {v.label} outside S")
    for cls in kernel_of_div(S, p, fld):
        if is_global_pth_power(u / cls.rep, fld, p):
            return cls.exponents
    raise AssertionError("no class matched")


@dataclass
class ExceptionalSet:
    """Classes of the kernel whose twist has local points everywhere but no Brauer-orthogonal adelic point."""

    S: tuple[Place, ...]
    obstructed: list[tuple[PowerClass, ObstructionReport]]
    indeterminate: list[tuple[PowerClass, str]]
    verdicts: dict = field(default_factory=dict)
    depth: int = DEFAULT_DEPTH

    def labels(self) -> list[str]:
        return [c.label() for c, _ in self.obstructed]

    def to_json(self) -> dict:
        return {
            "S": [v.label for v in self.S],
            "depth": self.depth,
            "classes": len(self.verdicts),
            "verdict_counts": _counts(self.verdicts.values()),
            "exceptional": [
                {**c.to_json(), "verdict": r.verdict, "places": [s.to_json() for s in r.sets]} for c, r in self.obstructed
            ],
            "indeterminate": [{**c.to_json(), "reason": why} for c, why in self.indeterminate],
            "all": self.verdicts,
        }


def _counts(values) -> dict:
    out: dict[str, int] = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return dict(sorted(out.items()))


def enumerate_exceptional_set(
    params: FamilyParams, depth: int = DEFAULT_DEPTH, S: Iterable[Place] | None = None
) -> ExceptionalSet:
    """Run the obstruction verdict on every class of the kernel of div for S (default: params.S)."""
    S = tuple(sorted(set(S))) if S is not None else params.S
    obstructed, indeterminate, verdicts = [], [], {}
    for cls in kernel_of_div(S, params.p, params.fld):
        try:
            rep = obstruction_verdict(params, cls.rep, depth)
        except (UnsupportedWildSymbol, Indeterminate) as exc:
            indeterminate.append((cls, str(exc)))
            verdicts[cls.label()] = "Indeterminate"
            continue
        verdicts[cls.label()] = rep.verdict
        if rep.verdict == "Obstructed":
            obstructed.append((cls, rep))
        elif rep.verdict == "Indeterminate":
            indeterminate.append((cls, "incomplete scan"))
    return ExceptionalSet(S, obstructed, indeterminate, verdicts, depth)


def verify_symbol_surjectivity(params: FamilyParams, v: Place) -> bool:
    """Whether chi(Q(x)) takes every value in Z/p on the F_v-points of z^p = Q(x)R(x) != 0."""
    return surjectivity_at(params, v).surjective


def surjectivity_at(params: FamilyParams, v: Place) -> SurjectivityResult:
    if not v.is_finite:
        raise PreconditionViolated("surjectivity is a statement about finite places")
    if v in params.base_places:
        raise PreconditionViolated(f"{v.label} is a bad place of the family")
    return symbol_surjective(params, v)


def surjectivity_table(params: FamilyParams, vmax: int = 500, vmin: int | None = None) -> list[SurjectivityResult]:
    """Surjectivity at every good place with vmin <= q <= vmax (vmin defaults to M_curve)."""
    if vmin is None:
        vmin = weil_constants(params.p).M_curve
    bad = set(params.base_places)
    return [symbol_surjective(params, v) for v in places_up_to(params.fld, vmax, vmin) if v not in bad]


__all__ = [
    "ExceptionalSet",
    "PowerClass",
    "class_exponents",
    "enumerate_exceptional_set",
    "kernel_generators",
    "kernel_of_div",
    "surjectivity_at",
    "surjectivity_table",
    "verify_symbol_surjectivity",
]

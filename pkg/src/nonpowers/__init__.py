"""Exact arithmetic for the diophantine description of the non-p-th powers (p = 2 over Q, p = 3 over Q(zeta3))."""
from __future__ import annotations

from .arith import Eis, factor_eisenstein, factor_int
from .constructor import find_parameters, verify_counterexample
from .errors import (
    DegenerateInput,
    Indeterminate,
    NonpowersError,
    NotFound,
    PreconditionViolated,
    Unsupported,
    UnsupportedWildSymbol,
    WrongPlaceKind,
)
from .family import (
    FamilyParams,
    attainable_invariants,
    closed_point_fiber_search,
    local_solvable,
    obstruction_verdict,
    rational_point_search,
    salberger_bound,
    zero_cycle_obstruction,
)
from .fields import is_global_pth_power
from .globalclass import enumerate_exceptional_set, kernel_of_div, verify_symbol_surjectivity
from .places import Place, hensel_root, is_local_pth_power, places_over, valuation
from .symbols import CyclicAlgebraClass, global_sum, hilbert_symbol, inv_cyclic, residues_on_line, tame_symbol
from .weil import weil_constants

__version__ = "0.1.0"

__all__ = [
    "CyclicAlgebraClass",
    "DegenerateInput",
    "Eis",
    "FamilyParams",
    "Indeterminate",
    "NonpowersError",
    "NotFound",
    "Place",
    "PreconditionViolated",
    "Unsupported",
    "UnsupportedWildSymbol",
    "WrongPlaceKind",
    "attainable_invariants",
    "closed_point_fiber_search",
    "enumerate_exceptional_set",
    "factor_eisenstein",
    "factor_int",
    "find_parameters",
    "global_sum",
    "hensel_root",
    "hilbert_symbol",
    "inv_cyclic",
    "is_global_pth_power",
    "is_local_pth_power",
    "kernel_of_div",
    "local_solvable",
    "obstruction_verdict",
    "places_over",
    "rational_point_search",
    "residues_on_line",
    "salberger_bound",
    "tame_symbol",
    "valuation",
    "verify_counterexample",
    "verify_symbol_surjectivity",
    "weil_constants",
    "zero_cycle_obstruction",
]

"""Structural (topology-level) availability evaluation."""

from ._backend import backend_name, batch_is_operational
from .cutsets import minimal_cut_sets
from .exact import (
    BRUTE_FORCE_LIMIT,
    anchor_distribution,
    clear_cache,
    evaluate_bruteforce,
    evaluate_exact,
)
from .montecarlo import BATCH, Z95, Z99, EstimateWithCI, evaluate_monte_carlo
from .predicate import (
    MODES,
    CompiledProblem,
    EvaluationError,
    check_availability_map,
    check_mode,
    check_status,
    compile_problem,
    is_operational,
)

__all__ = [
    "BATCH",
    "BRUTE_FORCE_LIMIT",
    "MODES",
    "Z95",
    "Z99",
    "CompiledProblem",
    "EstimateWithCI",
    "EvaluationError",
    "anchor_distribution",
    "backend_name",
    "batch_is_operational",
    "check_availability_map",
    "check_mode",
    "check_status",
    "clear_cache",
    "compile_problem",
    "evaluate_bruteforce",
    "evaluate_exact",
    "evaluate_monte_carlo",
    "is_operational",
    "minimal_cut_sets",
]

"""Steady-state availability analysis of an SDN-enabled backbone network.

Two-level model: continuous-time Markov chains give per-element steady-state
availabilities (`dynamics`), an independence-based structural model combines
them through a connectivity-plus-control-reachability predicate
(`structure`), and experiment drivers sweep the study's configuration space
(`scenarios`, `topology`, `cli`).
"""

from . import dynamics, scenarios, structure, topology
from .dynamics import (
    AlphaFactors,
    ElementParams,
    ModelError,
    NumericalError,
    ParameterError,
    ParameterSet,
    element_availability,
    load_params,
    parse_params,
    steady_state,
)
from .scenarios import (
    EXACT,
    LocationSpec,
    Method,
    ScenarioError,
    SweepRow,
    SweepSpec,
    alpha_sweep,
    build_availability_map,
    emit_csv,
    location_study,
    monte_carlo,
    run_all_cases,
    run_case,
    traditional_baseline,
)
from .structure import (
    EstimateWithCI,
    EvaluationError,
    backend_name,
    evaluate_bruteforce,
    evaluate_exact,
    evaluate_monte_carlo,
    is_operational,
    minimal_cut_sets,
)
from .topology import (
    Link,
    Node,
    Topology,
    TopologyError,
    apply_case,
    case_topology,
    parse_topology,
    reference_backbone,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaFactors",
    "ElementParams",
    "EstimateWithCI",
    "EvaluationError",
    "EXACT",
    "Link",
    "LocationSpec",
    "Method",
    "ModelError",
    "Node",
    "NumericalError",
    "ParameterError",
    "ParameterSet",
    "ScenarioError",
    "SweepRow",
    "SweepSpec",
    "Topology",
    "TopologyError",
    "alpha_sweep",
    "apply_case",
    "backend_name",
    "build_availability_map",
    "case_topology",
    "dynamics",
    "element_availability",
    "emit_csv",
    "evaluate_bruteforce",
    "evaluate_exact",
    "evaluate_monte_carlo",
    "is_operational",
    "load_params",
    "location_study",
    "minimal_cut_sets",
    "monte_carlo",
    "parse_params",
    "parse_topology",
    "reference_backbone",
    "run_all_cases",
    "run_case",
    "scenarios",
    "steady_state",
    "structure",
    "topology",
    "traditional_baseline",
    "validate",
]

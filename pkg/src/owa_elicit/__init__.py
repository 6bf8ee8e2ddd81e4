"""Elicit risk-averse OWA preference weights from observed solution choices."""

from .altpref import AltElicitationResult, elicit_altpref
from .compact import PolyhedralEncoding, elicit_compact, encode_polyhedron
from .core import (
    Assignment,
    DimensionMismatchError,
    FeasibleSet,
    MinKnapsack,
    Observation,
    Selection,
    SortedObjectives,
    check_weights,
    enumerate_solutions,
    hamming,
    is_feasible,
    min_max_normalize,
    orness,
    owa_value,
    project_weights,
    sort_objectives,
    vector_distance,
)
from .estimators import AhnElicitor, AltPrefElicitor, CompactElicitor, PrefElicitor
from .experiments import (
    ExperimentConfig,
    evaluate,
    explain_ratio,
    generate_costs,
    load_instance,
    perturb_weights,
    run_experiment,
    save_instance,
    simulate_observations,
)
from .mp import MathProgram, SolveOutcome, solve_program
from .owa import OwaSolveReport, enumerate_owa, explains, solve_owa, weights_from_orness
from .pairwise import Comparison, elicit_ahn, generate_pairs, judge_pairs
from .pref import (
    ElicitOptions,
    ElicitationResult,
    compute_infeas,
    distance_to_explaining_set,
    elicit_pref,
)

__all__ = [
    "AhnElicitor",
    "AltElicitationResult",
    "AltPrefElicitor",
    "Assignment",
    "Comparison",
    "CompactElicitor",
    "DimensionMismatchError",
    "ElicitOptions",
    "ElicitationResult",
    "ExperimentConfig",
    "FeasibleSet",
    "MathProgram",
    "MinKnapsack",
    "Observation",
    "OwaSolveReport",
    "PolyhedralEncoding",
    "PrefElicitor",
    "Selection",
    "SolveOutcome",
    "SortedObjectives",
    "check_weights",
    "compute_infeas",
    "distance_to_explaining_set",
    "elicit_ahn",
    "elicit_altpref",
    "elicit_compact",
    "elicit_pref",
    "encode_polyhedron",
    "enumerate_owa",
    "enumerate_solutions",
    "evaluate",
    "explain_ratio",
    "explains",
    "generate_costs",
    "generate_pairs",
    "hamming",
    "is_feasible",
    "judge_pairs",
    "load_instance",
    "min_max_normalize",
    "orness",
    "owa_value",
    "perturb_weights",
    "project_weights",
    "run_experiment",
    "save_instance",
    "simulate_observations",
    "solve_owa",
    "solve_program",
    "sort_objectives",
    "vector_distance",
    "weights_from_orness",
]

__version__ = "0.1.0"

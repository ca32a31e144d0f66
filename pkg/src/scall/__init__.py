"""scall: software component allocation for heterogeneous computing platforms."""

from .ahp import (
    CR_THRESHOLD,
    ConvergenceError,
    InconsistentComparisonError,
    TradeoffVector,
    consistency_ratio,
    derive_tradeoff,
    principal_eigen,
)
from .benchgen import BenchSpec, GapStats, generate_model, run_benchmark
from .evaluator import EvaluationResult, comm_traffic, evaluate, resource_load
from .model import (
    ArchitectureModel,
    ModelParseError,
    ModelValidationError,
    ValidationIssue,
    load_model,
    save_model,
    validate_model,
)
from .search import (
    GAConfig,
    NoFeasibleAllocationError,
    SearchReport,
    SpaceTooLargeError,
    alternatives,
    derived_seed,
    exhaustive_search,
    ga_search,
    space_size,
)

__version__ = "0.1.0"

__all__ = [
    "ArchitectureModel",
    "BenchSpec",
    "CR_THRESHOLD",
    "ConvergenceError",
    "EvaluationResult",
    "GAConfig",
    "GapStats",
    "InconsistentComparisonError",
    "ModelParseError",
    "ModelValidationError",
    "NoFeasibleAllocationError",
    "SearchReport",
    "SpaceTooLargeError",
    "TradeoffVector",
    "ValidationIssue",
    "alternatives",
    "comm_traffic",
    "consistency_ratio",
    "derive_tradeoff",
    "derived_seed",
    "evaluate",
    "exhaustive_search",
    "ga_search",
    "generate_model",
    "load_model",
    "principal_eigen",
    "resource_load",
    "run_benchmark",
    "save_model",
    "space_size",
    "validate_model",
    "__version__",
]

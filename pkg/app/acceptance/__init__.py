from .executor import CriterionExecutor, CriterionOutcome
from .registry import CriterionRegistry, get_registry
from .suite import AcceptanceContext, AcceptanceReport, run_acceptance

__all__ = [
    "AcceptanceContext",
    "AcceptanceReport",
    "CriterionExecutor",
    "CriterionOutcome",
    "CriterionRegistry",
    "get_registry",
    "run_acceptance",
]

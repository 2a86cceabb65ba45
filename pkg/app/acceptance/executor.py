from dataclasses import dataclass, field
from typing import Any, Dict, Optional
import logging

from app.acceptance.registry import CriterionRegistry, get_registry

logger = logging.getLogger(__name__)


@dataclass
class CriterionOutcome:
    name: str
    description: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "details": self.details,
        }
        if self.error is not None:
            data["error"] = self.error
        return data


class CriterionExecutor:
    """Runs criteria and turns every exception into a failed outcome."""

    def __init__(self, registry: Optional[CriterionRegistry] = None):
        self.registry = registry or get_registry()

    def execute(self, name: str, ctx: Any) -> CriterionOutcome:
        criterion = self.registry.get_criterion(name)
        if not criterion:
            raise ValueError(f"Criterion '{name}' not found")

        try:
            details = criterion.handler(ctx)
            passed = bool(details.pop("passed"))
            outcome = CriterionOutcome(name=name, description=criterion.description, passed=passed, details=details)
        except Exception as e:
            logger.error(f"Criterion '{name}' raised: {e}", exc_info=True)
            outcome = CriterionOutcome(
                name=name,
                description=criterion.description,
                passed=False,
                error=f"{type(e).__name__}: {e}",
            )

        logger.info(f"Criterion '{name}': {'PASS' if outcome.passed else 'FAIL'}")
        return outcome

from typing import Any, Callable, Dict, List, Optional
from dataclasses import dataclass
import logging

logger = logging.getLogger(__name__)


@dataclass
class CriterionDefinition:
    """One acceptance criterion: handler(ctx) returns a details dict with a 'passed' flag."""
    name: str
    description: str
    handler: Callable[[Any], Dict[str, Any]]


class CriterionRegistry:
    """Registry for acceptance criteria, kept in registration order."""

    def __init__(self):
        self._criteria: Dict[str, CriterionDefinition] = {}

    def register(self, name: str, description: str, handler: Callable[[Any], Dict[str, Any]]):
        self._criteria[name] = CriterionDefinition(name=name, description=description, handler=handler)
        logger.debug(f"Registered criterion: {name}")

    def get_criterion(self, name: str) -> Optional[CriterionDefinition]:
        return self._criteria.get(name)

    def list_criteria(self) -> List[str]:
        return list(self._criteria)

    def get_all_criteria(self) -> Dict[str, CriterionDefinition]:
        return self._criteria.copy()


# Global registry instance
_registry = CriterionRegistry()


def get_registry() -> CriterionRegistry:
    """Get the global criterion registry, filled on first use."""
    if not _registry.list_criteria():
        from app.acceptance.criteria import register_all_criteria
        register_all_criteria(_registry)
    return _registry

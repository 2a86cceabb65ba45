from typing import Any, Dict, Sequence
import logging

from app.sim.config import Mode
from app.sim.result import FIRST_ORDER_COLUMNS, SECOND_ORDER_COLUMNS, column_names

logger = logging.getLogger(__name__)


def expected_header(mode: Mode, n: int) -> list:
    """CSV header a bundle of this mode must carry."""
    header = ["t"]
    for series in (SECOND_ORDER_COLUMNS if mode.second_order else FIRST_ORDER_COLUMNS):
        header.extend(column_names(series, n))
    return header


def validate_trajectory_header(header: Sequence[str], mode: Mode, n: int) -> bool:
    """
    Validate the CSV header against the mode's column schema.

    Returns:
        True if valid, False otherwise
    """
    expected = expected_header(mode, n)
    if list(header) != expected:
        missing = [c for c in expected if c not in header]
        extra = [c for c in header if c not in expected]
        logger.warning(f"Trajectory header mismatch: missing {missing}, unexpected {extra}")
        return False
    return True


def validate_metrics(data: Dict[str, Any], header: Sequence[str]) -> bool:
    """
    Validate a metrics document against the CSV it was computed from.

    Returns:
        True if valid, False otherwise
    """
    required_fields = ["scenario_id", "mode", "tolerance", "channels", "adaptive_gains"]

    if not isinstance(data, dict):
        logger.warning("Metrics document is not a dict")
        return False

    for field in required_fields:
        if field not in data:
            logger.warning(f"Metrics missing required field: {field}")
            return False

    available = set(header)
    entries = list(data["channels"].values()) + [data["adaptive_gains"]]
    for entry in entries:
        unknown = [c for c in entry.get("columns", []) if c not in available]
        if unknown:
            logger.warning(f"Metrics reference columns absent from the CSV: {unknown}")
            return False

    return True

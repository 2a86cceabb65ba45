import hashlib
import json
from typing import Any, Dict, Iterable, List


def format_float(value: float) -> str:
    """Format a float with the shortest representation that round-trips."""
    return repr(float(value))


def canonical_json(data: Dict[str, Any]) -> str:
    """Serialize to JSON with sorted keys and a fixed layout."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def config_hash(data: Dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON document."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def indexed_names(prefix: str, count: int) -> List[str]:
    """
    Build per-follower column names.

    Example:
        indexed_names("uhat0", 3) -> ['uhat01', 'uhat02', 'uhat03']
    """
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def as_float_tuple(values: Iterable[float]) -> tuple:
    return tuple(float(v) for v in values)

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from app.sim.config import Mode
from app.utils import indexed_names

# error channel -> (estimate/state series, reference series)
ERROR_CHANNELS: Dict[str, Tuple[str, str]] = {
    "e": ("x", "x0"),
    "e_u": ("uhat0", "u0"),
    "e_x": ("xhat0", "x0"),
    "e_0v": ("vhat0", "v0"),
    "e_v": ("vhat", "v"),
    "e_vel": ("v", "v0"),
}

FIRST_ORDER_ERRORS = ("e", "e_u", "e_x")
SECOND_ORDER_ERRORS = ("e", "e_vel", "e_u", "e_0v", "e_x", "e_v")

# series name -> CSV column prefix; leader series are single columns
_COLUMN_PREFIX = {
    "x": "x", "v": "v", "uhat0": "uhat0", "vhat0": "vhat0",
    "xhat0": "xhat0", "vhat": "vhat", "u": "u", "d": "d",
}
FIRST_ORDER_COLUMNS = ("x0", "x", "uhat0", "xhat0", "u0", "u", "d")
SECOND_ORDER_COLUMNS = ("x0", "x", "v0", "v", "uhat0", "vhat0", "xhat0", "vhat", "u0", "u", "d")


def column_names(series: str, n: int) -> List[str]:
    """CSV columns carrying one series."""
    if series in ("x0", "v0", "u0"):
        return [series]
    return indexed_names(_COLUMN_PREFIX[series], n)


def error_names(mode: Mode) -> Tuple[str, ...]:
    return SECOND_ORDER_ERRORS if mode.second_order else FIRST_ORDER_ERRORS


@dataclass
class SimResult:
    """
    Recorded trajectories of one run.

    series holds leader channels as (samples,) arrays and follower channels
    as (samples, n) arrays; errors holds (samples, n) arrays computed from
    series against leader truth.
    """
    scenario_id: str
    mode: Mode
    n: int
    times: np.ndarray
    series: Dict[str, np.ndarray]
    errors: Dict[str, np.ndarray] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.errors:
            self.errors = compute_errors(self.series, self.mode)

    @property
    def series_order(self) -> Tuple[str, ...]:
        return SECOND_ORDER_COLUMNS if self.mode.second_order else FIRST_ORDER_COLUMNS

    def columns(self) -> Dict[str, np.ndarray]:
        """Ordered CSV columns, time first."""
        columns = {"t": self.times}
        for name in self.series_order:
            data = self.series[name]
            names = column_names(name, self.n)
            if data.ndim == 1:
                columns[names[0]] = data
            else:
                for k, col in enumerate(names):
                    columns[col] = data[:, k]
        return columns

    def error_magnitude(self, name: str) -> np.ndarray:
        """max_i |error_i| at every recorded sample."""
        return np.max(np.abs(self.errors[name]), axis=1)

    def source_columns(self, error: str) -> List[str]:
        estimate, reference = ERROR_CHANNELS[error]
        return column_names(reference, self.n) + column_names(estimate, self.n)


def compute_errors(series: Dict[str, np.ndarray], mode: Mode) -> Dict[str, np.ndarray]:
    errors = {}
    for name in error_names(mode):
        estimate, reference = ERROR_CHANNELS[name]
        ref = series[reference]
        ref = ref[:, None] if ref.ndim == 1 else ref
        errors[name] = series[estimate] - ref
    return errors

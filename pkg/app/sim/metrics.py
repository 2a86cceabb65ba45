from typing import Any, Dict, Optional

import numpy as np

from app.config import settings
from app.sim.result import SimResult, column_names

# error channel -> metrics key
ERROR_LABELS = {
    "e": "tracking",
    "e_vel": "velocity_tracking",
    "e_u": "input_estimation",
    "e_x": "position_estimation",
    "e_0v": "leader_velocity_estimation",
    "e_v": "self_velocity_estimation",
}


def convergence_time(times: np.ndarray, series: np.ndarray, tol: float) -> Optional[float]:
    """
    Earliest recorded t* after which series stays <= tol, or None.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    times = np.asarray(times)
    series = np.asarray(series)
    above = np.flatnonzero(series > tol)
    if above.size == 0:
        return float(times[0])
    last = above[-1]
    if last == len(series) - 1:
        return None
    return float(times[last + 1])


def stays_below(times: np.ndarray, series: np.ndarray, tol: float, t_from: float) -> bool:
    """series <= tol at every recorded t >= t_from."""
    mask = np.asarray(times) >= t_from - 1e-12
    return bool(np.all(np.asarray(series)[mask] <= tol))


def max_after(times: np.ndarray, series: np.ndarray, t_from: float) -> float:
    mask = np.asarray(times) >= t_from - 1e-12
    window = np.asarray(series)[mask]
    return float(window.max()) if window.size else 0.0


def is_non_decreasing(series: np.ndarray) -> bool:
    """Column-wise monotonicity of a (samples, n) array."""
    return bool(np.all(np.diff(series, axis=0) >= 0))


def final_slope(times: np.ndarray, series: np.ndarray, window: float = 1.0) -> np.ndarray:
    """Average slope of each column over the last `window` seconds."""
    times = np.asarray(times)
    start = int(np.searchsorted(times, times[-1] - window - 1e-12))
    span = times[-1] - times[start]
    if span <= 0:
        return np.zeros(series.shape[1])
    return (series[-1] - series[start]) / span


def compute_metrics(result: SimResult, tol: float = settings.CONVERGENCE_TOL) -> Dict[str, Any]:
    """
    Metrics document for one run. Each entry lists the CSV columns it is
    computed from.
    """
    times = result.times
    half = times[0] + 0.5 * (times[-1] - times[0])
    channels = {}
    for name in result.errors:
        magnitude = result.error_magnitude(name)
        channels[ERROR_LABELS[name]] = {
            "error": name,
            "columns": result.source_columns(name),
            "convergence_time": convergence_time(times, magnitude, tol),
            "final_error": float(magnitude[-1]),
            "max_error_second_half": max_after(times, magnitude, half),
        }

    d = result.series["d"]
    metrics = {
        "scenario_id": result.scenario_id,
        "mode": result.mode.value,
        "tolerance": tol,
        "channels": channels,
        "adaptive_gains": {
            "columns": column_names("d", result.n),
            "final": [float(v) for v in d[-1]],
            "final_second_slope": [float(v) for v in final_slope(times, d)],
            "non_decreasing": is_non_decreasing(d),
        },
    }
    metrics.update({k: v for k, v in result.metadata.items() if k in ("config_hash", "step_count")})
    return metrics

from dataclasses import dataclass, field
from typing import Any, Dict, Optional
import logging

import numpy as np

from app.errors import NoAnalyticRate
from app.sim.config import Mode, SimConfig, initial_state_vector
from app.sim.integrator import step_rk4
from app.sim.vector_field import assemble_vector_field
from app.verify.error_system import ErrorSystem, error_state, reduced_channels, reduced_vector_field
from app.verify.linear import affine_error_solution

logger = logging.getLogger(__name__)


@dataclass
class CrossCheckReport:
    """Sup-norm discrepancy per error channel over [0, horizon]."""
    scenario_id: str
    horizon: float
    dt: float
    discrepancies: Dict[str, float]
    oracle_discrepancies: Dict[str, float] = field(default_factory=dict)

    @property
    def max_discrepancy(self) -> float:
        values = list(self.discrepancies.values()) + list(self.oracle_discrepancies.values())
        return max(values) if values else 0.0

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "scenario_id": self.scenario_id,
            "horizon": self.horizon,
            "dt": self.dt,
            "discrepancies": dict(self.discrepancies),
            "max_discrepancy": self.max_discrepancy,
        }
        if self.oracle_discrepancies:
            data["oracle_discrepancies"] = dict(self.oracle_discrepancies)
        return data


def _has_linear_oracle(cfg: SimConfig) -> bool:
    return cfg.mode is Mode.FIRST_ORDER_SIMPLIFIED and cfg.leader_signal.rate_bound == 0.0


def cross_check(cfg: SimConfig, horizon: float, dt: Optional[float] = None) -> CrossCheckReport:
    """
    Integrate the full closed loop and the reduced error system side by side
    with the same RK4 step, and compare the full system's error coordinates
    with the reduced state at every step.

    When the error system is linear (simplified observer, zero-rate leader
    input) the reduced trajectory is also compared with its matrix
    exponential solution.

    Raises:
        NoAnalyticRate, ConfigInvalid, NonFiniteState
    """
    dt = cfg.dt if dt is None else dt
    if not dt > 0 or not horizon > 0:
        raise ValueError("horizon and dt must be positive")
    if not cfg.leader_signal.is_analytic:
        raise NoAnalyticRate(f"cross check needs an analytic leader input, got {cfg.leader_signal.kind}")

    loop = assemble_vector_field(cfg)
    es = ErrorSystem.from_config(cfg)
    reduced = reduced_vector_field(es)
    channels = reduced_channels(es)
    oracle = _has_linear_oracle(cfg)

    state = initial_state_vector(cfg)
    errors = error_state(cfg, state, 0.0)
    errors0 = errors.copy()

    worst = {name: 0.0 for name in channels}
    worst_oracle = {name: 0.0 for name in channels} if oracle else {}
    n_steps = int(round(horizon / dt))
    logger.info(f"Cross-checking '{cfg.scenario_id}' over {n_steps} steps of dt={dt}")

    for k in range(1, n_steps + 1):
        t_prev = (k - 1) * dt
        t = k * dt
        state = step_rk4(loop, state, t_prev, dt)
        errors = step_rk4(reduced, errors, t_prev, dt)
        gap = np.abs(error_state(cfg, state, t) - errors)
        for name, s in channels.items():
            worst[name] = max(worst[name], float(gap[s].max()))
        if oracle:
            exact = affine_error_solution(es, errors0, t)
            oracle_gap = np.abs(exact - errors)
            for name, s in channels.items():
                worst_oracle[name] = max(worst_oracle[name], float(oracle_gap[s].max()))

    report = CrossCheckReport(
        scenario_id=cfg.scenario_id,
        horizon=n_steps * dt,
        dt=dt,
        discrepancies=worst,
        oracle_discrepancies=worst_oracle,
    )
    logger.info(f"Cross-check of '{cfg.scenario_id}': max discrepancy {report.max_discrepancy:.3e}")
    return report

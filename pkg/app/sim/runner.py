from typing import Dict, List
import logging
import time

import numpy as np

from app.errors import NonFiniteState
from app.sim.config import SimConfig, initial_state_vector
from app.sim.integrator import step_rk4
from app.sim.result import SimResult
from app.sim.vector_field import ClosedLoop, assemble_vector_field

logger = logging.getLogger(__name__)


class _Recorder:
    """Collects samples of the world and the follower outputs."""

    def __init__(self, loop: ClosedLoop):
        self.loop = loop
        self.layout = loop.layout
        self.times: List[float] = []
        self.rows: Dict[str, list] = {}

    def _add(self, name: str, value) -> None:
        self.rows.setdefault(name, []).append(value)

    def record(self, state: np.ndarray, t: float) -> None:
        s = self.layout
        outputs = self.loop.evaluate(state, t).outputs
        self.times.append(t)
        self._add("x0", float(state[0]))
        self._add("x", state[s["x"]].copy())
        self._add("u0", outputs.u0)
        self._add("uhat0", list(outputs.uhat0))
        self._add("xhat0", state[s["xhat0"]].copy())
        self._add("u", list(outputs.u))
        self._add("d", state[s["d"]].copy())
        if s.second_order:
            self._add("v0", float(state[s["v0"]][0]))
            self._add("v", state[s["v"]].copy())
            self._add("vhat0", list(outputs.vhat0))
            self._add("vhat", list(outputs.vhat))

    def series(self) -> Dict[str, np.ndarray]:
        return {name: np.array(rows, dtype=float) for name, rows in self.rows.items()}


def run(cfg: SimConfig) -> SimResult:
    """
    Integrate cfg from t=0 to t_end with fixed-step RK4.

    Samples are taken at step 0, every record_stride steps and at the final
    step.

    Raises:
        ConfigInvalid, NonFiniteState
    """
    loop = assemble_vector_field(cfg)
    n_steps = cfg.n_steps
    dt = cfg.dt
    logger.info(f"Running '{cfg.scenario_id}' ({cfg.mode.value}): {n_steps} steps of dt={dt}")

    started = time.perf_counter()
    state = initial_state_vector(cfg)
    recorder = _Recorder(loop)
    recorder.record(state, 0.0)

    for k in range(1, n_steps + 1):
        try:
            state = step_rk4(loop, state, (k - 1) * dt, dt)
        except NonFiniteState as e:
            logger.error(f"'{cfg.scenario_id}' diverged at t={e.t}")
            raise
        if k % cfg.record_stride == 0 or k == n_steps:
            recorder.record(state, k * dt)

    elapsed = time.perf_counter() - started
    logger.info(f"Finished '{cfg.scenario_id}' in {elapsed:.2f}s ({len(recorder.times)} samples)")

    return SimResult(
        scenario_id=cfg.scenario_id,
        mode=cfg.mode,
        n=cfg.n,
        times=np.array(recorder.times),
        series=recorder.series(),
        metadata={"step_count": n_steps, "dt": dt, "record_stride": cfg.record_stride},
    )

"""
Closed-loop vector field: plants, observers and controllers of every
follower flattened into one ODE over the layout in app.signals.world.

Followers are evaluated sequentially. Each follower reads the leader and
its neighbors only through the NeighborView wired for it.
"""
from typing import Dict, List, NamedTuple, Tuple
import logging

import numpy as np

from app.control.controllers import first_order_control, second_order_control
from app.observers.input_observers import (
    adaptive_input_observer_rate,
    direct_input_observer_rate,
    simplified_input_observer_rate,
)
from app.observers.state_observers import (
    leader_velocity_observer_rate,
    position_observer_rate,
    self_velocity_observer_rate,
)
from app.observers.view import Bulletin, NeighborView
from app.signals.leader import leader_input
from app.signals.plant import first_order_plant_rate, second_order_plant_rate
from app.sim.config import Mode, SimConfig, validate_config

logger = logging.getLogger(__name__)


class FollowerOutputs(NamedTuple):
    """Observer outputs and applied inputs at one instant (length-n lists)."""
    u0: float
    uhat0: List[float]
    xhat0: List[float]
    vhat0: List[float]
    vhat: List[float]
    u: List[float]


class Evaluation(NamedTuple):
    rate: np.ndarray
    outputs: FollowerOutputs


class ClosedLoop:
    """
    Callable (state, t) -> rate for one SimConfig.

    The follower views are wired and checked once here. Every evaluation only
    posts fresh numbers to the shared bulletin, so one ClosedLoop must not be
    evaluated from several threads at once.
    """

    def __init__(self, cfg: SimConfig):
        validate_config(cfg)
        self.cfg = cfg
        self.mode = cfg.mode
        self.n = cfg.n
        self.layout = cfg.layout
        self.gains = cfg.gains
        self.policy = cfg.sign_policy
        self._b = [float(b) for b in cfg.topology.leader_adjacency]
        self._bl = [b * cfg.gains.l for b in self._b]
        self._tau = [float(tau) for tau in cfg.gains.tau]
        self._slices = [(name, self.layout[name]) for name in self.layout.slices]
        self._bulletin = Bulletin(self.n)
        self._views = tuple(
            NeighborView(
                self_index=i,
                neighbor_weights=cfg.topology.neighbors(i),
                leader_weight=self._b[i],
                bulletin=self._bulletin,
                measures_leader_position=self._b[i] > 0,
                measures_leader_input=self._b[i] > 0 and self.mode.shares_leader_input,
            )
            for i in range(self.n)
        )

    @property
    def dimension(self) -> int:
        return self.layout.dimension

    def __call__(self, state: np.ndarray, t: float) -> np.ndarray:
        return self.evaluate(state, t).rate

    def evaluate(self, state: np.ndarray, t: float) -> Evaluation:
        parts = self._split(state)
        u0 = leader_input(self.cfg.leader_signal, t)
        if self.mode.second_order:
            return self._second_order(parts, u0)
        return self._first_order(parts, u0)

    def neighbor_views(self, state: np.ndarray, t: float) -> Tuple[NeighborView, ...]:
        """The views every follower reads at (state, t)."""
        self._publish(self._split(state), leader_input(self.cfg.leader_signal, t))
        return self._views

    def _split(self, state: np.ndarray) -> Dict[str, List[float]]:
        values = state.tolist()
        return {name: values[s] for name, s in self._slices}

    def _publish(self, parts: Dict[str, List[float]], u0: float) -> None:
        board = self._bulletin
        x0 = parts["x0"][0]
        board.leader_position = x0
        board.leader_input = u0 if self.mode.shares_leader_input else None
        board.xhat0 = parts["xhat0"]
        if self.mode.second_order:
            board.uhat0 = parts["uhat0"]
            board.vhat0 = [z + bl * x0 for z, bl in zip(parts["zv"], self._bl)]
        elif self.mode is Mode.FIRST_ORDER_DIRECT:
            board.uhat0 = parts["z"]
        else:
            board.uhat0 = [z + bl * x0 for z, bl in zip(parts["z"], self._bl)]

    def _first_order(self, parts: Dict[str, List[float]], u0: float) -> Evaluation:
        g = self.gains
        self._publish(parts, u0)
        x0 = parts["x0"][0]
        x, z, xhat, d = parts["x"], parts["z"], parts["xhat0"], parts["d"]
        uhat = self._bulletin.uhat0

        x_rate = [0.0] * self.n
        z_rate = [0.0] * self.n
        xhat_rate = [0.0] * self.n
        d_rate = [0.0] * self.n
        u = [0.0] * self.n

        for i, view in enumerate(self._views):
            if self.mode is Mode.FIRST_ORDER_ADAPTIVE:
                obs = adaptive_input_observer_rate(view, z[i], d[i], self._tau[i], g.l, self.policy)
                z_rate[i], d_rate[i] = obs.z_rate, obs.d_rate
            elif self.mode is Mode.FIRST_ORDER_SIMPLIFIED:
                z_rate[i] = simplified_input_observer_rate(view, z[i], g.l).z_rate
            else:
                obs = direct_input_observer_rate(view, uhat[i], d[i], self._tau[i], self.policy)
                z_rate[i], d_rate[i] = obs.uhat_rate, obs.d_rate

            xhat_rate[i] = position_observer_rate(view, xhat[i], g.c, feed=uhat[i])
            u[i] = first_order_control(x[i], xhat[i], uhat[i], g.k1)
            x_rate[i] = first_order_plant_rate(x[i], u[i])

        if not g.adaptive:
            d_rate = [0.0] * self.n

        rate = np.array([first_order_plant_rate(x0, u0)] + x_rate + z_rate + xhat_rate + d_rate)
        outputs = FollowerOutputs(u0=u0, uhat0=list(uhat), xhat0=xhat, vhat0=[], vhat=[], u=u)
        return Evaluation(rate=rate, outputs=outputs)

    def _second_order(self, parts: Dict[str, List[float]], u0: float) -> Evaluation:
        g = self.gains
        self._publish(parts, u0)
        x0, v0 = parts["x0"][0], parts["v0"][0]
        x, v, uhat, zv = parts["x"], parts["v"], parts["uhat0"], parts["zv"]
        xhat, zbar, d = parts["xhat0"], parts["zbar"], parts["d"]
        vhat0 = self._bulletin.vhat0

        rates = {name: [0.0] * self.n for name in ("x", "v", "uhat0", "zv", "xhat0", "zbar", "d")}
        vhat = [0.0] * self.n
        u = [0.0] * self.n

        for i, view in enumerate(self._views):
            vhat[i] = zbar[i] + g.l * x[i]
            u[i] = second_order_control(x[i], xhat[i], vhat[i], vhat0[i], uhat[i], g.k1, g.k2)

            obs = direct_input_observer_rate(view, uhat[i], d[i], self._tau[i], self.policy)
            rates["uhat0"][i], rates["d"][i] = obs.uhat_rate, obs.d_rate
            rates["zv"][i] = leader_velocity_observer_rate(view, zv[i], g.l, uhat[i]).z_rate
            rates["xhat0"][i] = position_observer_rate(view, xhat[i], g.c, feed=vhat0[i])
            rates["zbar"][i] = self_velocity_observer_rate(x[i], zbar[i], g.l, u[i]).zbar_rate
            rates["x"][i], rates["v"][i] = second_order_plant_rate(x[i], v[i], u[i])

        if not g.adaptive:
            rates["d"] = [0.0] * self.n

        rate = np.array(
            list(second_order_plant_rate(x0, v0, u0)) + rates["x"] + rates["v"] + rates["uhat0"]
            + rates["zv"] + rates["xhat0"] + rates["zbar"] + rates["d"]
        )
        outputs = FollowerOutputs(u0=u0, uhat0=uhat, xhat0=xhat, vhat0=list(vhat0), vhat=vhat, u=u)
        return Evaluation(rate=rate, outputs=outputs)


def assemble_vector_field(cfg: SimConfig) -> ClosedLoop:
    """
    Build the closed-loop vector field for cfg.

    Raises:
        ConfigInvalid
    """
    loop = ClosedLoop(cfg)
    logger.debug(f"Assembled {cfg.mode.value} vector field of dimension {loop.dimension}")
    return loop

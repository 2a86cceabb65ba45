from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from app.control.gains import Gains
from app.errors import ConfigInvalid
from app.graph.topology import Topology
from app.observers.view import SignPolicy
from app.signals.leader import LeaderSignal
from app.signals.world import FirstOrderWorld, SecondOrderWorld, StateLayout


class Mode(str, Enum):
    FIRST_ORDER_ADAPTIVE = "first_order_adaptive"
    FIRST_ORDER_SIMPLIFIED = "first_order_simplified"
    FIRST_ORDER_DIRECT = "first_order_direct"
    SECOND_ORDER = "second_order"

    @property
    def second_order(self) -> bool:
        return self is Mode.SECOND_ORDER

    @property
    def shares_leader_input(self) -> bool:
        """Whether the leader sends u0 to its linked followers in this mode."""
        return self is not Mode.FIRST_ORDER_SIMPLIFIED

    @property
    def has_sign_term(self) -> bool:
        return self is not Mode.FIRST_ORDER_SIMPLIFIED


@dataclass(frozen=True)
class InitialStates:
    """
    Initial leader, follower and observer states.

    Observer states left as None start at zero. In first_order_direct mode
    `z` holds the initial input estimates themselves.
    """
    follower_x: Tuple[float, ...]
    leader_x: float = 0.0
    leader_v: float = 0.0
    follower_v: Optional[Tuple[float, ...]] = None
    z: Optional[Tuple[float, ...]] = None
    uhat0: Optional[Tuple[float, ...]] = None
    zv: Optional[Tuple[float, ...]] = None
    xhat0: Optional[Tuple[float, ...]] = None
    zbar: Optional[Tuple[float, ...]] = None
    d: Optional[Tuple[float, ...]] = None

    def vectors(self) -> dict:
        return {
            name: getattr(self, name)
            for name in ("follower_x", "follower_v", "z", "uhat0", "zv", "xhat0", "zbar", "d")
            if getattr(self, name) is not None
        }


@dataclass(frozen=True)
class OutputOptions:
    csv: bool = True
    metrics: bool = True
    plots: Tuple[str, ...] = ()
    cross_check_horizon: Optional[float] = None


@dataclass(frozen=True)
class SimConfig:
    scenario_id: str
    topology: Topology
    gains: Gains
    leader_signal: LeaderSignal
    mode: Mode
    initial: InitialStates
    dt: float
    t_end: float
    record_stride: int = 100
    sign_policy: SignPolicy = field(default_factory=SignPolicy)
    outputs: OutputOptions = field(default_factory=OutputOptions)

    @property
    def n(self) -> int:
        return self.topology.n_followers

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def layout(self) -> StateLayout:
        return StateLayout.for_order(self.n, self.mode.second_order)


def validate_config(cfg: SimConfig) -> None:
    """
    Enforce the hard preconditions of a run.

    Raises:
        ConfigInvalid
    """
    n = cfg.n
    if n < 1:
        raise ConfigInvalid("at least one follower is required")
    if not (cfg.dt > 0 and np.isfinite(cfg.dt)):
        raise ConfigInvalid(f"dt must be positive and finite, got {cfg.dt}")
    if not (cfg.t_end >= cfg.dt and np.isfinite(cfg.t_end)):
        raise ConfigInvalid(f"t_end ({cfg.t_end}) must be finite and at least dt ({cfg.dt})")
    if cfg.record_stride < 1:
        raise ConfigInvalid("record_stride must be a positive integer")
    if not cfg.gains.l > 0:
        raise ConfigInvalid(f"l must be positive, got {cfg.gains.l}")
    if cfg.gains.n != n:
        raise ConfigInvalid(f"tau has {cfg.gains.n} entries for {n} followers")
    if any(not tau > 0 for tau in cfg.gains.tau):
        raise ConfigInvalid("every tau_i must be positive")
    if cfg.mode.second_order and cfg.gains.k2 is None:
        raise ConfigInvalid("second_order mode requires k2")
    for name, values in cfg.initial.vectors().items():
        if len(values) != n:
            raise ConfigInvalid(f"initial {name} has {len(values)} entries for {n} followers")
    if cfg.initial.d is not None and any(d < 0 for d in cfg.initial.d):
        raise ConfigInvalid("initial adaptive gains must be non-negative")
    if cfg.mode.second_order:
        if cfg.initial.z is not None:
            raise ConfigInvalid("z is a first-order observer state; use uhat0/zv in second_order mode")
    elif any(v is not None for v in (cfg.initial.follower_v, cfg.initial.uhat0, cfg.initial.zv, cfg.initial.zbar)):
        raise ConfigInvalid("velocity and second-order observer states given for a first-order mode")


def initial_state_vector(cfg: SimConfig) -> np.ndarray:
    n = cfg.n
    init = cfg.initial

    def vec(values: Optional[Tuple[float, ...]]) -> np.ndarray:
        return np.zeros(n) if values is None else np.array(values, dtype=float)

    if cfg.mode.second_order:
        world = SecondOrderWorld(
            t=0.0,
            x0=init.leader_x,
            v0=init.leader_v,
            x=vec(init.follower_x),
            v=vec(init.follower_v),
            uhat0=vec(init.uhat0),
            d=vec(init.d),
            zv=vec(init.zv),
            xhat0=vec(init.xhat0),
            zbar=vec(init.zbar),
        )
    else:
        world = FirstOrderWorld(
            t=0.0,
            x0=init.leader_x,
            x=vec(init.follower_x),
            z=vec(init.z),
            d=vec(init.d),
            xhat0=vec(init.xhat0),
        )
    return world.to_vector()

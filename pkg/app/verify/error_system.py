"""
Stacked error dynamics of the closed loop.

Error coordinates (all length n unless noted):

    e_u  = uhat0 - u0 1          e_x = xhat0 - x0 1
    e_0v = vhat0 - v0 1          e_v = vhat - v
    e    = x - x0 1  (first order) or [x - x0 1; v - v0 1] (second order, 2n)

Reduced state vectors:

    first order:  [e_u, e_x, e, d]
    second order: [e_u, e_0v, e_x, e_v, e, d]
"""
from dataclasses import dataclass
from typing import Callable, Dict, NamedTuple, Optional

import numpy as np

from app.control.gains import Gains
from app.graph.topology import h_matrices
from app.observers.view import SignPolicy
from app.signals.leader import LeaderSignal, leader_input, leader_input_rate
from app.sim.config import Mode, SimConfig


def sgn_vector(x: np.ndarray, p: SignPolicy) -> np.ndarray:
    """Elementwise counterpart of app.observers.view.sgn."""
    if p.boundary_layer == 0:
        return np.sign(x)
    return np.clip(x / p.boundary_layer, -1.0, 1.0)


def f1_matrix(n: int, k1: float, k2: float) -> np.ndarray:
    """F1 = [[0, I], [-k1 I, -k2 I]]."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-k1 * eye, -k2 * eye]])


def f1_spectrum(n: int, k1: float, k2: float) -> np.ndarray:
    return np.linalg.eigvals(f1_matrix(n, k1, k2))


def quadratic_roots(a1: complex, a0: complex) -> np.ndarray:
    """Roots of s^2 + a1 s + a0 by the quadratic formula."""
    disc = np.sqrt(complex(a1) * complex(a1) - 4.0 * complex(a0))
    return np.array([(-a1 + disc) / 2.0, (-a1 - disc) / 2.0], dtype=complex)


@dataclass(frozen=True, eq=False)
class ErrorSystem:
    mode: Mode
    h1: np.ndarray
    h2: np.ndarray
    gains: Gains
    leader: LeaderSignal
    policy: SignPolicy
    f1: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.h1.shape[0]

    @classmethod
    def from_config(cls, cfg: SimConfig) -> "ErrorSystem":
        matrices = h_matrices(cfg.topology, cfg.gains.l)
        f1 = None
        if cfg.mode.second_order:
            f1 = f1_matrix(cfg.n, cfg.gains.k1, cfg.gains.k2)
        return cls(
            mode=cfg.mode,
            h1=matrices.h1,
            h2=matrices.h2,
            gains=cfg.gains,
            leader=cfg.leader_signal,
            policy=cfg.sign_policy,
            f1=f1,
        )

    def _input_error_rate(self, h: np.ndarray, e_u: np.ndarray, d: np.ndarray, u0_rate: float, sliding: bool):
        r = h @ e_u
        e_u_rate = -r - u0_rate
        d_rate = np.zeros_like(d)
        if sliding:
            e_u_rate = e_u_rate - d * sgn_vector(r, self.policy)
            if self.gains.adaptive:
                d_rate = np.asarray(self.gains.tau) * np.abs(r)
        return e_u_rate, d_rate


class FirstOrderErrorRates(NamedTuple):
    e_u: np.ndarray
    e_x: np.ndarray
    e: np.ndarray
    d: np.ndarray


class SecondOrderErrorRates(NamedTuple):
    e_u: np.ndarray
    e_0v: np.ndarray
    e_x: np.ndarray
    e_v: np.ndarray
    e: np.ndarray
    d: np.ndarray


def error_rate_first_order(
    es: ErrorSystem,
    e_u: np.ndarray,
    e_x: np.ndarray,
    e: np.ndarray,
    t: float,
    d: Optional[np.ndarray] = None,
) -> FirstOrderErrorRates:
    """
    de_u = -H e_u - D sgn(H e_u) - du0/dt 1   (H = H1, or H2 for the direct observer;
                                               no sign term for the simplified one)
    de_x = -c H2 e_x + e_u
    de   = -k1 e + k1 e_x + e_u

    Raises:
        NoAnalyticRate
    """
    g = es.gains
    d = np.zeros(es.n) if d is None else np.asarray(d)
    u0_rate = leader_input_rate(es.leader, t)
    h = es.h2 if es.mode is Mode.FIRST_ORDER_DIRECT else es.h1
    e_u_rate, d_rate = es._input_error_rate(h, e_u, d, u0_rate, sliding=es.mode.has_sign_term)
    e_x_rate = -g.c * (es.h2 @ e_x) + e_u
    e_rate = -g.k1 * e + g.k1 * e_x + e_u
    return FirstOrderErrorRates(e_u=e_u_rate, e_x=e_x_rate, e=e_rate, d=d_rate)


def error_rate_second_order(
    es: ErrorSystem,
    e_u: np.ndarray,
    e_0v: np.ndarray,
    e_x: np.ndarray,
    e_v: np.ndarray,
    e: np.ndarray,
    t: float,
    d: Optional[np.ndarray] = None,
) -> SecondOrderErrorRates:
    """
    de_u  = -H2 e_u - D sgn(H2 e_u) - du0/dt 1
    de_0v = -H1 e_0v + e_u
    de_x  = -c H2 e_x + e_0v
    de_v  = -l e_v
    de    = F1 e + [0; -k2 e_v + k2 e_0v + k1 e_x + e_u]

    Raises:
        NoAnalyticRate
    """
    g = es.gains
    d = np.zeros(es.n) if d is None else np.asarray(d)
    u0_rate = leader_input_rate(es.leader, t)
    e_u_rate, d_rate = es._input_error_rate(es.h2, e_u, d, u0_rate, sliding=True)
    f2 = np.concatenate([np.zeros(es.n), -g.k2 * e_v + g.k2 * e_0v + g.k1 * e_x + e_u])
    return SecondOrderErrorRates(
        e_u=e_u_rate,
        e_0v=-(es.h1 @ e_0v) + e_u,
        e_x=-g.c * (es.h2 @ e_x) + e_0v,
        e_v=-g.l * e_v,
        e=es.f1 @ e + f2,
        d=d_rate,
    )


def reduced_channels(es: ErrorSystem) -> Dict[str, slice]:
    """Slices of the reduced state vector per error channel."""
    n = es.n
    if es.mode.second_order:
        return {
            "e_u": slice(0, n), "e_0v": slice(n, 2 * n), "e_x": slice(2 * n, 3 * n),
            "e_v": slice(3 * n, 4 * n), "e": slice(4 * n, 5 * n), "e_vel": slice(5 * n, 6 * n),
            "d": slice(6 * n, 7 * n),
        }
    return {"e_u": slice(0, n), "e_x": slice(n, 2 * n), "e": slice(2 * n, 3 * n), "d": slice(3 * n, 4 * n)}


def reduced_vector_field(es: ErrorSystem) -> Callable[[np.ndarray, float], np.ndarray]:
    """(reduced state, t) -> rate, with D co-integrated by the adaptation law."""
    n = es.n

    if es.mode.second_order:
        def field(s: np.ndarray, t: float) -> np.ndarray:
            rates = error_rate_second_order(
                es, s[0:n], s[n:2 * n], s[2 * n:3 * n], s[3 * n:4 * n], s[4 * n:6 * n], t, s[6 * n:7 * n]
            )
            return np.concatenate(rates)
        return field

    def field(s: np.ndarray, t: float) -> np.ndarray:
        rates = error_rate_first_order(es, s[0:n], s[n:2 * n], s[2 * n:3 * n], t, s[3 * n:4 * n])
        return np.concatenate(rates)
    return field


def error_state(cfg: SimConfig, y: np.ndarray, t: float) -> np.ndarray:
    """Map a flattened closed-loop state to the reduced error state."""
    s = cfg.layout
    b = np.asarray(cfg.topology.leader_adjacency)
    l = cfg.gains.l
    x0 = y[0]
    u0 = leader_input(cfg.leader_signal, t)

    if cfg.mode.second_order:
        v0 = y[s["v0"]][0]
        x, v = y[s["x"]], y[s["v"]]
        return np.concatenate([
            y[s["uhat0"]] - u0,
            y[s["zv"]] + b * l * x0 - v0,
            y[s["xhat0"]] - x0,
            y[s["zbar"]] + l * x - v,
            x - x0,
            v - v0,
            y[s["d"]],
        ])

    z = y[s["z"]]
    uhat = z if cfg.mode is Mode.FIRST_ORDER_DIRECT else z + b * l * x0
    return np.concatenate([uhat - u0, y[s["xhat0"]] - x0, y[s["x"]] - x0, y[s["d"]]])


def error_rate_from_state_rate(cfg: SimConfig, y: np.ndarray, y_rate: np.ndarray, t: float) -> np.ndarray:
    """
    Time-derivative of error_state along y_rate (the chain rule through the
    linear change of coordinates, with the analytic du0/dt).
    """
    s = cfg.layout
    b = np.asarray(cfg.topology.leader_adjacency)
    l = cfg.gains.l
    x0_rate = y_rate[0]
    u0_rate = leader_input_rate(cfg.leader_signal, t)

    if cfg.mode.second_order:
        v0_rate = y_rate[s["v0"]][0]
        x_rate, v_rate = y_rate[s["x"]], y_rate[s["v"]]
        return np.concatenate([
            y_rate[s["uhat0"]] - u0_rate,
            y_rate[s["zv"]] + b * l * x0_rate - v0_rate,
            y_rate[s["xhat0"]] - x0_rate,
            y_rate[s["zbar"]] + l * x_rate - v_rate,
            x_rate - x0_rate,
            v_rate - v0_rate,
            y_rate[s["d"]],
        ])

    z_rate = y_rate[s["z"]]
    uhat_rate = z_rate if cfg.mode is Mode.FIRST_ORDER_DIRECT else z_rate + b * l * x0_rate
    return np.concatenate([
        uhat_rate - u0_rate,
        y_rate[s["xhat0"]] - x0_rate,
        y_rate[s["x"]] - x0_rate,
        y_rate[s["d"]],
    ])

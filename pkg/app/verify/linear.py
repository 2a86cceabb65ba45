"""
Closed-form solutions used as oracles for the integrator.
"""
from typing import Sequence
import logging

import numpy as np
from scipy import linalg

from app.config import settings
from app.errors import NotPositiveDefinite, NotSymmetric
from app.sim.config import Mode
from app.verify.error_system import ErrorSystem

logger = logging.getLogger(__name__)


def _check_spd(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or not np.array_equal(h, h.T):
        raise NotSymmetric("matrix must be square and symmetric")
    eigvals = linalg.eigvalsh(h)
    if not eigvals.min() > settings.EIGEN_TOL:
        raise NotPositiveDefinite(f"smallest eigenvalue {eigvals.min():.3e} is not positive")
    return h


def linear_error_solution(h: np.ndarray, e0: Sequence[float], t: float) -> np.ndarray:
    """
    Solution of de/dt = -H e at time t: e(t) = V exp(-Lambda t) V^T e0.

    Raises:
        NotSymmetric, NotPositiveDefinite
    """
    h = _check_spd(h)
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    eigvals, eigvecs = linalg.eigh(h)
    e0 = np.asarray(e0, dtype=float)
    return eigvecs @ (np.exp(-eigvals * t) * (eigvecs.T @ e0))


def h_weighted_norm(h: np.ndarray, e: Sequence[float]) -> float:
    """sqrt(e^T H e)."""
    h = _check_spd(h)
    e = np.asarray(e, dtype=float)
    return float(np.sqrt(e @ h @ e))


def iss_decay_holds(h: np.ndarray, e0: Sequence[float], times: Sequence[float], rtol: float = 1e-9) -> bool:
    """
    Check the input-free decay bound |e(t)| <= |e0| exp(-lambda_min t) on the
    closed form of de/dt = -H e at every requested time.
    """
    h = _check_spd(h)
    lam_min = float(linalg.eigvalsh(h).min())
    e0 = np.asarray(e0, dtype=float)
    norm0 = float(np.linalg.norm(e0))
    for t in times:
        bound = norm0 * np.exp(-lam_min * t)
        actual = float(np.linalg.norm(linear_error_solution(h, e0, t)))
        if actual > bound * (1 + rtol) + 1e-15:
            logger.warning(f"Decay bound violated at t={t}: {actual:.6e} > {bound:.6e}")
            return False
    return True


def affine_error_matrix(es: ErrorSystem) -> np.ndarray:
    """
    Generator of the linear part of [e_u, e_x, e] for the simplified
    first-order observer:

        [[-H1,    0,     0  ],
         [  I, -c H2,    0  ],
         [  I,  k1 I, -k1 I ]]
    """
    n = es.n
    eye = np.eye(n)
    zero = np.zeros((n, n))
    g = es.gains
    return np.block([
        [-es.h1, zero, zero],
        [eye, -g.c * es.h2, zero],
        [eye, g.k1 * eye, -g.k1 * eye],
    ])


def affine_error_solution(es: ErrorSystem, state0: Sequence[float], t: float) -> np.ndarray:
    """
    Exact reduced first-order error state [e_u, e_x, e, d] at time t via the
    matrix exponential. Valid only for the simplified observer driven by a
    leader input with zero rate, where the error system is linear.

    Raises:
        ValueError
    """
    if es.mode is not Mode.FIRST_ORDER_SIMPLIFIED:
        raise ValueError(f"closed form needs first_order_simplified mode, got {es.mode.value}")
    if es.leader.rate_bound != 0.0:
        raise ValueError("closed form needs a leader input with zero rate")
    n = es.n
    state0 = np.asarray(state0, dtype=float)
    linear_part = linalg.expm(affine_error_matrix(es) * t) @ state0[: 3 * n]
    return np.concatenate([linear_part, state0[3 * n:]])

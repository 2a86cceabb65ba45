from typing import Callable

import numpy as np

from app.errors import NonFiniteState


VectorField = Callable[[np.ndarray, float], np.ndarray]


def step_rk4(f: VectorField, state: np.ndarray, t: float, dt: float) -> np.ndarray:
    """
    One classical Runge-Kutta step of dy/dt = f(y, t).

    Raises:
        NonFiniteState: if any component is NaN or Inf after the step.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    half = 0.5 * dt
    k1 = f(state, t)
    k2 = f(state + half * k1, t + half)
    k3 = f(state + half * k2, t + half)
    k4 = f(state + dt * k3, t + dt)
    new_state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(new_state)):
        raise NonFiniteState(t + dt)
    return new_state


def integrate(f: VectorField, state: np.ndarray, t0: float, dt: float, n_steps: int) -> np.ndarray:
    """Fixed-step RK4 trajectory with n_steps + 1 rows, the first being state."""
    trajectory = np.empty((n_steps + 1, len(state)))
    trajectory[0] = state
    for k in range(n_steps):
        state = step_rk4(f, state, t0 + k * dt, dt)
        trajectory[k + 1] = state
    return trajectory

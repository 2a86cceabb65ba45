from typing import Tuple


def first_order_plant_rate(x: float, u: float) -> float:
    """Single integrator: dx/dt = u."""
    return u


def second_order_plant_rate(x: float, v: float, u: float) -> Tuple[float, float]:
    """Double integrator: dx/dt = v, dv/dt = u."""
    return v, u

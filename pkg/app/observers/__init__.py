from .view import EXACT_SIGN, Bulletin, NeighborEstimate, NeighborView, SignPolicy, sgn
from .input_observers import (
    adaptive_input_observer_rate,
    direct_input_observer_rate,
    simplified_input_observer_rate,
)
from .state_observers import (
    leader_velocity_observer_rate,
    position_observer_rate,
    self_velocity_observer_rate,
)

__all__ = [
    "Bulletin",
    "EXACT_SIGN",
    "NeighborEstimate",
    "NeighborView",
    "SignPolicy",
    "adaptive_input_observer_rate",
    "direct_input_observer_rate",
    "leader_velocity_observer_rate",
    "position_observer_rate",
    "self_velocity_observer_rate",
    "sgn",
    "simplified_input_observer_rate",
]

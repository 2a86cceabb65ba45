"""
What a follower is allowed to see at one instant.

A NeighborView is the only channel through which observers read anything
beyond the follower's own state. The view fixes the wiring once: which
neighbors are read with which weights, and whether the leader is measured.
The numbers themselves live on a Bulletin that the closed loop refreshes
every evaluation. Leader measurements reach a view only when the follower is
linked to the leader (b_i > 0).
"""
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from app.errors import InformationPatternViolation, MissingLeaderMeasurement

CHANNELS = ("uhat0", "xhat0", "vhat0")


@dataclass(frozen=True)
class NeighborEstimate:
    """Estimates follower j publishes to its neighbors."""
    uhat0: float = 0.0
    xhat0: float = 0.0
    vhat0: float = 0.0


class Bulletin:
    """Published estimates of every follower plus the leader's measurements."""

    __slots__ = ("n", "uhat0", "xhat0", "vhat0", "leader_position", "leader_input")

    def __init__(
        self,
        n: int,
        uhat0: Optional[Sequence[float]] = None,
        xhat0: Optional[Sequence[float]] = None,
        vhat0: Optional[Sequence[float]] = None,
        leader_position: Optional[float] = None,
        leader_input: Optional[float] = None,
    ):
        self.n = n
        self.uhat0 = list(uhat0) if uhat0 is not None else [0.0] * n
        self.xhat0 = list(xhat0) if xhat0 is not None else [0.0] * n
        self.vhat0 = list(vhat0) if vhat0 is not None else [0.0] * n
        for name in CHANNELS:
            if len(getattr(self, name)) != n:
                raise ValueError(f"bulletin channel {name} needs {n} entries")
        self.leader_position = leader_position
        self.leader_input = leader_input

    def estimate(self, j: int) -> NeighborEstimate:
        return NeighborEstimate(uhat0=self.uhat0[j], xhat0=self.xhat0[j], vhat0=self.vhat0[j])


@dataclass(frozen=True)
class NeighborView:
    self_index: int
    neighbor_weights: Tuple[Tuple[int, float], ...]
    leader_weight: float
    bulletin: Bulletin
    measures_leader_position: bool = False
    measures_leader_input: bool = False

    def __post_init__(self):
        if self.leader_weight < 0:
            raise InformationPatternViolation(f"follower {self.self_index}: negative leader weight")
        if self.leader_weight == 0 and (self.measures_leader_position or self.measures_leader_input):
            raise InformationPatternViolation(
                f"follower {self.self_index} is not linked to the leader but was given leader data"
            )
        for j, a in self.neighbor_weights:
            if a <= 0 or j == self.self_index or not 0 <= j < self.bulletin.n:
                raise InformationPatternViolation(
                    f"follower {self.self_index}: ({j}, {a}) is not a neighbor on a bulletin of {self.bulletin.n}"
                )

    @property
    def linked_to_leader(self) -> bool:
        return self.leader_weight > 0

    @property
    def leader_position(self) -> Optional[float]:
        return self.bulletin.leader_position if self.measures_leader_position else None

    @property
    def leader_input(self) -> Optional[float]:
        return self.bulletin.leader_input if self.measures_leader_input else None

    @property
    def neighbor_estimates(self) -> Dict[int, NeighborEstimate]:
        return {j: self.bulletin.estimate(j) for j, _ in self.neighbor_weights}

    def require_leader_position(self) -> float:
        """x0 scaled out when unlinked; raises if linked but absent."""
        if self.leader_weight <= 0:
            return 0.0
        x0 = self.leader_position
        if x0 is None:
            raise MissingLeaderMeasurement(f"follower {self.self_index} needs the leader position")
        return x0

    def require_leader_input(self) -> float:
        if self.leader_weight <= 0:
            return 0.0
        u0 = self.leader_input
        if u0 is None:
            raise MissingLeaderMeasurement(f"follower {self.self_index} needs the leader input")
        return u0

    def disagreement(self, own: float, channel: str) -> float:
        """sum_j a_ij (own - estimate_j) over one published channel."""
        values = getattr(self.bulletin, channel)
        total = 0.0
        for j, a in self.neighbor_weights:
            total += a * (own - values[j])
        return total


@dataclass(frozen=True)
class SignPolicy:
    """Regularization of sgn(.): boundary_layer = 0 keeps the exact sign."""
    boundary_layer: float = 0.0

    def __post_init__(self):
        if self.boundary_layer < 0:
            raise ValueError("boundary_layer must be non-negative")


EXACT_SIGN = SignPolicy()


def sgn(x: float, p: SignPolicy = EXACT_SIGN) -> float:
    """Sign with sgn(0) = 0, or a linear boundary layer of half-width eps."""
    eps = p.boundary_layer
    if eps == 0:
        if x > 0:
            return 1.0
        if x < 0:
            return -1.0
        return 0.0
    return min(1.0, max(-1.0, x / eps))

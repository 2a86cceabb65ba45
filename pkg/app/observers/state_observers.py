from typing import NamedTuple

from app.observers.view import NeighborView


class LeaderVelocityObserverRate(NamedTuple):
    z_rate: float
    vhat0_out: float


class SelfVelocityObserverRate(NamedTuple):
    zbar_rate: float
    vhat_out: float


def position_observer_rate(view: NeighborView, xhat_i: float, c: float, feed: float) -> float:
    """
    Leader-position observer.

    feed is the follower's estimate of the leader's position rate: uhat0 for
    single integrators, vhat0 for double integrators.
    """
    b = view.leader_weight
    x0 = view.require_leader_position()
    return -c * (view.disagreement(xhat_i, "xhat0") + b * (xhat_i - x0)) + feed


def leader_velocity_observer_rate(
    view: NeighborView,
    z_i: float,
    l: float,
    uhat_i: float,
) -> LeaderVelocityObserverRate:
    b = view.leader_weight
    x0 = view.require_leader_position()

    vhat0 = z_i + b * l * x0
    z_rate = -b * l * z_i - b * b * l * l * x0 - view.disagreement(vhat0, "vhat0") + uhat_i
    return LeaderVelocityObserverRate(z_rate=z_rate, vhat0_out=vhat0)


def self_velocity_observer_rate(x_i: float, zbar_i: float, l: float, u_i: float) -> SelfVelocityObserverRate:
    """Local velocity observer from own position and applied input only."""
    vhat = zbar_i + l * x_i
    return SelfVelocityObserverRate(zbar_rate=-l * zbar_i - l * l * x_i + u_i, vhat_out=vhat)

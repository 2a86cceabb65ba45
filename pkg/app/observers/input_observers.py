"""
Distributed estimators of the leader's input u0.

Each function returns the time-derivatives of one follower's observer
state together with the observer's current output.
"""
from typing import NamedTuple

from app.observers.view import EXACT_SIGN, NeighborView, SignPolicy, sgn


class AdaptiveObserverRate(NamedTuple):
    z_rate: float
    d_rate: float
    uhat_out: float


class SimplifiedObserverRate(NamedTuple):
    z_rate: float
    uhat_out: float


class DirectObserverRate(NamedTuple):
    uhat_rate: float
    d_rate: float


def adaptive_input_observer_rate(
    view: NeighborView,
    z_i: float,
    d_i: float,
    tau_i: float,
    l: float,
    p: SignPolicy = EXACT_SIGN,
) -> AdaptiveObserverRate:
    """
    Adaptive sliding input observer built on the leader position.

        uhat = z + b*l*x0
        r    = sum_j a_ij (uhat_i - uhat_j) + l*b (uhat_i - u0)
        dz   = -b*l*z - b^2*l^2*x0 - sum_j a_ij (uhat_i - uhat_j) - d*sgn(r)
        dd   = tau*|r|

    The adaptation uses the exact |r| whatever the sign policy.
    """
    b = view.leader_weight
    x0 = view.require_leader_position()
    u0 = view.require_leader_input()

    uhat = z_i + b * l * x0
    consensus = view.disagreement(uhat, "uhat0")
    r = consensus + l * b * (uhat - u0)

    z_rate = -b * l * z_i - b * b * l * l * x0 - consensus - d_i * sgn(r, p)
    d_rate = tau_i * abs(r)
    return AdaptiveObserverRate(z_rate=z_rate, d_rate=d_rate, uhat_out=uhat)


def simplified_input_observer_rate(view: NeighborView, z_i: float, l: float) -> SimplifiedObserverRate:
    """Same structure without the sign and adaptive terms; never reads u0."""
    b = view.leader_weight
    x0 = view.require_leader_position()

    uhat = z_i + b * l * x0
    consensus = view.disagreement(uhat, "uhat0")
    z_rate = -b * l * z_i - b * b * l * l * x0 - consensus
    return SimplifiedObserverRate(z_rate=z_rate, uhat_out=uhat)


def direct_input_observer_rate(
    view: NeighborView,
    uhat_i: float,
    d_i: float,
    tau_i: float,
    p: SignPolicy = EXACT_SIGN,
) -> DirectObserverRate:
    """
    Input observer that integrates the estimate directly; no x0 needed.

        r     = sum_j a_ij (uhat_i - uhat_j) + b (uhat_i - u0)
        duhat = -r - d*sgn(r)
        dd    = tau*|r|
    """
    b = view.leader_weight
    u0 = view.require_leader_input()

    r = view.disagreement(uhat_i, "uhat0") + b * (uhat_i - u0)
    return DirectObserverRate(uhat_rate=-r - d_i * sgn(r, p), d_rate=tau_i * abs(r))

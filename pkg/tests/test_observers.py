import numpy as np
import pytest

from app.errors import InformationPatternViolation, MissingLeaderMeasurement
from app.observers import (
    Bulletin,
    NeighborEstimate,
    NeighborView,
    SignPolicy,
    adaptive_input_observer_rate,
    direct_input_observer_rate,
    leader_velocity_observer_rate,
    position_observer_rate,
    self_velocity_observer_rate,
    sgn,
    simplified_input_observer_rate,
)


def lone_follower(x0=None, u0=None, b=1.0) -> NeighborView:
    """Single follower with no neighbors."""
    return NeighborView(
        self_index=0,
        neighbor_weights=(),
        leader_weight=b,
        bulletin=Bulletin(1, leader_position=x0, leader_input=u0),
        measures_leader_position=b > 0 or x0 is not None,
        measures_leader_input=b > 0 or u0 is not None,
    )


def unlinked_with_neighbor(**estimate) -> NeighborView:
    channels = {name: [0.0, value] for name, value in estimate.items()}
    return NeighborView(
        self_index=0,
        neighbor_weights=((1, 1.0),),
        leader_weight=0.0,
        bulletin=Bulletin(2, **channels),
    )


def test_sgn():
    assert sgn(3.2) == 1.0
    assert sgn(-0.1) == -1.0
    assert sgn(0.0) == 0.0
    assert sgn(-0.05, SignPolicy(boundary_layer=0.1)) == pytest.approx(-0.5)
    assert sgn(4.0, SignPolicy(boundary_layer=0.1)) == 1.0


def test_sign_policy_rejects_negative_layer():
    with pytest.raises(ValueError):
        SignPolicy(boundary_layer=-1e-3)


class TestNeighborView:
    def test_unlinked_follower_cannot_receive_leader_data(self):
        with pytest.raises(InformationPatternViolation):
            lone_follower(x0=1.0, b=0.0)
        with pytest.raises(InformationPatternViolation):
            lone_follower(u0=1.0, b=0.0)

    @pytest.mark.parametrize("weights", [((2, 1.0),), ((0, 1.0),), ((1, 0.0),), ((1, -1.0),)])
    def test_rejects_non_neighbors(self, weights):
        with pytest.raises(InformationPatternViolation):
            NeighborView(
                self_index=0,
                neighbor_weights=weights,
                leader_weight=0.0,
                bulletin=Bulletin(2),
            )

    def test_estimates_follow_neighbors(self):
        board = Bulletin(3, uhat0=[0.1, 0.2, 0.3], xhat0=[1.0, 2.0, 3.0])
        view = NeighborView(self_index=0, neighbor_weights=((2, 0.5),), leader_weight=0.0, bulletin=board)
        assert view.neighbor_estimates == {2: NeighborEstimate(uhat0=0.3, xhat0=3.0)}

    def test_reads_fresh_bulletin_values(self):
        board = Bulletin(2, uhat0=[0.0, 1.0])
        view = NeighborView(self_index=0, neighbor_weights=((1, 2.0),), leader_weight=0.0, bulletin=board)
        assert view.disagreement(0.0, "uhat0") == pytest.approx(-2.0)
        board.uhat0 = [0.0, -1.0]
        assert view.disagreement(0.0, "uhat0") == pytest.approx(2.0)

    def test_unlinked_view_hides_posted_leader_data(self):
        board = Bulletin(2, leader_position=4.0, leader_input=1.0)
        view = NeighborView(self_index=1, neighbor_weights=((0, 1.0),), leader_weight=0.0, bulletin=board)
        assert view.leader_position is None
        assert view.leader_input is None
        assert view.require_leader_position() == 0.0

    def test_bulletin_channel_length(self):
        with pytest.raises(ValueError):
            Bulletin(3, xhat0=[0.0, 1.0])

    def test_linked_follower_missing_measurement(self):
        view = lone_follower(x0=None, u0=None)
        with pytest.raises(MissingLeaderMeasurement):
            adaptive_input_observer_rate(view, 0.0, 0.0, 1.0, 1.0)
        with pytest.raises(MissingLeaderMeasurement):
            direct_input_observer_rate(view, 0.0, 0.0, 1.0)
        with pytest.raises(MissingLeaderMeasurement):
            position_observer_rate(view, 0.0, 0.5, feed=0.0)

    def test_unlinked_follower_reads_zero(self):
        view = unlinked_with_neighbor()
        assert view.require_leader_position() == 0.0
        assert view.require_leader_input() == 0.0


class TestAdaptiveInputObserver:
    def test_all_zero_fixed_point(self):
        out = adaptive_input_observer_rate(lone_follower(0.0, 0.0), 0.0, 0.0, 1.0, 1.0)
        assert out == (0.0, 0.0, 0.0)

    def test_linked_follower(self):
        out = adaptive_input_observer_rate(lone_follower(2.0, 1.0), 0.0, 0.0, 1.0, 1.0)
        assert out.uhat_out == 2.0
        assert out.z_rate == pytest.approx(-4.0)
        assert out.d_rate == pytest.approx(1.0)

    def test_unlinked_follower_with_neighbor(self):
        view = unlinked_with_neighbor(uhat0=0.5)
        out = adaptive_input_observer_rate(view, 0.7, 0.2, 1.0, 1.0)
        assert out.z_rate == pytest.approx(-0.4)
        assert out.d_rate == pytest.approx(0.2)

    def test_adaptation_ignores_boundary_layer(self):
        view = unlinked_with_neighbor(uhat0=0.5)
        exact = adaptive_input_observer_rate(view, 0.7, 0.2, 1.0, 1.0)
        smooth = adaptive_input_observer_rate(view, 0.7, 0.2, 1.0, 1.0, SignPolicy(boundary_layer=1.0))
        assert smooth.d_rate == exact.d_rate
        assert smooth.z_rate == pytest.approx(-0.2 - 0.2 * 0.2)

    def test_gain_rate_never_negative(self, rng):
        for _ in range(500):
            z, d, x0, u0, other = rng.uniform(-5, 5, 5)
            view = NeighborView(
                self_index=0,
                neighbor_weights=((1, 1.0),),
                leader_weight=1.0,
                bulletin=Bulletin(2, uhat0=[z, other], leader_position=x0, leader_input=u0),
                measures_leader_position=True,
                measures_leader_input=True,
            )
            assert adaptive_input_observer_rate(view, z, abs(d), 2.0, 1.0).d_rate >= 0.0
            assert direct_input_observer_rate(view, z, abs(d), 2.0).d_rate >= 0.0


def test_simplified_observer():
    assert simplified_input_observer_rate(lone_follower(0.0), 0.0, 1.0) == (0.0, 0.0)
    out = simplified_input_observer_rate(lone_follower(1.0), -1.0, 1.0)
    assert out.uhat_out == 0.0
    assert out.z_rate == pytest.approx(0.0)


def test_simplified_observer_never_reads_leader_input():
    view = lone_follower(x0=1.0, u0=None)
    simplified_input_observer_rate(view, 0.3, 1.0)


class TestDirectInputObserver:
    def test_consensus_fixed_point(self):
        out = direct_input_observer_rate(lone_follower(u0=0.4), 0.4, 3.0, 1.0)
        assert out == (0.0, 0.0)

    def test_linked_follower(self):
        out = direct_input_observer_rate(lone_follower(u0=0.0), 1.0, 0.5, 1.0)
        assert out.uhat_rate == pytest.approx(-1.5)
        assert out.d_rate == pytest.approx(1.0)

    def test_local_consensus(self):
        out = direct_input_observer_rate(unlinked_with_neighbor(uhat0=0.3), 0.3, 1.0, 1.0)
        assert out == (0.0, 0.0)

    def test_needs_no_leader_position(self):
        direct_input_observer_rate(lone_follower(x0=None, u0=0.0), 1.0, 0.0, 1.0)


class TestPositionObserver:
    def test_rides_the_leader(self):
        assert position_observer_rate(lone_follower(x0=1.5), 1.5, 0.5, feed=0.8) == pytest.approx(0.8)

    def test_linked_follower(self):
        assert position_observer_rate(lone_follower(x0=0.0), 2.0, 0.5, feed=0.0) == pytest.approx(-1.0)

    def test_local_consensus(self):
        assert position_observer_rate(unlinked_with_neighbor(xhat0=1.0), 1.0, 0.5, feed=0.0) == 0.0


class TestVelocityObservers:
    def test_leader_velocity_zero_state(self):
        assert leader_velocity_observer_rate(lone_follower(x0=0.0), 0.0, 1.0, 0.0) == (0.0, 0.0)

    def test_leader_velocity_linked(self):
        out = leader_velocity_observer_rate(lone_follower(x0=1.0), 0.0, 1.0, 0.0)
        assert out.vhat0_out == 1.0
        assert out.z_rate == pytest.approx(-1.0)

    def test_leader_velocity_on_zero_error_manifold(self):
        """With vhat0 = v0 and uhat = u0 the estimate moves like the leader velocity."""
        x0, v0, u0, l = 0.7, -0.3, 0.25, 1.0
        z = v0 - l * x0
        out = leader_velocity_observer_rate(lone_follower(x0=x0), z, l, u0)
        assert out.vhat0_out == pytest.approx(v0)
        # d(vhat0)/dt = dz/dt + b l dx0/dt
        assert out.z_rate + l * v0 == pytest.approx(u0)

    def test_self_velocity(self):
        assert self_velocity_observer_rate(0.0, 0.0, 1.0, 0.0) == (0.0, 0.0)
        out = self_velocity_observer_rate(2.0, -1.0, 1.0, 3.0)
        assert out.vhat_out == 1.0
        assert out.zbar_rate == pytest.approx(2.0)

    def test_self_velocity_error_decays(self):
        """d(vhat - v)/dt = -l (vhat - v) for any applied input."""
        x, v, zbar, l, u = 1.2, 0.4, -0.7, 1.5, 2.0
        out = self_velocity_observer_rate(x, zbar, l, u)
        vhat_rate = out.zbar_rate + l * v
        assert vhat_rate - u == pytest.approx(-l * (out.vhat_out - v))

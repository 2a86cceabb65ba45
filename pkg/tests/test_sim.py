from dataclasses import replace
import math

import numpy as np
import pytest

from app.errors import ConfigInvalid, NonFiniteState
from app.graph.topology import build_topology
from app.signals.leader import Constant
from app.sim import (
    InitialStates,
    Mode,
    assemble_vector_field,
    compute_metrics,
    convergence_time,
    initial_state_vector,
    integrate,
    run,
    step_rk4,
    validate_config,
)
from app.sim.result import FIRST_ORDER_COLUMNS, column_names
from tests.conftest import LEADER_LINKS, RING

# sup-norm gap between dt and dt/2 runs, in units of dt**4
REFINEMENT_CONSTANT = 20.0


# RK4

def test_rk4_zero_field_keeps_state():
    state = np.array([1.0, -2.0, 3.5])
    new = step_rk4(lambda y, t: np.zeros_like(y), state, 0.0, 0.1)
    assert np.array_equal(new, state)


def test_rk4_exponential_decay():
    new = step_rk4(lambda y, t: -y, np.array([1.0]), 0.0, 0.1)
    assert abs(new[0] - 0.9048375) < 1e-7
    assert abs(new[0] - math.exp(-0.1)) < 1e-6


def test_rk4_constant_rate_is_exact():
    new = step_rk4(lambda y, t: np.ones_like(y), np.array([2.0]), 0.0, 0.5)
    assert new[0] == 2.5


def test_rk4_rejects_non_positive_dt():
    with pytest.raises(ValueError):
        step_rk4(lambda y, t: y, np.array([1.0]), 0.0, 0.0)


def test_rk4_non_finite_reports_time():
    with pytest.raises(NonFiniteState) as exc:
        step_rk4(lambda y, t: np.array([np.inf]), np.array([1.0]), 1.0, 0.25)
    assert exc.value.t == pytest.approx(1.25)


def test_integrate_rows():
    trajectory = integrate(lambda y, t: -y, np.array([1.0]), 0.0, 0.01, 100)
    assert trajectory.shape == (101, 1)
    assert trajectory[0, 0] == 1.0
    assert abs(trajectory[-1, 0] - math.exp(-1.0)) < 1e-9


# Vector field

def test_state_dimensions(first_order_config, second_order_config):
    assert assemble_vector_field(first_order_config).dimension == 21
    assert assemble_vector_field(second_order_config).dimension == 37
    assert len(initial_state_vector(first_order_config)) == 21
    assert len(initial_state_vector(second_order_config)) == 37


def test_vector_field_is_pure(first_order_config):
    loop = assemble_vector_field(first_order_config)
    state = initial_state_vector(first_order_config)
    before = state.copy()
    first = loop(state, 0.3)
    second = loop(state, 0.3)
    assert np.array_equal(first, second)
    assert np.array_equal(state, before)


def test_views_are_wired_once(first_order_config):
    loop = assemble_vector_field(first_order_config)
    state = initial_state_vector(first_order_config)
    views = loop.neighbor_views(state, 0.0)
    loop(state + 0.1, 0.2)
    assert loop.neighbor_views(state + 0.2, 0.4) is views
    for view, b in zip(views, LEADER_LINKS):
        assert (view.leader_position is not None) == (b > 0)
        assert (view.leader_input is not None) == (b > 0)


def test_simplified_views_never_carry_leader_input(first_order_config):
    cfg = replace(first_order_config, mode=Mode.FIRST_ORDER_SIMPLIFIED)
    loop = assemble_vector_field(cfg)
    views = loop.neighbor_views(initial_state_vector(cfg), 1.0)
    assert all(view.leader_input is None for view in views)
    assert views[0].leader_position == 0.0


def test_rk4_refinement_is_fourth_order(first_order_config):
    cfg = replace(first_order_config, mode=Mode.FIRST_ORDER_SIMPLIFIED, leader_signal=Constant(0.5))
    loop = assemble_vector_field(cfg)
    y0 = initial_state_vector(cfg)
    dt = 0.01
    coarse = integrate(loop, y0, 0.0, dt, 100)[-1]
    fine = integrate(loop, y0, 0.0, dt / 2, 200)[-1]
    assert np.abs(coarse - fine).max() <= max(REFINEMENT_CONSTANT * dt ** 4, 1e-12)


# Config validation

@pytest.mark.parametrize("changes", [
    {"dt": 0.0},
    {"dt": -1e-3},
    {"t_end": 1e-4},
    {"t_end": math.inf},
    {"dt": math.nan},
    {"record_stride": 0},
])
def test_validate_config_rejects(first_order_config, changes):
    with pytest.raises(ConfigInvalid):
        validate_config(replace(first_order_config, **changes))


def test_validate_config_dimension_mismatch(first_order_config):
    cfg = replace(first_order_config, initial=InitialStates(follower_x=(0.0, 1.0)))
    with pytest.raises(ConfigInvalid):
        validate_config(cfg)


def test_validate_config_second_order_needs_k2(second_order_config):
    gains = replace(second_order_config.gains, k2=None)
    with pytest.raises(ConfigInvalid):
        validate_config(replace(second_order_config, gains=gains))


def test_validate_config_velocity_in_first_order(first_order_config):
    initial = InitialStates(follower_x=first_order_config.initial.follower_x, follower_v=(0.0,) * 5)
    with pytest.raises(ConfigInvalid):
        validate_config(replace(first_order_config, initial=initial))


# Runs

def test_run_records_every_stride(first_order_config):
    result = run(first_order_config)
    assert result.metadata["step_count"] == 500
    assert np.allclose(result.times, np.arange(6) * 0.1)
    for name, data in result.series.items():
        assert len(data) == len(result.times), name


def test_run_is_deterministic(first_order_config):
    a = run(first_order_config)
    b = run(first_order_config)
    assert np.array_equal(a.times, b.times)
    for name in a.series:
        assert np.array_equal(a.series[name], b.series[name])


def test_adaptive_gains_non_decreasing(first_order_config):
    result = run(replace(first_order_config, record_stride=1))
    assert np.all(np.diff(result.series["d"], axis=0) >= 0)


def test_errors_match_series(second_order_config):
    result = run(second_order_config)
    s = result.series
    assert np.abs(result.errors["e_u"] - (s["uhat0"] - s["u0"][:, None])).max() <= 1e-12
    assert np.abs(result.errors["e"] - (s["x"] - s["x0"][:, None])).max() <= 1e-12
    assert np.abs(result.errors["e_v"] - (s["vhat"] - s["v"])).max() <= 1e-12
    assert set(result.errors) == {"e", "e_vel", "e_u", "e_0v", "e_x", "e_v"}


def test_first_sample_is_initial_state(first_order_config):
    result = run(first_order_config)
    assert result.series["x0"][0] == 0.0
    assert tuple(result.series["x"][0]) == first_order_config.initial.follower_x
    assert np.all(result.series["d"][0] == 0.0)


def test_perfect_initialization_stays_on_manifold(first_order_config):
    # simplified observer, u0 = 0.5: z_i = u0 - b_i*l*x0 with x0(0) = 0
    cfg = replace(
        first_order_config,
        mode=Mode.FIRST_ORDER_SIMPLIFIED,
        leader_signal=Constant(0.5),
        initial=InitialStates(follower_x=(0.0,) * 5, z=(0.5,) * 5, xhat0=(0.0,) * 5),
        t_end=5.0,
    )
    result = run(cfg)
    for name in ("e", "e_u", "e_x"):
        assert result.error_magnitude(name).max() <= 1e-9, name


def test_diverging_run_raises(first_order_config):
    # explicit RK4 overflows with an absurd position gain
    gains = replace(first_order_config.gains, k1=1e200)
    with pytest.raises(NonFiniteState):
        run(replace(first_order_config, gains=gains, t_end=0.01))


def test_unreachable_leader_still_runs(first_order_config):
    cfg = replace(first_order_config, topology=build_topology(RING, [0, 0, 0, 0, 0]))
    result = run(cfg)
    assert np.all(np.isfinite(result.series["x"]))


# Columns and metrics

def test_column_order(first_order_config):
    result = run(first_order_config)
    columns = list(result.columns())
    expected = ["t"]
    for name in FIRST_ORDER_COLUMNS:
        expected += column_names(name, 5)
    assert columns == expected
    assert columns[:3] == ["t", "x0", "x1"]


def test_convergence_time_examples():
    times = np.linspace(0.0, 20.0, 2001)
    assert convergence_time(times, np.zeros_like(times), 0.1) == 0.0
    assert convergence_time(times, np.ones_like(times), 0.5) is None

    crossing = convergence_time(times, np.exp(-times), math.exp(-5.0))
    assert abs(crossing - 5.0) <= 0.01 + 1e-12


def test_convergence_time_requires_positive_tol():
    with pytest.raises(ValueError):
        convergence_time(np.array([0.0]), np.array([0.0]), 0.0)


def test_compute_metrics(first_order_config):
    result = run(first_order_config)
    result.metadata["config_hash"] = "abc"
    metrics = compute_metrics(result, tol=0.05)
    assert metrics["scenario_id"] == "ring_first_order"
    assert metrics["mode"] == "first_order_adaptive"
    assert set(metrics["channels"]) == {"tracking", "input_estimation", "position_estimation"}
    tracking = metrics["channels"]["tracking"]
    assert tracking["columns"] == ["x0", "x1", "x2", "x3", "x4", "x5"]
    assert tracking["final_error"] == pytest.approx(result.error_magnitude("e")[-1])
    assert metrics["adaptive_gains"]["non_decreasing"] is True
    assert metrics["config_hash"] == "abc"
    assert metrics["step_count"] == 500


def test_fixed_gain_observer_keeps_d(first_order_config):
    gains = replace(first_order_config.gains, adaptive=False)
    initial = replace(first_order_config.initial, d=(2.0,) * 5)
    result = run(replace(first_order_config, gains=gains, initial=initial))
    assert np.all(result.series["d"] == 2.0)

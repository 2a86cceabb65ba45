import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.errors import NoAnalyticRate, TableOutOfRange
from app.signals import (
    Constant,
    DecayingToConstant,
    FirstOrderWorld,
    Polynomial,
    SampledTable,
    SecondOrderWorld,
    Sinusoid,
    StateLayout,
    first_order_plant_rate,
    leader_input,
    leader_input_rate,
    second_order_plant_rate,
    split_state,
)

REFERENCE_INPUT = Sinusoid(amplitude=1.0, angular_frequency=0.2 * math.pi)

ANALYTIC = [
    REFERENCE_INPUT,
    Sinusoid(amplitude=-2.0, angular_frequency=1.5, phase=0.3),
    Constant(level=0.7),
    DecayingToConstant(constant=1.0, transient_amplitude=2.0, decay_rate=0.5),
    Polynomial(coefficients=(0.5, -0.25)),
]


def test_reference_sinusoid():
    assert leader_input(REFERENCE_INPUT, 0.0) == 0.0
    assert leader_input(REFERENCE_INPUT, 2.5) == pytest.approx(1.0)
    assert leader_input_rate(REFERENCE_INPUT, 0.0) == pytest.approx(0.2 * math.pi)


def test_constant():
    c = Constant(level=0.7)
    for t in (0.0, 3.0, 1e4):
        assert leader_input(c, t) == 0.7
        assert leader_input_rate(c, t) == 0.0


def test_decaying_rate_vanishes():
    s = DecayingToConstant(constant=1.0, transient_amplitude=2.0, decay_rate=0.5)
    assert leader_input_rate(s, 0.0) == pytest.approx(-1.0)
    assert leader_input_rate(s, 2.0) == pytest.approx(-math.exp(-1.0))
    assert abs(leader_input_rate(s, 100.0)) < 1e-20
    assert leader_input(s, 100.0) == pytest.approx(1.0)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        leader_input(REFERENCE_INPUT, -0.1)
    with pytest.raises(ValueError):
        leader_input_rate(REFERENCE_INPUT, -0.1)


@pytest.mark.parametrize("signal", ANALYTIC, ids=lambda s: s.kind)
def test_rate_matches_central_difference(signal):
    h = 1e-4
    for t in np.linspace(h, 50.0, 200):
        fd = (leader_input(signal, t + h) - leader_input(signal, t - h)) / (2 * h)
        bound = 10 * h * h * signal.third_derivative_bound + 1e-9
        assert abs(fd - leader_input_rate(signal, t)) <= bound


@pytest.mark.parametrize("signal", ANALYTIC, ids=lambda s: s.kind)
def test_rate_bound_holds_on_grid(signal):
    grid = np.linspace(0.0, 100.0, 10_000)
    rates = np.array([leader_input_rate(signal, t) for t in grid])
    assert np.all(np.abs(rates) <= signal.rate_bound + 1e-12)


def test_table_interpolates_and_holds():
    table = SampledTable(times=(0.0, 1.0, 2.0), values=(0.0, 2.0, 1.0))
    assert leader_input(table, 0.5) == pytest.approx(1.0)
    assert leader_input(table, 1.5) == pytest.approx(1.5)
    assert not table.held_beyond_range

    assert leader_input(table, 5.0) == 1.0
    assert table.held_beyond_range
    assert table.rate_bound is None


def test_table_has_no_rate():
    table = SampledTable(times=(0.0, 1.0), values=(0.0, 1.0))
    with pytest.raises(NoAnalyticRate):
        leader_input_rate(table, 0.5)


def test_strict_table_raises_beyond_range():
    table = SampledTable(times=(0.0, 1.0), values=(0.0, 1.0), strict=True)
    with pytest.raises(TableOutOfRange):
        leader_input(table, 1.5)


def test_table_validation():
    with pytest.raises(ValueError):
        SampledTable(times=(0.0, 0.0), values=(1.0, 2.0))
    with pytest.raises(ValueError):
        SampledTable(times=(0.5, 1.0), values=(1.0, 2.0))
    with pytest.raises(ValueError):
        SampledTable(times=(0.0, 1.0), values=(1.0,))


def test_polynomial_degree_limit():
    with pytest.raises(ValueError):
        Polynomial(coefficients=(1.0, 2.0, 3.0))


def test_plants():
    assert first_order_plant_rate(5.0, -2.0) == -2.0
    assert first_order_plant_rate(0.0, 0.0) == 0.0
    assert first_order_plant_rate(0.0, leader_input(REFERENCE_INPUT, 2.5)) == pytest.approx(1.0)
    assert second_order_plant_rate(1.0, 2.0, -3.0) == (2.0, -3.0)
    assert second_order_plant_rate(0.0, 0.0, 0.0) == (0.0, 0.0)


def test_state_layout_dimensions():
    assert StateLayout.for_order(5, second_order=False).dimension == 21
    assert StateLayout.for_order(5, second_order=True).dimension == 37


def test_world_vector_roundtrip():
    n = 3
    world = SecondOrderWorld(
        t=0.0, x0=1.0, v0=2.0,
        x=np.arange(3.0), v=np.arange(3.0) + 10, uhat0=np.ones(3), d=np.full(3, 0.5),
        zv=np.zeros(3), xhat0=-np.ones(3), zbar=np.full(3, 7.0),
    )
    y = world.to_vector()
    back = SecondOrderWorld.from_vector(y, n)
    assert back.x0 == 1.0 and back.v0 == 2.0
    assert_allclose(back.zbar, world.zbar)

    parts = split_state(y, StateLayout.for_order(n, second_order=True))
    assert_allclose(parts["v"], world.v)
    assert_allclose(parts["d"], world.d)


def test_first_order_world_layout():
    world = FirstOrderWorld(t=0.0, x0=4.0, x=np.ones(2), z=np.full(2, 2.0), d=np.full(2, 3.0), xhat0=np.zeros(2))
    assert world.to_vector().tolist() == [4.0, 1.0, 1.0, 2.0, 2.0, 0.0, 0.0, 3.0, 3.0]

"""Shared fixtures: the five-follower ring of the reference runs and random graphs."""
from dataclasses import replace
from pathlib import Path
import math

import networkx as nx
import numpy as np
import pytest

from app.control.gains import Gains
from app.graph.topology import build_topology
from app.signals.leader import Sinusoid
from app.sim.config import InitialStates, Mode, OutputOptions, SimConfig

PROJECT_ROOT = Path(__file__).parent.parent
SCENARIO_DIR = PROJECT_ROOT / "data" / "scenarios"

RING = [
    [0, 1, 0, 0, 1],
    [1, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1],
    [1, 0, 0, 1, 0],
]
LEADER_LINKS = [1, 0, 0, 0, 0]
FOLLOWER_X = (3.0, 0.0, -2.0, 1.0, -1.0)
FOLLOWER_V = (1.0, -2.0, 3.0, 0.0, -1.0)


@pytest.fixture
def scenario_dir() -> Path:
    return SCENARIO_DIR


@pytest.fixture
def ring_topology():
    return build_topology(RING, LEADER_LINKS)


@pytest.fixture
def first_order_config(ring_topology) -> SimConfig:
    """Reference first-order setup on a short horizon."""
    return SimConfig(
        scenario_id="ring_first_order",
        topology=ring_topology,
        gains=Gains(k1=1.0, l=1.0, c=0.5, tau=(1.0,) * 5),
        leader_signal=Sinusoid(amplitude=1.0, angular_frequency=0.2 * math.pi),
        mode=Mode.FIRST_ORDER_ADAPTIVE,
        initial=InitialStates(follower_x=FOLLOWER_X),
        dt=1e-3,
        t_end=0.5,
        record_stride=100,
        outputs=OutputOptions(),
    )


@pytest.fixture
def second_order_config(first_order_config) -> SimConfig:
    return replace(
        first_order_config,
        scenario_id="ring_second_order",
        gains=Gains(k1=1.0, k2=1.0, l=1.0, c=0.5, tau=(1.0,) * 5),
        mode=Mode.SECOND_ORDER,
        initial=InitialStates(follower_x=FOLLOWER_X, follower_v=FOLLOWER_V),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def random_connected_graph(rng):
    """Factory: weighted adjacency of a random connected graph on n nodes."""
    def make(n: int) -> np.ndarray:
        while True:
            graph = nx.gnp_random_graph(n, 0.5, seed=int(rng.integers(0, 2**31)))
            if nx.is_connected(graph):
                break
        for u, v in graph.edges:
            graph[u][v]["weight"] = float(rng.uniform(0.5, 2.0))
        return nx.to_numpy_array(graph, weight="weight")
    return make

from dataclasses import dataclass
from typing import Sequence, Tuple
import logging

import networkx as nx
import numpy as np
from scipy import linalg

from app.config import settings
from app.errors import (
    AsymmetricAdjacency,
    DimensionMismatch,
    EigenSolverFailure,
    NegativeWeight,
    NonPositiveGain,
    NonzeroDiagonal,
)

logger = logging.getLogger(__name__)

LEADER_NODE = 0


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Topology:
    """
    Undirected follower graph plus the leader's links into it.

    Followers are indexed 0..n-1 here; node 0 of the augmented graph is the
    leader and follower i is node i + 1 there.
    """
    adjacency: np.ndarray
    leader_adjacency: np.ndarray

    @property
    def n_followers(self) -> int:
        return int(self.adjacency.shape[0])

    def neighbors(self, i: int) -> Tuple[Tuple[int, float], ...]:
        """Pairs (j, a_ij) for every j with a_ij > 0."""
        row = self.adjacency[i]
        return tuple((int(j), float(row[j])) for j in np.flatnonzero(row > 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Topology):
            return NotImplemented
        return (
            np.array_equal(self.adjacency, other.adjacency)
            and np.array_equal(self.leader_adjacency, other.leader_adjacency)
        )

    def __hash__(self) -> int:
        return hash((self.adjacency.tobytes(), self.leader_adjacency.tobytes()))


@dataclass(frozen=True)
class GraphMatrices:
    laplacian: np.ndarray
    h1: np.ndarray  # l*B + L
    h2: np.ndarray  # B + L


def build_topology(adjacency: Sequence[Sequence[float]], leader_adjacency: Sequence[float]) -> Topology:
    """
    Validate and freeze a topology. The adjacency is never symmetrized.

    Raises:
        DimensionMismatch, AsymmetricAdjacency, NegativeWeight, NonzeroDiagonal
    """
    a = np.array(adjacency, dtype=float)
    b = np.array(leader_adjacency, dtype=float)

    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"adjacency must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise DimensionMismatch("topology needs at least one follower")
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"leader_adjacency has shape {b.shape}, expected ({a.shape[0]},)"
        )
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise NegativeWeight("weights must be finite")
    if (a < 0).any() or (b < 0).any():
        raise NegativeWeight("weights must be non-negative")
    if np.any(np.diag(a) != 0):
        raise NonzeroDiagonal("adjacency diagonal must be zero")
    if not np.array_equal(a, a.T):
        i, j = np.argwhere(a != a.T)[0]
        raise AsymmetricAdjacency(f"a[{i}][{j}]={a[i, j]} differs from a[{j}][{i}]={a[j, i]}")

    if not (b > 0).any():
        logger.warning("No follower is linked to the leader; the leader is unreachable")

    return Topology(adjacency=_frozen(a), leader_adjacency=_frozen(b))


def laplacian(t: Topology) -> np.ndarray:
    """L = diag(row sums of A) - A."""
    a = np.array(t.adjacency)
    return np.diag(a.sum(axis=1)) - a


def h_matrices(t: Topology, l: float) -> GraphMatrices:
    """Coupling matrices H1 = l*B + L and H2 = B + L."""
    if not l > 0:
        raise NonPositiveGain(f"l must be positive, got {l}")
    lap = laplacian(t)
    b = np.diag(t.leader_adjacency)
    return GraphMatrices(laplacian=lap, h1=l * b + lap, h2=b + lap)


def augmented_graph(t: Topology) -> nx.Graph:
    """Leader node 0 plus followers 1..n; any positive weight is an edge."""
    graph = nx.Graph()
    graph.add_nodes_from(range(t.n_followers + 1))
    for i in range(t.n_followers):
        if t.leader_adjacency[i] > 0:
            graph.add_edge(LEADER_NODE, i + 1)
        for j, _ in t.neighbors(i):
            graph.add_edge(i + 1, j + 1)
    return graph


def is_leader_globally_reachable(t: Topology) -> bool:
    reached = nx.descendants(augmented_graph(t), LEADER_NODE)
    return len(reached) == t.n_followers


def eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues, routed to the symmetric solver when m is symmetric."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    try:
        if np.array_equal(m, m.T):
            return linalg.eigvalsh(m).astype(complex)
        return linalg.eigvals(m)
    except (linalg.LinAlgError, ValueError) as e:
        raise EigenSolverFailure(f"eigenvalue computation failed: {e}") from e


def is_positive_stable(m: np.ndarray, tol: float = settings.EIGEN_TOL) -> bool:
    """True iff every eigenvalue of m has real part > tol."""
    return bool(np.all(eigenvalues(m).real > tol))

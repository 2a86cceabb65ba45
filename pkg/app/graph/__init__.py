from .topology import (
    GraphMatrices,
    Topology,
    augmented_graph,
    build_topology,
    eigenvalues,
    h_matrices,
    is_leader_globally_reachable,
    is_positive_stable,
    laplacian,
)

__all__ = [
    "GraphMatrices",
    "Topology",
    "augmented_graph",
    "build_topology",
    "eigenvalues",
    "h_matrices",
    "is_leader_globally_reachable",
    "is_positive_stable",
    "laplacian",
]

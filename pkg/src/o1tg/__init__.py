"""Optimal 1-embedded graphs on the torus: connectivity and matching extendability."""

from .connectivity import (
    classify_connectivity,
    enumerate_cuts,
    find_homotopic_3cycle_pair,
    find_nonfacial_trivial_4cycle,
    minimum_vertex_cut,
    vertex_connectivity,
)
from .embedded_map import EmbeddedMap, build_from_rotation, dumps_rot, loads_rot
from .errors import O1TError, TheoremViolation
from .matching import (
    classify_extendability,
    find_blocker,
    find_blocking_quad_subgraph,
    has_perfect_matching,
    is_m_extendable,
    odd_components,
)
from .o1t import OptimalOneEmbedding, build_o1t, induced_quad_subgraph, quadrangular_subgraph
from .quad_torus import (
    Quadrangulation,
    build_qprq,
    insert_quad_face,
    is_qpr3,
    maps_isomorphic,
    replay_provenance,
    vertex_split,
)
from .topology import barrier_cycles, homology_labels, is_trivial_cycle, regions

__all__ = [
    "EmbeddedMap",
    "O1TError",
    "OptimalOneEmbedding",
    "Quadrangulation",
    "TheoremViolation",
    "barrier_cycles",
    "build_from_rotation",
    "build_o1t",
    "build_qprq",
    "classify_connectivity",
    "classify_extendability",
    "dumps_rot",
    "enumerate_cuts",
    "find_blocker",
    "find_blocking_quad_subgraph",
    "find_homotopic_3cycle_pair",
    "find_nonfacial_trivial_4cycle",
    "has_perfect_matching",
    "homology_labels",
    "induced_quad_subgraph",
    "insert_quad_face",
    "is_m_extendable",
    "is_qpr3",
    "is_trivial_cycle",
    "loads_rot",
    "maps_isomorphic",
    "minimum_vertex_cut",
    "odd_components",
    "quadrangular_subgraph",
    "regions",
    "replay_provenance",
    "vertex_connectivity",
    "vertex_split",
]

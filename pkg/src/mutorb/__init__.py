"""Cluster algebras from triangulated orbifolds: mutation, block decompositions,
triangulations with flips, seeds with tropical coefficients, unfoldings and
growth of exchange graphs."""

from .blocks import BlockDecomposition, Placement, TEMPLATES, assemble, find_s_decomposition
from .cluster_engine import (
    ExtendedMatrix,
    Seed,
    audit_positivity,
    c_vectors,
    check_sign_coherence,
    exchange_graph,
    exchange_relation_form,
    initial_seed,
    laurent_expand,
    mutate_extended,
    mutate_seed,
    principal_coefficient_seed,
    principal_seed,
)
from .core_matrix import Diagram, ExchangeMatrix, diagram_of, matrices_for_weighted_diagram, mutate_matrix
from .diagram import canonical_form, is_isomorphic, mutate_diagram
from .errors import MutorbError
from .growth import ball_sizes, classify_growth, enumerate_mutation_class, growth_report, is_mutation_finite
from .laurent import LaurentPoly
from .orbifold import (
    OrbifoldSignature,
    Triangulation,
    extended_signed_adjacency,
    flip,
    flip_graph,
    orbifold_of_decomposition,
    signed_adjacency,
)
from .unfolding import (
    UnfoldingCandidate,
    check_conditions,
    composite_mutate,
    local_unfolding,
    prime_unfolding,
    unfold,
    verify_unfolding,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "Placement",
    "TEMPLATES",
    "assemble",
    "find_s_decomposition",
    "ExtendedMatrix",
    "Seed",
    "audit_positivity",
    "c_vectors",
    "check_sign_coherence",
    "exchange_graph",
    "exchange_relation_form",
    "initial_seed",
    "laurent_expand",
    "mutate_extended",
    "mutate_seed",
    "principal_coefficient_seed",
    "principal_seed",
    "Diagram",
    "ExchangeMatrix",
    "diagram_of",
    "matrices_for_weighted_diagram",
    "mutate_matrix",
    "canonical_form",
    "is_isomorphic",
    "mutate_diagram",
    "MutorbError",
    "ball_sizes",
    "classify_growth",
    "enumerate_mutation_class",
    "growth_report",
    "is_mutation_finite",
    "LaurentPoly",
    "OrbifoldSignature",
    "Triangulation",
    "extended_signed_adjacency",
    "flip",
    "flip_graph",
    "orbifold_of_decomposition",
    "signed_adjacency",
    "UnfoldingCandidate",
    "check_conditions",
    "composite_mutate",
    "local_unfolding",
    "prime_unfolding",
    "unfold",
    "verify_unfolding",
]

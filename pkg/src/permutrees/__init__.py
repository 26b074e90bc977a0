"""Permutrees: rotation lattices, inversion sets and geometric realizations."""

from .decoration import Deco, Decoration, DecorationError, interior_decorations, normalize_decoration
from .geometry import (
    build_cubical,
    build_polytope,
    check_cube,
    corners,
    extremal_permutree,
    verify_polytope,
)
from .lattice import Lattice, ResourceLimitError, check_lattice, enumerate_lattice, tree_from_inversion_set
from .order import covers, is_valid_inversion_set, join, leq, meet
from .pairs import InversionSet, parse_pairs, transitive_closure
from .permutree import (
    EdgeCut,
    Extreme,
    Permutree,
    RotationError,
    cubic_data,
    cubic_vector,
    edge_cuts,
    extreme_permutree,
    inversion_set,
    inversion_vector,
    rotate,
    rotate_back,
    to_binary_sequence,
    validate_permutree,
    vertex_coordinates,
)

__all__ = [
    "Deco", "Decoration", "DecorationError", "interior_decorations", "normalize_decoration",
    "build_cubical", "build_polytope", "check_cube", "corners", "extremal_permutree", "verify_polytope",
    "Lattice", "ResourceLimitError", "check_lattice", "enumerate_lattice", "tree_from_inversion_set",
    "covers", "is_valid_inversion_set", "join", "leq", "meet",
    "InversionSet", "parse_pairs", "transitive_closure",
    "EdgeCut", "Extreme", "Permutree", "RotationError", "cubic_data", "cubic_vector", "edge_cuts",
    "extreme_permutree", "inversion_set", "inversion_vector", "rotate", "rotate_back",
    "to_binary_sequence", "validate_permutree", "vertex_coordinates",
]

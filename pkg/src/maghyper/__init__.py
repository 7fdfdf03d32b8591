"""Magnitude, magnitude homology and products of finite hypergraphs."""

from .core import (
    ClosureCapExceeded,
    Hypergraph,
    HypergraphError,
    ResourceCapExceeded,
    augment_vertices,
    disjoint_union,
    parse,
    serialize,
    simplicial_closure,
    skeleton_1,
)
from .functor import (
    HypergraphMorphism,
    MorphismError,
    disjoint_union_check,
    identity_morphism,
    induced_chain_map,
    induced_homology_map,
    morphism_from_vertex_map,
    validate_morphism,
)
from .homology import (
    GeneratorCapExceeded,
    HomologyGroup,
    HomologyTable,
    euler_check,
    homology_table,
    structural_checks,
)
from .magnitude import magnitude_rational, magnitude_series, neumann_magnitude, weighting
from .metric import INF, DistanceMatrix, distance_matrix, format_half, vertex_distance_matrix
from .product import cartesian_product, exterior_product, kunneth_check
from .series import HalfPoly, HalfSeries, RationalFn

__all__ = [name for name in dir() if not name.startswith("_")]

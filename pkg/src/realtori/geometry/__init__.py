"""Exact lattice-polytope primitives."""
from .exact import as_fraction, as_point
from .polytope import (
    Facet,
    Polytope,
    edges,
    facet_lattice_counts,
    from_halfspaces,
    lattice_points,
    product,
    valency_vector,
    vertices,
    volume,
)
from .classify import Classification, classify, is_centrally_symmetric, is_delzant
from .unimodular import (
    AffineUnimodularMap,
    EquivalenceResult,
    normal_form_at_vertex,
    unimodular_equiv_search,
)
from .textio import parse, serialize

__all__ = [
    "AffineUnimodularMap",
    "Classification",
    "EquivalenceResult",
    "Facet",
    "Polytope",
    "as_fraction",
    "as_point",
    "classify",
    "edges",
    "facet_lattice_counts",
    "from_halfspaces",
    "is_centrally_symmetric",
    "is_delzant",
    "lattice_points",
    "normal_form_at_vertex",
    "parse",
    "product",
    "serialize",
    "unimodular_equiv_search",
    "valency_vector",
    "vertices",
    "volume",
]

"""Exact-arithmetic toolkit for factorization structures.

Subspaces of tensor products of dual planes that cut one-dimensional
intersections slot-wise ("factorization structures"), their rational curves,
compatible polyhedral cones with generalized Gale facet enumeration, the
associated Vandermonde identities and Delzant-type lattice checks.  All
computations are over ``fractions.Fraction``.
"""

from .ratlin import Mat, Poly, Rat, Subspace
from .structure import (
    FactorizationStructure,
    build_product_sv,
    build_standard_sv,
    build_veronese,
    product,
    quotient,
    verify_axiom,
)
from .curves import (
    FactorizationCurve,
    curve_for_slot,
    curve_membership,
    curve_point,
    curves_equivalent,
    decompose_curve,
)
from .polyhedra import (
    Cone,
    build_cone,
    default_chart,
    enumerate_facets_bruteforce,
    enumerate_facets_gale,
    polytope_section,
)
from .lattice import (
    common_lattice,
    generalized_vi_check,
    rational_delzant_check,
    simplex_delzant_check,
    vandermonde_full_check,
    vandermonde_identity,
)

__all__ = [
    "Mat",
    "Poly",
    "Rat",
    "Subspace",
    "FactorizationStructure",
    "FactorizationCurve",
    "Cone",
    "build_veronese",
    "build_product_sv",
    "build_standard_sv",
    "product",
    "quotient",
    "verify_axiom",
    "curve_for_slot",
    "curve_point",
    "curve_membership",
    "curves_equivalent",
    "decompose_curve",
    "default_chart",
    "build_cone",
    "enumerate_facets_gale",
    "enumerate_facets_bruteforce",
    "polytope_section",
    "vandermonde_identity",
    "vandermonde_full_check",
    "generalized_vi_check",
    "common_lattice",
    "simplex_delzant_check",
    "rational_delzant_check",
]

__version__ = "0.1.0"

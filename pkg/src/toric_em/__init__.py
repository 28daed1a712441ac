"""Exact lattice-point counting, chi_y-weighted counts, localized equivariant
classes and Euler-Maclaurin operator identities for simple lattice polytopes."""

from .classes import (
    chi_equivariant,
    hrr_check,
    localized_hirzebruch,
    localized_hirzebruch_direct,
    molien_check,
    verify_global_hirzebruch,
)
from .corpus import corpus_documents, corpus_names, corpus_polytopes
from .document import PolytopeDocument, parse_document, parse_polynomial
from .euler_maclaurin import cs_face_sum_check, cs_solve_face_operators, em_check, kp_operator, rel1_check
from .fan import cone_data, make_summand, normal_fan, polytope_cone_data
from .genfunc import brion_matches_polynomial, cone_genfun, evaluate_brion, molien_average, weighted_cone_class
from .polytope import (
    LatticePolytope,
    build_polytope,
    ehrhart_fit,
    enumerate_lattice_points,
    integrate_over_face,
    is_delzant,
    is_simple,
    volume_polynomial,
    weighted_sum_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "LatticePolytope",
    "PolytopeDocument",
    "brion_matches_polynomial",
    "build_polytope",
    "chi_equivariant",
    "cone_data",
    "cone_genfun",
    "corpus_documents",
    "corpus_names",
    "corpus_polytopes",
    "cs_face_sum_check",
    "cs_solve_face_operators",
    "ehrhart_fit",
    "em_check",
    "enumerate_lattice_points",
    "evaluate_brion",
    "hrr_check",
    "integrate_over_face",
    "is_delzant",
    "is_simple",
    "kp_operator",
    "localized_hirzebruch",
    "localized_hirzebruch_direct",
    "make_summand",
    "molien_average",
    "molien_check",
    "normal_fan",
    "parse_document",
    "parse_polynomial",
    "polytope_cone_data",
    "rel1_check",
    "verify_global_hirzebruch",
    "volume_polynomial",
    "weighted_cone_class",
    "weighted_sum_oracle",
]

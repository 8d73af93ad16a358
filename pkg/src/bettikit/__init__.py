"""Betti posets, lcm-lattices and order-complex resolutions of monomial ideals."""

from .betti import (
    BettiPosetCheck,
    BettiPosetResult,
    betti_lattice,
    betti_numbers,
    betti_numbers_from_poset,
    betti_poset,
    check_betti_poset,
    realize_atomic_lattice,
    verify_homology_iso,
)
from .homology import GF, QQ, Field, parse_field, reduced_homology_dims
from .monomial import MonomialIdeal, divides, in_degree_support, join, parse_ideal
from .poset import (
    GradedPoset,
    Poset,
    SimplicialComplex,
    atoms_below,
    closed_filter,
    find_isomorphism,
    hasse_dot,
    is_atomic,
    lcm_lattice,
    meet_closure,
    open_filter,
    order_complex,
)
from .resolution import (
    BettiTable,
    FreeComplex,
    LabeledComplex,
    homogenize_frame,
    is_minimal,
    is_resolution_of,
    minimalize,
    order_complex_resolution,
    relabel,
    strand,
    taylor_complex,
    tor_betti,
)

__all__ = [
    "atoms_below",
    "betti_lattice",
    "betti_numbers",
    "betti_numbers_from_poset",
    "betti_poset",
    "BettiPosetCheck",
    "BettiPosetResult",
    "BettiTable",
    "check_betti_poset",
    "closed_filter",
    "divides",
    "Field",
    "find_isomorphism",
    "FreeComplex",
    "GF",
    "GradedPoset",
    "hasse_dot",
    "homogenize_frame",
    "in_degree_support",
    "is_atomic",
    "is_minimal",
    "is_resolution_of",
    "join",
    "LabeledComplex",
    "lcm_lattice",
    "meet_closure",
    "minimalize",
    "MonomialIdeal",
    "open_filter",
    "order_complex",
    "order_complex_resolution",
    "parse_field",
    "parse_ideal",
    "Poset",
    "QQ",
    "realize_atomic_lattice",
    "reduced_homology_dims",
    "relabel",
    "SimplicialComplex",
    "strand",
    "taylor_complex",
    "tor_betti",
    "verify_homology_iso",
]

__version__ = "0.1.0"

"""Exact cohomology of two-row diagrams of cochain complexes.

A two-row diagram is a pair of complexes A, B over the rationals with a
degree-(+1) chain map ``S^i: A^i -> B^(i+1)``.  The package computes its
mapping cone and long exact sequence, the output complex under an
injective/bijective/surjective rank pattern, the pseudoinverse BGG reduction,
and the two spectral sequences of the double complex, certifying every claim
with exact matrix identities.
"""

from .bgg_pattern import (
    CorollaryVerdict,
    MergedLES,
    OutputComplex,
    PatternCertificate,
    build_output_complex,
    corollary_check,
    detect_pattern,
    merged_les,
    rigid_motion_analogue,
)
from .bgg_reduction import (
    BGGReduction,
    MiddleTerm,
    QuasiIsoCertificate,
    bgg_reduce,
    identities,
    lifting_map,
    middle_term,
    printed_block_form,
    quotient_map,
    reduced_block_form,
    reduced_complex,
    seam_map,
    verify_quasi_iso,
)
from .bggx import BGGXDocument, BGGXError, emit_bggx, parse_bggx
from .complexes import (
    ChainMap,
    CochainComplex,
    CohomologyBasis,
    ComplexError,
    InducedMap,
    alternate_signs,
    alternate_signs_map,
    betti_numbers,
    cohomology,
    compose,
    degree_span,
    direct_sum,
    identity_map,
    induced_on_cohomology,
    nullhomotopy_to_S,
    shift,
    tensor_constant,
    validate_complex,
)
from .cones import (
    MappingCone,
    ShortExactSequenceOfComplexes,
    cone_ses,
    connecting_morphism,
    flatness,
    gauge_equivalence,
    long_exact_sequence,
    mapping_cone,
)
from .exactfield import (
    Matrix,
    complement_basis,
    format_rational,
    image_basis,
    inverse,
    kernel_basis,
    parse_rational,
    pseudoinverse,
    rank,
    rank_mod_p,
    rref,
    solve,
)
from .generators import (
    FIXTURES,
    TwoRowDiagram,
    fixture,
    mixed_diagram,
    pattern_diagram,
    phi_probe,
    random_complex,
    random_nullhomotopy_diagram,
    random_pattern_diagram,
    shift_identity_diagram,
    simplicial_cochain,
)
from .spectral import (
    KnightMoveMaps,
    TwoRowPages,
    cone_Y_phi,
    knight_move_phi,
    pages_horizontal_first,
    pages_vertical_first,
    rows_from_diagram,
    verify_convergence,
)

__version__ = "0.1.0"

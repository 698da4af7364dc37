"""Khovanov homology of singular links over GF(2): library and CLI."""

from .chain import (
    BigradedComplex,
    CubeOfComplexes,
    FaceCommutationError,
    GradedChainMap,
    MappingCone,
    cone,
    mcone,
    nu,
    shift,
    verify_chain_map,
    verify_complex,
)
from .diagram import (
    Crossing,
    CrossingKind,
    DomainError,
    PDSyntaxError,
    SingularDiagram,
    ValidationError,
    component_count,
    counts,
    parse_pd,
    resolve_crossing,
    resolve_double_points,
    serialize_pd,
    smooth,
)
from .homology import (
    BettiTable,
    ComplexInvalid,
    HomologyBasis,
    InconsistentBasis,
    LesReport,
    NotAChainMap,
    betti,
    homology_basis,
    induced_map,
    les_check,
    rank_f2,
)
from .khovanov import (
    EnhancedState,
    KhovanovComplex,
    build_complex,
    build_singular_complex,
    enhanced_basis,
    genus1_map,
    genus1_mcone_map,
    verify_genus1_factorization,
)
from .polynomial import (
    LaurentPoly,
    euler_characteristic,
    jones_state_sum,
    vassiliev_derivative,
)

__version__ = "0.1.0"

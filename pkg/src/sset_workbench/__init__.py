"""Finite simplicial sets, exhaustive lifting checks and excluded-middle certificates."""

from .constructions import (
    boundary,
    boundary_inclusion,
    coproduct,
    horn,
    horn_inclusion,
    image,
    product,
    pullback,
    std_simplex,
    subcomplex_closure,
)
from .interchange import InterchangeError, load_map, load_sset
from .lem import (
    LEMCertificate,
    NoFiller,
    NonEmptyFiber,
    NotComplemented,
    NotPropositional,
    SizeGuardExceeded,
    decompose_base,
    is_propositional_homotopy,
    is_propositional_rlp,
    lem_section,
    trivial_fibration_section,
    verify_certificate,
)
from .lifting import (
    FillerError,
    LiftingProblem,
    RLPReport,
    boundary_rlp,
    enumerate_maps,
    horn_rlp,
    lemma1_equivalence,
    prism_filler,
    prism_rlp,
    pushout_product,
    retract_search,
    solve_lift,
)
from .ordinal import OrdinalSurjection
from .simplicial import (
    Simplex,
    SimplexExpr,
    SimplicialError,
    SimplicialMap,
    SimplicialSet,
    Subcomplex,
    normalize,
    validate,
    validate_map,
)

__version__ = "0.1.0"

"""Finite topological spaces with a prescribed fundamental group.

Given a finite group presentation, this package builds a finite T0 space
(equivalently, a finite poset) whose fundamental group is the presented
group, two independent ways: symbolically from the presentation alone,
and explicitly as the quotient of the chain space of the presentation's
2-complex over a concrete finite realization of the group.  Cyclic groups
additionally get a hand-built model, and the supporting group theory
(coset enumeration, Smith normal form, edge-path groups) is included and
reusable on its own.
"""

from .cayley import (
    AttachingMapViolation,
    CayleyComplex,
    EdgeCell,
    FaceCell,
    OrientedEdge,
    Vertex,
    boundary_edge,
    build_cayley_complex,
    cell_label,
    validate_attaching,
)
from .cyclic import (
    abelian_space,
    build_zn_cover,
    build_zn_quotient,
    circle_model,
    zn_generator_action,
)
from .fundamental import (
    EdgePathPresentation,
    NotConnected,
    SimplificationResult,
    VerificationReport,
    edge_path_presentation,
    tietze_simplify,
    verify_pi1,
)
from .groups import (
    AbelianInvariants,
    AbelianizationOracle,
    CosetTable,
    CosetTableOracle,
    NotEnumerated,
    SmithNormalForm,
    abelian_invariants,
    smith_normal_form,
    todd_coxeter,
)
from .orbit_model import (
    OrbitPoint,
    SpaceModel,
    predicted_cardinality,
    quotient_model,
)
from .posets import (
    ActionTable,
    ChainSpace,
    CycleDetected,
    FinitePoset,
    HasFixedPoint,
    InvalidAction,
    NotOrderPreserving,
    NotPartialOrder,
    OrderComplex,
    PropDiscReport,
    QuotientNotT0,
    SearchBudgetExceeded,
    chain_space,
    check_properly_discontinuous,
    induced_action,
    isomorphic,
    poset_from_covers,
    quotient,
    validate_action,
)
from .presentations import (
    Letter,
    NotReduced,
    OracleInconclusive,
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    ReducedPresentation,
    ReducedReport,
    StepBudgetExceeded,
    TrivialPresentedGroup,
    Word,
    certify_reduced,
    is_reduced,
    parse_presentation,
    parse_word,
    reduce_presentation,
    word,
)
from .render import poset_from_json, poset_to_dot, poset_to_json, poset_to_text

__version__ = "0.1.0"

"""Constructive lift of probability-preserving ray maps and factorization of
bilinear composition maps through the Kronecker product, with a seeded
property-verification harness."""

__version__ = "0.1.0"

from .errors import (
    AmbiguousTau,
    DimensionMismatch,
    EmptyInput,
    InconsistentTau,
    InvalidPlan,
    NonUnimodularK,
    NotInTable,
    NotProbabilityPreserving,
    PreconditionFailed,
    UnknownProposition,
    WignerliftError,
    ZeroVector,
)
from .hilbert import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    basis_vector,
    inner_product,
    random_state,
    random_unitary,
    span,
    subspace_contains,
    transition_probability,
)
from .projective import (
    CallableOracle,
    MatrixOracle,
    PreservationReport,
    Ray,
    RayMapOracle,
    TabulatedOracle,
    apply_oracle,
    canonicalize,
    check_probability_preservation,
    ray_equal,
)
from .lift import (
    SemilinearLift,
    apply_lift,
    global_phase_alignment,
    lift,
    lift_query_vectors,
    verify_lift,
)
from .tensor import (
    BilinearComposition,
    CompositionOracle,
    FrozenArgumentOracle,
    IsomorphismResult,
    canonical_tensor,
    check_bilinearity,
    check_composite_independence,
    check_probability_product,
    check_span_surjectivity,
    check_totality,
    construct_isomorphism,
    evaluate,
    map_basis,
    rotated_tensor,
)
from .harness import (
    PropositionId,
    TrialPlan,
    derive_seed,
    run_proposition,
    run_suite,
)

"""Dimensions of secant varieties of products of lines, by exact
rank computation over prime fields, with a Horace-method certifier."""

from .modp import (
    DEFAULT_PRIME,
    DEFAULT_PRIMES,
    PrimeMatrix,
    SmallPrimeError,
    multi_prime_rank,
    random_projective_point,
    rank,
    rank_array,
    rng_for,
)
from .segre import (
    DimensionReport,
    SecantProblem,
    expected_dim,
    multigraded_ideal_dim,
    secant_dim_sample,
    segre_coordinates,
    terracini_matrix,
)
from .schemes import (
    Hyperplane,
    PointSpec,
    ResourceGuardError,
    SchemeSpec,
    SchemeValidationError,
    SpanError,
    SubspaceSpec,
    conditions_matrix,
    from_json,
    ideal_dim,
    instantiate,
    project_from_point,
    residual,
    segre_to_fatpoints,
    to_json,
    trace,
    transfer_consistency,
)
from .horace import (
    AppendixReport,
    CertificateNode,
    GuardError,
    LemmaCheckError,
    LemmaInstance,
    ParameterProfile,
    appendix_check,
    castelnuovo_bound,
    fixed_component_check,
    lemzero_bound,
    main_theorem_certify,
    residue_lemma_check,
    residue_lemma_v2_check,
    substitution_check,
    trace_lemma_check,
)

__version__ = "0.1.0"

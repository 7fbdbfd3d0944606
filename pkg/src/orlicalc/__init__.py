"""Norm evaluation and optimal-space decision procedures for Orlicz-type
function spaces: convex-generator calculus, rearrangements of sampled
functions, a catalog of rearrangement-invariant spaces, and existence tests
for smallest/largest Orlicz spaces in embeddings and operator bounds."""

from .alternative import (
    AlternativeOutcome,
    embeds,
    principal_alternative_domain,
    principal_alternative_target,
)
from .diagonality import (
    DiagonalityStatus,
    GWData,
    ac_embedding_check,
    build_gw,
    classical_lorentz_Nlambda,
    construct_witness_young,
    lifted_norm,
    ol_inequality_gap,
    orlicz_lambda_Nlambda,
    subdiagonality_status,
)
from .monotone import AsymptoticDescriptor, MonotoneFn
from .operators import (
    BoydEstimate,
    SobolevContext,
    boyd_upper_index,
    laplace_interpolation_sufficient,
    laplace_optimal_target,
    maximal_optimal_domain,
    maximal_optimal_target,
    sobolev_no_largest_on_level,
    sobolev_optimal_domain_fundamental,
    sobolev_optimal_target_fundamental,
    sobolev_orlicz_domain,
    sobolev_reduced_target_generator,
    sobolev_target_condition,
)
from .rearrangement import (
    PowerTail,
    SampledFn,
    characteristic,
    classical_lorentz_norm,
    distribution,
    lambda_norm,
    lorentz_power_norm,
    luxemburg_norm,
    marcinkiewicz_norm,
    maximal,
    modular,
    rearrange,
)
from .spaces import (
    FundamentalFn,
    SpaceDescriptor,
    UnsupportedFamily,
    associate,
    char_norm_constant,
    companions,
    fundamental_function,
    fundamental_orlicz,
    norm,
    same_level,
)
from .young import (
    QuasiConvexFn,
    Verdict,
    YoungFn,
    conjugate,
    delta2,
    dominates,
    exp_young,
    linfty_young,
    nabla2,
    power_log_young,
    power_young,
    young_from_derivative,
    young_from_json,
    young_from_values,
    young_to_json,
    youngify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

"""Accretive matrices, fractional powers, positivity cones, and
completely positive maps — a numerical laboratory.

The package centers on matrices with positive-semidefinite Hermitian part
(accretive matrices) and the unit-ball sets F = {a : ||1 - a|| <= 1} and
half-F = {a : ||1 - 2a|| <= 1}.  It computes principal fractional powers
by three interchangeable algorithms, traces numerical-range boundaries
and sector fits, evaluates disk/bidisk power series at contractions,
recovers support projections, factorizes completely positive maps, and
ships a seeded, reproducible property-check suite (P1..P17) exercising
the identities that tie all of this together.
"""

from .cones import (
    ConeMembershipReport,
    cardioid_bound,
    cone_membership,
    in_cardioid,
    min_c_constant,
    scalar_half_f,
)
from .errors import (
    AccretiveLabError,
    DimensionMismatch,
    DomainNotFull,
    IllDefinedExtension,
    InputParseError,
    NegativeAxisIntrusion,
    NonConvergence,
    NonFiniteEntries,
    NormBoundExceeded,
    NotAContraction,
    NotAccretive,
    NotCommuting,
    NotCP,
    NotHermitian,
    NotSquare,
    SeriesNotApplicable,
    SingularResolvent,
    SpectrumOnCut,
    UnknownProperty,
    ZeroMatrix,
)
from .funcalc import (
    BidiskFunction,
    DiskFunction,
    boundary_grid_values,
    compose,
    constant,
    eval_bidisk,
    eval_disk,
    from_coeffs,
    from_coeffs_2d,
    from_product,
    half_f_power,
    identity_function,
    monomial,
)
from .matcore import (
    TolerancePolicy,
    as_matrix,
    commutes,
    dagger,
    hermitian_part,
    identity,
    is_hermitian,
    is_psd,
    lambda_max,
    lambda_min,
    matrix_digest,
    matrix_from_json,
    matrix_to_json,
    operator_norm,
    skew_part,
    spectrum,
    stack_digest,
)
from .numrange import (
    NumericalRangeBoundary,
    Sector,
    avoids_negative_reals,
    boundary,
    boundary_csv,
    centered_half_angle,
    in_sector,
    max_angular_deviation,
    sector_excess,
    sector_fit,
)
from .powers import (
    PowerAlgorithm,
    PowerResult,
    cayley_transform,
    power_chain,
    principal_log,
    principal_power,
)
from .rcp import (
    ChoiMatrix,
    MatrixSubspace,
    StinespringFactorization,
    SubspaceMap,
    choi,
    extend_to_selfadjoint,
    full_algebra,
    ikhuh_check,
    is_cp,
    map_from_blocks,
    map_from_function,
    map_from_json,
    map_to_json,
    matrix_subspace,
    matrix_units,
    ocp_constant_estimate,
    rcp_check,
    stinespring,
    subspace_map,
)
from .reporting import (
    MarginLedger,
    PropertyReport,
    report_to_dict,
    report_to_json,
    reports_to_json,
)
from .rng import (
    complex_gaussian,
    random_accretive,
    random_contraction,
    random_half_f,
    random_psd,
    random_unitary,
    trial_rng,
)
from .support import (
    SupportProjectionResult,
    principal_angle_gap,
    root_limit,
    support_projection,
    support_via_cayley,
)
from .verify import (
    ALL_PROPERTY_IDS,
    P15_FLOOR,
    P15_SEED,
    P15_TRIAL,
    FamilyTarget,
    TrialConfig,
    config_from_dict,
    gen_commuting_family,
    p15_witness,
    run_property,
    run_suite,
)

__version__ = "0.1.0"

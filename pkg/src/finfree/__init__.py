"""Exact finite free probability: the additive convolution of monic real
polynomials, its cumulant theory over the set partition lattice, and the
surrounding diagnostics (free limits, infinite divisibility, Monte-Carlo
verification)."""

from .errors import (
    DimensionError,
    DomainError,
    FinFreeError,
    InputFormatError,
    NonMonicError,
    RootConvergenceError,
    SizeCapError,
)
from .util import VarPoly, falling, falling_poly, format_rational, parse_rational
from .partitions import (
    DEFAULT_N_MAX,
    PartitionType,
    SetPartition,
    block_size_product,
    count_by_type,
    enumerate_noncrossing,
    enumerate_partitions,
    is_noncrossing,
    iter_partitions,
    iter_types,
    join,
    mobius_from_zero,
    mobius_of_type,
    mobius_to_one,
    multiplicative_extension,
    one_partition,
    partition_lattice_charpoly,
    partition_type,
    refines,
    zero_partition,
)
from .polynomial import (
    MomentSequence,
    MonicPoly,
    count_distinct_real_roots,
    is_real_rooted,
    moments,
    roots,
    x_power,
)
from .transforms import (
    JOIN_FORM_SIGN,
    CumulantVector,
    coefficients_from_cumulants,
    coefficients_from_moments,
    cumulant_from_moments,
    cumulants_from_coefficients,
    cumulants_from_moments,
    moment_from_cumulants,
    moments_from_coefficients,
    moments_from_cumulants,
    p_sigma,
    p_sigma_defining_sum,
    p_sigma_join_form,
    q_sigma,
    rescale_cumulants,
    truncated_r_transform,
)
from .convolution import boxplus, boxplus_power
from .freeprob import (
    ConvergenceReport,
    FreeCumulantVector,
    convergence_report,
    free_cumulants_from_moments,
    free_moments_from_free_cumulants,
)
from .families import clt_rescaled_sum, finite_poisson, hermite_clt
from .divisibility import (
    CramerPair,
    IDReport,
    cramer_counterexample,
    infinite_divisibility_report,
    is_conditionally_positive_definite,
    real_rooted_threshold,
)
from .matrix_oracle import MCEstimate, char_poly, mc_boxplus, sample_haar_orthogonal

__version__ = "0.1.0"

"""Robust nonparametric inference for the median under epsilon-contamination."""
from .asymptotics import (
    UNBOUNDED,
    consistency_distance,
    is_length_robust,
    is_power_robust,
    length_breakdown,
    max_asymptotic_length,
    optimal_limit_bounds,
    parametric_length,
    power_breakdown,
    quantile,
)
from .binom import (
    BinomialSpec,
    alpha_star,
    binom_cdf,
    binom_sf,
    classical_alpha,
    h_interior,
    log_binom_cdf,
)
from .design import (
    DesignSpec,
    RobustInterval,
    Sample,
    SignTestOutcome,
    ToleranceResult,
    ToleranceStatus,
    build_interval,
    contamination_tolerance,
    min_coverage,
    robust_sign_test,
    select_k,
    sign_statistic,
)
from .distributions import ContaminationScenario, TargetDistribution
from .errors import DomainError
from .mc import MCConfig, MCSummary, estimate_coverage, estimate_expected_length, sample_contaminated

__version__ = "0.1.0"

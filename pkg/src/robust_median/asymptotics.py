"""Closed-form asymptotic robustness measures of the robust median interval and test.

All measures assume a target distribution that is symmetric about its median
and unimodal. An infinite result (``UNBOUNDED``) is returned rather than
raised, so parameter sweeps can tabulate breakdown directly.
"""
from __future__ import annotations

import math

from .distributions import TargetDistribution, norm_ppf
from .errors import DomainError

UNBOUNDED = math.inf

_ONE_THIRD = 1.0 / 3.0


def _check_eps(eps: float) -> None:
    if not 0.0 <= eps < 0.5:
        raise DomainError(f"eps must lie in [0, 1/2), got {eps!r}")


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta < 1.0:
        raise DomainError(f"delta must lie in [0, 1), got {delta!r}")


def quantile(dist: TargetDistribution, u: float) -> float:
    return dist.quantile(u)


def max_asymptotic_length(dist: TargetDistribution, eps: float, delta: float) -> float:
    """Largest limiting length of the eps-robust interval under actual contamination ``delta``.

    Equal to ``F^-1((1+eps)/(2(1-delta))) - F^-1((1-eps)/(2(1-delta)))`` for
    ``delta < (1 - eps)/2`` and ``UNBOUNDED`` otherwise.
    """
    _check_eps(eps)
    _check_delta(delta)
    if delta >= length_breakdown(eps):
        return UNBOUNDED
    denom = 2.0 * (1.0 - delta)
    u_hi = (1.0 + eps) / denom
    u_lo = (1.0 - eps) / denom
    if u_hi == u_lo:
        return 0.0
    return dist.quantile(u_hi) - dist.quantile(u_lo)


def length_breakdown(eps: float) -> float:
    """Actual contamination fraction at which the maximum length becomes infinite."""
    _check_eps(eps)
    return (1.0 - eps) / 2.0


def is_length_robust(eps: float) -> bool:
    """True when the interval keeps a finite maximum length at delta = eps."""
    _check_eps(eps)
    return eps < _ONE_THIRD


def optimal_limit_bounds(dist: TargetDistribution, eps: float) -> tuple[float, float]:
    """Tightest limiting endpoints ``(A_max, B_min)`` of any nonparametric eps-robust interval.

    Any interval with robust coverage and converging endpoints has lower
    limit at most ``A_max`` and upper limit at least ``B_min`` under clean data.
    """
    _check_eps(eps)
    if eps == 0.0:
        return dist.median, dist.median
    return dist.quantile((1.0 - eps) / 2.0), dist.quantile((1.0 + eps) / 2.0)


def consistency_distance(dist: TargetDistribution, eps: float, delta: float) -> float:
    """Smallest shift of the median beyond which the test's power tends to one uniformly.

    The distance is measured from the target median, so it does not depend on
    ``dist.loc``.
    """
    _check_eps(eps)
    _check_delta(delta)
    if delta >= power_breakdown(eps):
        return UNBOUNDED
    u = (1.0 + eps) / (2.0 * (1.0 - delta))
    if u == 0.5:
        return 0.0
    return dist.quantile(u) - dist.median


def power_breakdown(eps: float) -> float:
    _check_eps(eps)
    return (1.0 - eps) / 2.0


def is_power_robust(eps: float) -> bool:
    _check_eps(eps)
    return eps < _ONE_THIRD


def parametric_length(eps: float) -> float:
    """Limiting length ``2 Phi^-1(1/(2(1-eps)))`` of the parametric robust interval.

    This is twice the maximum asymptotic bias of the sample median over the
    eps-neighbourhood of the standard normal; it does not depend on the
    contamination actually present.
    """
    _check_eps(eps)
    if eps == 0.0:
        return 0.0
    return 2.0 * norm_ppf(1.0 / (2.0 * (1.0 - eps)))

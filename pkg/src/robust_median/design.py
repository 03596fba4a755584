"""Finite-sample robust interval and sign test for the median.

The acceptance index ``k`` is chosen so that the worst-case level over the
epsilon-contamination neighbourhood, ``alpha_star(n, k, eps)``, is as close as
possible to the requested level. Because that worst case does not depend on
the target distribution, the resulting interval ``[x_(k+1), x_(n-k))`` and its
dual sign test are both nonparametric and robust.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .binom import _log_range, alpha_star
from .errors import DomainError

_TOL_ABS = 1e-10
_TOL_MAX_ITER = 200


@dataclass(frozen=True, eq=False)
class Sample:
    """Immutable sample with its order statistics computed once."""

    values: np.ndarray
    sorted: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float).ravel()
        if vals.size < 1:
            raise DomainError("a sample needs at least one observation")
        if not np.all(np.isfinite(vals)):
            raise DomainError("sample values must be finite")
        srt = np.sort(vals, kind="stable")
        vals.setflags(write=False)
        srt.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "sorted", srt)

    @classmethod
    def from_iterable(cls, xs: Iterable[float]) -> "Sample":
        return cls(np.fromiter(xs, dtype=float))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def tie_count_at(self, theta: float) -> int:
        lo = np.searchsorted(self.sorted, theta, side="left")
        hi = np.searchsorted(self.sorted, theta, side="right")
        return int(hi - lo)

    def order_stat(self, i: int) -> float:
        """The i-th order statistic x_(i), 1-based."""
        return float(self.sorted[i - 1])


class SignCount(NamedTuple):
    statistic: int
    ties: int


def sign_statistic(sample: Sample, theta0: float) -> SignCount:
    """Number of observations strictly above ``theta0``; ties count as non-positive."""
    srt = sample.sorted
    above = srt.size - int(np.searchsorted(srt, theta0, side="right"))
    return SignCount(above, sample.tie_count_at(theta0))


class SelectionRule(str, enum.Enum):
    ARGMIN = "argmin"
    CONSERVATIVE = "conservative"


@dataclass(frozen=True)
class DesignSpec:
    n: int
    alpha_target: float
    eps: float
    k: int
    alpha_achieved: float
    rule: SelectionRule = SelectionRule.ARGMIN
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.k < 0 or self.k + 1 > self.n - self.k - 1:
            raise DomainError(f"k={self.k} leaves an empty acceptance region for n={self.n}")

    @property
    def coverage(self) -> float:
        return 1.0 - self.alpha_achieved


def select_k(
    n: int,
    alpha_target: float,
    eps: float,
    rule: SelectionRule | str = SelectionRule.ARGMIN,
) -> DesignSpec:
    """Choose the acceptance index for a robust design.

    Parameters
    ----------
    n : int
        Sample size, at least 2.
    alpha_target : float
        Requested worst-case level in (0, 1).
    eps : float
        Design contamination fraction in [0, 1/2).
    rule : {"argmin", "conservative"}
        ``argmin`` minimises ``|alpha_star - alpha_target|`` with ties broken
        towards the smaller ``k``. ``conservative`` takes the largest ``k``
        whose worst-case level does not exceed the target.

    Notes
    -----
    ``alpha_star`` is strictly increasing in ``k``, so the crossing point is
    located by bisection over ``k`` and only its two neighbours are compared.
    """
    rule = SelectionRule(rule)
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not 0.0 < alpha_target < 1.0:
        raise DomainError(f"alpha_target must lie in (0, 1), got {alpha_target!r}")
    if not 0.0 <= eps < 0.5:
        raise DomainError(f"eps must lie in [0, 1/2), got {eps!r}")
    n = int(n)
    kmax = n // 2 - 1

    cache: dict[int, float] = {}

    def level(k: int) -> float:
        if k not in cache:
            cache[k] = alpha_star(n, k, eps)
        return cache[k]

    # smallest k with level(k) >= alpha_target, or kmax + 1 if none
    lo, hi = 0, kmax + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if level(mid) >= alpha_target:
            hi = mid
        else:
            lo = mid + 1
    cross = lo

    notes: list[str] = []
    if rule is SelectionRule.ARGMIN:
        candidates = [c for c in (cross - 1, cross) if 0 <= c <= kmax]
        k = min(candidates, key=lambda c: (abs(level(c) - alpha_target), c))
    else:
        if cross <= kmax and level(cross) == alpha_target:
            k = cross
        elif cross - 1 >= 0:
            k = cross - 1
        else:
            k = 0
            notes.append(
                f"no k attains level <= {alpha_target}; smallest available worst-case level is {level(0):.6g}"
            )
    achieved = level(k)
    if 1.0 - achieved < 0.5:
        notes.append(
            f"degenerate design: worst-case coverage {1.0 - achieved:.4g} is below 0.5"
        )
    return DesignSpec(n, alpha_target, eps, k, achieved, rule, tuple(notes))


@dataclass(frozen=True)
class RobustInterval:
    """Half-open interval [lower, upper) with exact minimum coverage.

    The half-open form is the exact dual of the robust sign test; when reporting
    closed endpoints, the upper endpoint itself is excluded from coverage.
    """

    lower: float
    upper: float
    k: int
    min_coverage: float
    eps: float

    half_open = True

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def contains(self, theta: float) -> bool:
        return self.lower <= theta < self.upper


def build_interval(sample: Sample, spec: DesignSpec) -> RobustInterval:
    n, k = sample.n, spec.k
    if n != spec.n:
        raise DomainError(f"sample has n={n} but design was built for n={spec.n}")
    if n < 2 * k + 2:
        raise DomainError(f"n={n} too small for k={k}")
    srt = sample.sorted
    return RobustInterval(
        lower=float(srt[k]),
        upper=float(srt[n - k - 1]),
        k=k,
        min_coverage=1.0 - spec.alpha_achieved,
        eps=spec.eps,
    )


class ToleranceStatus(str, enum.Enum):
    SOLVED = "solved"
    NOT_SIGNIFICANT = "not-significant-even-clean"
    CAPPED = "capped-at-1/2"


@dataclass(frozen=True)
class ToleranceResult:
    status: ToleranceStatus
    tau: float | None
    r_n: int
    n: int
    alpha_target: float


def _alpha_star_at_p(n: int, k: int, p: float) -> float:
    return math.exp(_log_range(n, p, 0, k)) + math.exp(_log_range(n, p, n - k, n))


def contamination_tolerance(n: int, T: int, alpha_target: float) -> ToleranceResult:
    """Largest design contamination at which the robust test still rejects.

    Solves ``alpha_star(n, r_n, tau) = alpha_target`` with ``r_n = min(T, n - T)``
    by bisection on [0, 1/2]. When the clean-data test already accepts, no root
    exists and the status says so; when the test rejects for every design
    fraction below one half, ``tau`` is reported as 0.5 with a capped status.
    """
    if not 0.0 < alpha_target < 1.0:
        raise DomainError(f"alpha_target must lie in (0, 1), got {alpha_target!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if int(T) != T or not 0 <= T <= n:
        raise DomainError(f"T must be an integer in [0, n], got {T!r}")
    n, T = int(n), int(T)
    r = min(T, n - T)
    if r > n // 2 - 1:
        # acceptance region r < T < n - r is empty, so the level is 1
        return ToleranceResult(ToleranceStatus.NOT_SIGNIFICANT, None, r, n, alpha_target)

    def f(eps: float) -> float:
        return _alpha_star_at_p(n, r, (1.0 - eps) / 2.0) - alpha_target

    if f(0.0) >= 0.0:
        return ToleranceResult(ToleranceStatus.NOT_SIGNIFICANT, None, r, n, alpha_target)
    if f(0.5) <= 0.0:
        return ToleranceResult(ToleranceStatus.CAPPED, 0.5, r, n, alpha_target)
    lo, hi = 0.0, 0.5
    for _ in range(_TOL_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _TOL_ABS:
            break
    return ToleranceResult(ToleranceStatus.SOLVED, 0.5 * (lo + hi), r, n, alpha_target)


def tolerance_family_rejects(n: int, T: int, alpha_target: float, eps: float) -> bool:
    """Decision of the monotone test family behind the contamination tolerance.

    At design fraction ``eps`` it rejects exactly when the observed
    ``r_n = min(T, n - T)`` is extreme enough that ``alpha_star(n, r_n, eps)``
    does not exceed ``alpha_target``.
    """
    r = min(T, n - T)
    if r > n // 2 - 1:
        return False
    return alpha_star(n, r, eps) <= alpha_target


@dataclass(frozen=True)
class SignTestOutcome:
    statistic_T: int
    r_n: int
    reject: bool
    alpha_achieved: float
    tolerance: ToleranceResult
    ties: int = 0
    warnings: tuple[str, ...] = ()


def robust_sign_test(sample: Sample, theta0: float, spec: DesignSpec) -> SignTestOutcome:
    if sample.n != spec.n:
        raise DomainError(f"sample has n={sample.n} but design was built for n={spec.n}")
    T, ties = sign_statistic(sample, theta0)
    n, k = sample.n, spec.k
    reject = T <= k or T >= n - k
    notes = list(spec.warnings)
    if ties:
        notes.append(
            f"{ties} observation(s) equal theta0; counted as non-positive, continuity assumption violated"
        )
    return SignTestOutcome(
        statistic_T=T,
        r_n=min(T, n - T),
        reject=reject,
        alpha_achieved=spec.alpha_achieved,
        tolerance=contamination_tolerance(n, T, spec.alpha_target),
        ties=ties,
        warnings=tuple(notes),
    )


def min_coverage(n: int, k: int, eps: float) -> float:
    """Exact infimum of coverage of [x_(k+1), x_(n-k)) over the eps-neighbourhood."""
    return 1.0 - alpha_star(n, k, eps)

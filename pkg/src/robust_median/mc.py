"""Seeded Monte Carlo engine for coverage and expected length under point-mass contamination.

Replication ``i`` draws all of its randomness from its own PCG64 stream seeded by
``SeedSequence(seed, spawn_key=(i,))``. Results therefore depend only on
``(seed, i)`` and not on how replications are split across worker processes,
and summaries are reduced with ``math.fsum`` so the reduction order does not
matter either.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .design import DesignSpec, Sample, SelectionRule, select_k
from .distributions import ContaminationScenario, Placement, TargetDistribution
from .errors import DomainError

DEFAULT_REPS = 8000
DEFAULT_OFFSET = 10.0
_BLOCK = 512


@dataclass(frozen=True)
class MCConfig:
    """One Monte Carlo cell.

    ``contamination_value`` is the finite stand-in for the one-sided limit;
    when omitted it is ``loc +/- 10 * scale`` (or the scenario's point).
    ``mechanism`` is ``"bernoulli"`` (each observation contaminated
    independently with probability delta) or ``"fixed"`` (exactly
    ``round(delta * n)`` contaminated observations).
    """

    dist: TargetDistribution
    scenario: ContaminationScenario
    n: int
    alpha_target: float
    reps: int = DEFAULT_REPS
    seed: int = 0
    contamination_value: float | None = None
    mechanism: str = "bernoulli"
    rule: SelectionRule = SelectionRule.ARGMIN

    def __post_init__(self):
        if self.reps < 1:
            raise DomainError(f"reps must be >= 1, got {self.reps}")
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.mechanism not in ("bernoulli", "fixed"):
            raise DomainError(f"unknown contamination mechanism {self.mechanism!r}")
        object.__setattr__(self, "rule", SelectionRule(self.rule))

    @property
    def y(self) -> float:
        if self.contamination_value is not None:
            return float(self.contamination_value)
        sc = self.scenario
        if sc.placement is Placement.POINT:
            return float(sc.point)
        offset = DEFAULT_OFFSET * self.dist.scale
        if sc.placement is Placement.MINUS_INF:
            return self.dist.loc - offset
        return self.dist.loc + offset

    def design(self) -> DesignSpec:
        return select_k(self.n, self.alpha_target, self.scenario.eps_design, self.rule)


@dataclass(frozen=True)
class MCSummary:
    mean_length: float
    se_length: float
    coverage_freq: float
    se_coverage: float
    reps_used: int
    infinite_length_count: int
    k: int = field(default=-1)
    cp_exact: float = field(default=math.nan)


def replication_rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(rep,))))


def _draw(config: MCConfig, rng: np.random.Generator, delta: float) -> np.ndarray:
    x = config.dist.sample(rng, config.n)
    if delta <= 0.0:
        return x
    if config.mechanism == "bernoulli":
        mask = rng.random(config.n) < delta
        x[mask] = config.y
    else:
        m = int(round(delta * config.n))
        x[:m] = config.y
    return x


def sample_contaminated(
    config: MCConfig, rng: np.random.Generator, delta: float | None = None
) -> Sample:
    """Draw one sample from (1 - delta) F + delta * point-mass.

    ``delta`` defaults to the scenario's actual contamination; passing it
    explicitly lifts the < 1/2 restriction for diagnostics.
    """
    d = config.scenario.delta_actual if delta is None else delta
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {d!r}")
    return Sample(_draw(config, rng, d))


def _endpoints_chunk(config: MCConfig, k: int, start: int, stop: int):
    n = config.n
    delta = config.scenario.delta_actual
    lower = np.empty(stop - start)
    upper = np.empty(stop - start)
    for b0 in range(start, stop, _BLOCK):
        b1 = min(b0 + _BLOCK, stop)
        block = np.empty((b1 - b0, n))
        for j, rep in enumerate(range(b0, b1)):
            block[j] = _draw(config, replication_rng(config.seed, rep), delta)
        part = np.partition(block, (k, n - k - 1), axis=1)
        lower[b0 - start:b1 - start] = part[:, k]
        upper[b0 - start:b1 - start] = part[:, n - k - 1]
    return lower, upper


def simulate_endpoints(config: MCConfig, workers: int = 1, k: int | None = None):
    """Per-replication interval endpoints, in replication order."""
    if k is None:
        k = config.design().k
    reps = config.reps
    if workers <= 1 or reps < 2 * _BLOCK:
        return _endpoints_chunk(config, k, 0, reps)
    bounds = np.linspace(0, reps, workers + 1).astype(int)
    spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=min(workers, len(spans), os.cpu_count() or 1)) as ex:
        futures = [ex.submit(_endpoints_chunk, config, k, a, b) for a, b in spans]
        parts = [f.result() for f in futures]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _summarize(config, spec, lower, upper, theta_true) -> MCSummary:
    reps = lower.size
    lengths = upper - lower
    mean = math.fsum(lengths) / reps
    if reps > 1:
        var = math.fsum((lengths - mean) ** 2) / (reps - 1)
        se = math.sqrt(var / reps)
    else:
        se = math.nan
    if theta_true is None:
        freq, se_cov = math.nan, math.nan
    else:
        hits = int(np.count_nonzero((lower <= theta_true) & (theta_true < upper)))
        freq = hits / reps
        se_cov = math.sqrt(freq * (1.0 - freq) / reps)
    y = config.y
    hit_y = int(np.count_nonzero((lower == y) | (upper == y))) if config.scenario.delta_actual > 0 else 0
    return MCSummary(
        mean_length=mean,
        se_length=se,
        coverage_freq=freq,
        se_coverage=se_cov,
        reps_used=reps,
        infinite_length_count=hit_y,
        k=spec.k,
        cp_exact=spec.coverage,
    )


def estimate_expected_length(config: MCConfig, workers: int = 1) -> MCSummary:
    """Average length of the robust interval over ``config.reps`` replications.

    Replications whose endpoint sits on the contamination value are counted
    in ``infinite_length_count`` and enter the average at the finite stand-in.
    Coverage of the target median is reported alongside.
    """
    spec = config.design()
    lower, upper = simulate_endpoints(config, workers, spec.k)
    return _summarize(config, spec, lower, upper, config.dist.median)


def estimate_coverage(config: MCConfig, theta_true: float | None = None, workers: int = 1) -> MCSummary:
    """Frequency of ``lower <= theta_true < upper`` with its binomial standard error."""
    spec = config.design()
    if theta_true is None:
        theta_true = config.dist.median
    lower, upper = simulate_endpoints(config, workers, spec.k)
    return _summarize(config, spec, lower, upper, theta_true)

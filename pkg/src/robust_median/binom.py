"""Exact binomial tail machinery.

Single binomial terms are evaluated with Loader's saddle-point expansion
(``stirlerr`` / ``bd0``), which keeps full relative precision for large ``n``
where ``lgamma`` differences lose several digits. Tail sums walk away from the
mode by the ratio recurrence, so every summand is smaller than the first, and
the result is returned as ``log(first term) + log(sum of ratios)``. Nothing
underflows until the final ``exp``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_LN_2PI = math.log(2.0 * math.pi)
_NEG_INF = -math.inf

# stop once the geometric bound on the remaining terms is below this fraction of the sum
_TAIL_RTOL = 1e-17


@dataclass(frozen=True)
class BinomialSpec:
    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p!r}")


def _stirlerr(n: int) -> float:
    """log(n!) - log(sqrt(2 pi n) (n/e)^n)."""
    if n <= 15:
        return math.lgamma(n + 1.0) - (n + 0.5) * math.log(n) + n - 0.5 * _LN_2PI
    nn = float(n) * n
    s0, s1, s2, s3, s4 = 1 / 12, 1 / 360, 1 / 1260, 1 / 1680, 1 / 1188
    if n > 500:
        return (s0 - s1 / nn) / n
    if n > 80:
        return (s0 - (s1 - s2 / nn) / nn) / n
    if n > 35:
        return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n


def _bd0(x: float, np_: float) -> float:
    """Deviance term x log(x/np) + np - x, accurate when x is close to np."""
    if abs(x - np_) < 0.1 * (x + np_):
        v = (x - np_) / (x + np_)
        s = (x - np_) * v
        ej = 2.0 * x * v
        v *= v
        j = 1
        while True:
            ej *= v
            s1 = s + ej / (2 * j + 1)
            if s1 == s:
                return s1
            s = s1
            j += 1
    return x * math.log(x / np_) + np_ - x


def _log_pmf(n: int, p: float, x: int) -> float:
    q = 1.0 - p
    if p == 0.0:
        return 0.0 if x == 0 else _NEG_INF
    if q == 0.0:
        return 0.0 if x == n else _NEG_INF
    if x < 0 or x > n:
        return _NEG_INF
    if x == 0:
        return -_bd0(n, n * q) - n * p if p < 0.1 else n * math.log1p(-p)
    if x == n:
        return -_bd0(n, n * p) - n * q if q < 0.1 else n * math.log(p)
    lc = _stirlerr(n) - _stirlerr(x) - _stirlerr(n - x) - _bd0(x, n * p) - _bd0(n - x, n * q)
    lf = _LN_2PI + math.log(x) + math.log1p(-x / n)
    return lc - 0.5 * lf


def _mode(n: int, p: float) -> int:
    return min(n, int(math.floor((n + 1) * p)))


def _log_walk(n: int, p: float, start: int, stop: int) -> float:
    """log sum of pmf(i) for i from ``start`` to ``stop`` inclusive, walking away from the mode.

    ``start`` must be the endpoint nearest the mode so that successive ratios
    are at most one.
    """
    log_first = _log_pmf(n, p, start)
    if log_first == _NEG_INF:
        return _NEG_INF
    q = 1.0 - p
    step = 1 if stop >= start else -1
    total, comp = 1.0, 0.0
    term = 1.0
    i = start
    while i != stop:
        if step < 0:
            r = i * q / ((n - i + 1) * p)
        else:
            r = (n - i) * p / ((i + 1) * q)
        term *= r
        # Neumaier compensated accumulation
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        i += step
        if term == 0.0:
            break
        if r < 1.0 and term * r / (1.0 - r) < _TAIL_RTOL * total:
            break
    return log_first + math.log(total + comp)


def _log_range(n: int, p: float, lo: int, hi: int) -> float:
    """log P(lo <= Z <= hi) for Z ~ Binomial(n, p)."""
    lo = max(lo, 0)
    hi = min(hi, n)
    if lo > hi:
        return _NEG_INF
    if p == 0.0:
        return 0.0 if lo == 0 else _NEG_INF
    if p == 1.0:
        return 0.0 if hi == n else _NEG_INF
    m = _mode(n, p)
    if hi <= m:
        return _log_walk(n, p, hi, lo)
    if lo >= m:
        return _log_walk(n, p, lo, hi)
    below = math.exp(_log_range(n, p, 0, lo - 1))
    above = math.exp(_log_range(n, p, hi + 1, n))
    return math.log1p(-(below + above))


def log_binom_pmf(spec: BinomialSpec, x: int) -> float:
    return _log_pmf(spec.n, spec.p, int(x))


def binom_pmf(spec: BinomialSpec, x: int) -> float:
    return math.exp(log_binom_pmf(spec, x))


def log_binom_cdf(spec: BinomialSpec, k: int) -> float:
    """log P(Z <= k); arguments outside [0, n] clamp to log 0 / log 1."""
    if k < 0:
        return _NEG_INF
    if k >= spec.n:
        return 0.0
    return _log_range(spec.n, spec.p, 0, int(k))


def log_binom_sf(spec: BinomialSpec, k: int) -> float:
    """log P(Z > k)."""
    if k < 0:
        return 0.0
    if k >= spec.n:
        return _NEG_INF
    return _log_range(spec.n, spec.p, int(k) + 1, spec.n)


def binom_cdf(spec: BinomialSpec, k: int) -> float:
    """P(Z <= k) for Z ~ Binomial(spec.n, spec.p).

    Relative error is of order 1e-13 for n up to 1e5. Values below the double
    range return 0.0; use :func:`log_binom_cdf` when the magnitude matters.

    >>> binom_cdf(BinomialSpec(2, 0.5), 1)
    0.75
    """
    return math.exp(log_binom_cdf(spec, k))


def binom_sf(spec: BinomialSpec, k: int) -> float:
    """P(Z > k), computed directly rather than as ``1 - cdf``."""
    return math.exp(log_binom_sf(spec, k))


def _check_eps(eps: float) -> None:
    if not 0.0 <= eps < 0.5:
        raise DomainError(f"contamination fraction must lie in [0, 1/2), got {eps!r}")


def _check_acceptance_region(n: int, k: int) -> None:
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if int(k) != k or k < 0 or k > n // 2 - 1:
        raise DomainError(
            f"acceptance region k < T < n - k is empty or k invalid (n={n}, k={k}); "
            f"need 0 <= k <= {n // 2 - 1}"
        )


def classical_alpha(n: int, k: int) -> float:
    """Level 2 P(Z <= k), Z ~ Binomial(n, 1/2), of the two-sided sign test."""
    _check_acceptance_region(n, k)
    return 2.0 * binom_cdf(BinomialSpec(n, 0.5), k)


def h_interior(n: int, k: int, p: float) -> float:
    """P(k <= Z <= n - k) for Z ~ Binomial(n, p), bounds inclusive."""
    if int(k) != k or k < 0 or k > n - k:
        raise DomainError(f"need 0 <= k <= n - k, got n={n}, k={k}")
    spec = BinomialSpec(n, p)
    return math.exp(_log_range(spec.n, spec.p, int(k), n - int(k)))


def alpha_star(n: int, k: int, eps: float) -> float:
    """Worst-case level of the sign test with acceptance region k < T < n - k.

    Equals 1 - P(k < Z < n - k) with Z ~ Binomial(n, (1 - eps)/2); the two
    tails are summed separately so small levels keep their relative precision.
    """
    _check_eps(eps)
    _check_acceptance_region(n, k)
    p = (1.0 - eps) / 2.0
    lower = math.exp(_log_range(n, p, 0, k))
    upper = math.exp(_log_range(n, p, n - k, n))
    return lower + upper


def log_alpha_star(n: int, k: int, eps: float) -> float:
    _check_eps(eps)
    _check_acceptance_region(n, k)
    p = (1.0 - eps) / 2.0
    a = _log_range(n, p, 0, k)
    b = _log_range(n, p, n - k, n)
    hi, lo = max(a, b), min(a, b)
    if hi == _NEG_INF:
        return _NEG_INF
    return hi + math.log1p(math.exp(lo - hi))

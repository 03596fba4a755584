"""Independent reference computations used by the tests.

Nothing here imports the package under test.
"""
from fractions import Fraction
from math import comb

import mpmath as mp
import numpy as np
from scipy import integrate, stats


def exact_cdf(n, p, k):
    """P(Bin(n, p) <= k) in exact rational arithmetic (p taken as its exact binary value)."""
    p = Fraction(p)
    q = 1 - p
    return sum(comb(n, i) * p**i * q ** (n - i) for i in range(0, k + 1))


def mp_cdf_all(n, p, dps=60):
    """All cumulative probabilities P(Bin(n, p) <= k), k = 0..n, at high precision."""
    with mp.workdps(dps):
        p = mp.mpf(p)
        q = 1 - p
        term = q**n
        out = []
        acc = mp.mpf(0)
        for i in range(n + 1):
            acc += term
            out.append(acc)
            if i < n:
                term = term * (n - i) / (i + 1) * p / q if q != 0 else mp.mpf(0)
        return out


def mp_norm_ppf(u, dps=50):
    """Normal quantile by root finding on log Phi, at high precision."""
    with mp.workdps(dps):
        u = mp.mpf(u)
        lower = u < mp.mpf("0.5")
        tail = u if lower else 1 - u
        x0 = -mp.sqrt(-2 * mp.log(tail)) if tail < mp.mpf("0.01") else mp.sqrt(2) * mp.erfinv(2 * tail - 1)
        root = mp.findroot(lambda x: mp.log(mp.ncdf(x)) - mp.log(tail), x0)
        return float(root if lower else -root)


def scipy_alpha_star(n, k, eps):
    p = (1 - eps) / 2
    return stats.binom.cdf(k, n, p) + stats.binom.sf(n - k - 1, n, p)


def brute_force_k(n, alpha, eps):
    """Linear scan over every admissible k; ties go to the smaller k."""
    best = None
    for k in range(0, n // 2):
        d = abs(scipy_alpha_star(n, k, eps) - alpha)
        if best is None or d < best[0]:
            best = (d, k)
    return best[1]


def expected_normal_order_stat(r, n):
    """E[X_(r:n)] for i.i.d. standard normals, by quadrature of the order-statistic density."""
    logc = (np.log(n) + stats.binom.logpmf(r - 1, n - 1, 0.5) - (n - 1) * np.log(0.5))

    def integrand(x):
        return x * np.exp(
            logc
            + (r - 1) * stats.norm.logcdf(x)
            + (n - r) * stats.norm.logsf(x)
            + stats.norm.logpdf(x)
        )

    val, _ = integrate.quad(integrand, -12, 12, limit=200, epsabs=1e-12)
    return val

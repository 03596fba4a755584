"""Symmetric unimodal target distributions and contamination scenarios."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Wichura (1988), algorithm AS 241 (PPND16): |error| ~ 1e-16 over (0, 1)
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coef, x):
    acc = 0.0
    for c in reversed(coef):
        acc = acc * x + c
    return acc


def norm_ppf(u: float) -> float:
    """Standard normal quantile."""
    if not 0.0 < u < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {u!r}")
    q = u - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = u if q < 0.0 else 1.0 - u
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        val = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        val = _poly(_E, r) / _poly(_F, r)
    return -val if q < 0.0 else val


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


class Family(str, enum.Enum):
    NORMAL = "normal"
    LAPLACE = "laplace"
    CAUCHY = "cauchy"
    LOGISTIC = "logistic"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class TargetDistribution:
    """Symmetric unimodal location-scale law centred at ``loc``.

    ``scale`` is sigma for the normal, b for the Laplace, gamma for the Cauchy,
    s for the logistic and the half-width w for Uniform(loc - w, loc + w).
    """

    family: Family
    loc: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not (self.scale > 0.0 and math.isfinite(self.scale)):
            raise DomainError(f"scale must be positive and finite, got {self.scale!r}")
        if not math.isfinite(self.loc):
            raise DomainError(f"loc must be finite, got {self.loc!r}")

    @classmethod
    def normal(cls, mu=0.0, sigma=1.0):
        return cls(Family.NORMAL, mu, sigma)

    @classmethod
    def laplace(cls, mu=0.0, b=1.0):
        return cls(Family.LAPLACE, mu, b)

    @classmethod
    def cauchy(cls, mu=0.0, gamma=1.0):
        return cls(Family.CAUCHY, mu, gamma)

    @classmethod
    def logistic(cls, mu=0.0, s=1.0):
        return cls(Family.LOGISTIC, mu, s)

    @classmethod
    def uniform(cls, mu=0.0, w=1.0):
        return cls(Family.UNIFORM, mu, w)

    @property
    def median(self) -> float:
        return self.loc

    def cdf(self, x: float) -> float:
        z = (x - self.loc) / self.scale
        fam = self.family
        if fam is Family.NORMAL:
            return norm_cdf(z)
        if fam is Family.LAPLACE:
            return 0.5 * math.exp(z) if z < 0 else 1.0 - 0.5 * math.exp(-z)
        if fam is Family.CAUCHY:
            return 0.5 + math.atan(z) / math.pi
        if fam is Family.LOGISTIC:
            return 1.0 / (1.0 + math.exp(-z)) if z >= 0 else math.exp(z) / (1.0 + math.exp(z))
        return min(1.0, max(0.0, 0.5 * (z + 1.0)))

    def quantile(self, u: float) -> float:
        if not 0.0 < u < 1.0:
            raise DomainError(f"quantile level must lie in (0, 1), got {u!r}")
        fam = self.family
        if fam is Family.NORMAL:
            z = norm_ppf(u)
        elif fam is Family.LAPLACE:
            z = math.log(2.0 * u) if u < 0.5 else -math.log(2.0 - 2.0 * u)
        elif fam is Family.CAUCHY:
            z = 0.0 if u == 0.5 else math.tan(math.pi * (u - 0.5))
        elif fam is Family.LOGISTIC:
            z = math.log(u) - math.log1p(-u)
        else:
            z = 2.0 * u - 1.0
        return self.loc + self.scale * z

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        fam = self.family
        if fam is Family.NORMAL:
            z = rng.standard_normal(size)
        elif fam is Family.LAPLACE:
            z = rng.laplace(0.0, 1.0, size)
        elif fam is Family.CAUCHY:
            z = rng.standard_cauchy(size)
        elif fam is Family.LOGISTIC:
            z = rng.logistic(0.0, 1.0, size)
        else:
            z = rng.uniform(-1.0, 1.0, size)
        return self.loc + self.scale * z


class Placement(str, enum.Enum):
    PLUS_INF = "+inf"
    MINUS_INF = "-inf"
    POINT = "point"


@dataclass(frozen=True)
class ContaminationScenario:
    """Design fraction ``eps_design`` and actual point-mass contamination ``delta_actual``.

    ``placement`` is ``"+inf"`` or ``"-inf"`` for the one-sided limits (realised
    at a finite stand-in value by the simulator) or ``"point"`` together with
    ``point`` for a point mass at a given location.
    """

    eps_design: float
    delta_actual: float = 0.0
    placement: Placement = Placement.PLUS_INF
    point: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "placement", Placement(self.placement))
        for name in ("eps_design", "delta_actual"):
            v = getattr(self, name)
            if not 0.0 <= v < 0.5:
                raise DomainError(f"{name} must lie in [0, 1/2), got {v!r}")
        if self.placement is Placement.POINT and (self.point is None or not math.isfinite(self.point)):
            raise DomainError("point placement needs a finite 'point'")

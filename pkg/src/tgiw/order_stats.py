"""Order-statistic densities for i.i.d. samples from the family.

Every density here is composed from the distribution's F and f:

    f_(i:n)(x)       = F(x)**(i-1) * (1-F(x))**(n-i) * f(x) / B(i, n-i+1)
    f_(i,j:n)(x, y)  = C * F(x)**(i-1) * (F(y)-F(x))**(j-i-1)
                         * (1-F(y))**(n-j) * f(x) * f(y),   x < y,

with C = n! / ((i-1)! (j-i-1)! (n-j)!).  Minimum, maximum and (odd-n)
median are the i = 1, i = n and i = m+1 specializations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln

from . import distribution as dist
from .params import TgiwParams

__all__ = ["OrderSpec", "os_density", "joint_os_density", "min_max_joint_density"]

# exponent size beyond which powers of F and 1-F are taken in log space
_LOG_SPACE_EXPONENT = 30


@dataclass(frozen=True)
class OrderSpec:
    """Rank selector: i-th (and optionally j-th, i < j) of a sample of size n."""

    n: int
    i: int
    j: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("sample size n must be >= 1")
        if not 1 <= self.i <= self.n:
            raise ValueError(f"rank i must lie in [1, {self.n}], got {self.i}")
        if self.j is not None and not self.i < self.j <= self.n:
            raise ValueError(f"rank j must lie in ({self.i}, {self.n}], got {self.j}")

    @classmethod
    def minimum(cls, n: int) -> "OrderSpec":
        return cls(n=n, i=1)

    @classmethod
    def maximum(cls, n: int) -> "OrderSpec":
        return cls(n=n, i=n)

    @classmethod
    def median(cls, n: int) -> "OrderSpec":
        """Median rank m+1 of an odd sample size n = 2m+1."""
        if n % 2 == 0:
            raise ValueError("median order statistic requires an odd sample size")
        return cls(n=n, i=(n + 1) // 2)

    @classmethod
    def joint(cls, n: int, i: int, j: int) -> "OrderSpec":
        return cls(n=n, i=i, j=j)


def _pow_terms(base: np.ndarray, expo: int, log_space: bool) -> np.ndarray:
    if not log_space:
        return base**expo
    with np.errstate(divide="ignore"):
        return np.where(base > 0.0, np.exp(expo * np.log(np.maximum(base, 1e-320))), 0.0 if expo else 1.0)


def os_density(p: TgiwParams, spec: OrderSpec, x):
    """Density of the i-th order statistic of a sample of size spec.n at x."""
    if spec.j is not None:
        raise ValueError("spec with a j rank describes a joint density; use joint_os_density")
    xa = dist._check_x(x)
    F = np.asarray(dist.cdf(p, xa))
    f = np.asarray(dist.pdf(p, xa))
    i, n = spec.i, spec.n
    a, b = i - 1, n - i
    coef = math.exp(-betaln(i, n - i + 1))
    log_space = max(a, b) > _LOG_SPACE_EXPONENT
    out = coef * _pow_terms(F, a, log_space) * _pow_terms(1.0 - F, b, log_space) * f
    return dist._scalar_or_array(x, out)


def joint_os_density(p: TgiwParams, spec: OrderSpec, x_i: float, x_j: float) -> float:
    """Joint density of the (i, j) order-statistic pair at (x_i, x_j), x_i < x_j."""
    if spec.j is None:
        raise ValueError("spec must carry a j rank for a joint density")
    x_i, x_j = float(x_i), float(x_j)
    if x_i <= 0.0 or x_j <= 0.0 or not (math.isfinite(x_i) and math.isfinite(x_j)):
        raise ValueError("order-statistic arguments must be finite and positive")
    if x_i >= x_j:
        raise ValueError("joint density requires x_i < x_j")
    i, j, n = spec.i, spec.j, spec.n
    Fi, Fj = dist.cdf(p, x_i), dist.cdf(p, x_j)
    fi, fj = dist.pdf(p, x_i), dist.pdf(p, x_j)
    coef = math.exp(
        math.lgamma(n + 1) - math.lgamma(i) - math.lgamma(j - i) - math.lgamma(n - j + 1)
    )
    a, b, c = i - 1, j - i - 1, n - j
    log_space = max(a, b, c) > _LOG_SPACE_EXPONENT
    gap = max(Fj - Fi, 0.0)
    val = (
        coef
        * _pow_terms(np.asarray(Fi), a, log_space)
        * _pow_terms(np.asarray(gap), b, log_space)
        * _pow_terms(np.asarray(1.0 - Fj), c, log_space)
        * fi
        * fj
    )
    return float(val)


def min_max_joint_density(p: TgiwParams, n: int, x_min: float, x_max: float) -> float:
    """Joint density of (minimum, maximum) of a sample of size n >= 2.

    Equals n*(n-1) * (F(x_max) - F(x_min))**(n-2) * f(x_min) * f(x_max),
    the i = 1, j = n case of :func:`joint_os_density`.
    """
    n = int(n)
    if n < 2:
        raise ValueError("min/max joint density requires n >= 2")
    return joint_os_density(p, OrderSpec.joint(n, 1, n), x_min, x_max)

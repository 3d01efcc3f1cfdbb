"""Parameter types for the transmuted generalized inverse Weibull family.

The four-parameter family has cdf

    F(x) = u * (1 + lam - lam * u),   u = exp(-gamma * (alpha * x)**(-beta)),

for x > 0, with scale ``alpha > 0``, shapes ``beta > 0`` and ``gamma > 0``,
and transmutation weight ``lam`` in [-1, 1].  ``lam = 0`` recovers the base
generalized inverse Weibull distribution.

Because the cdf depends on ``alpha`` and ``gamma`` only through
``theta = gamma * alpha**(-beta)``, the four-parameter form is not
identifiable from data; :class:`ReducedParams` is the identifiable
three-parameter coordinate system used for fitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be a finite positive number, got {value!r}")
    return value


def _require_lam(value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or abs(value) > 1.0:
        raise ValueError(f"transmutation parameter must lie in [-1, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class TgiwParams:
    """Point in the four-parameter space (alpha, beta, gamma, lam)."""

    alpha: float
    beta: float
    gamma: float
    lam: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _require_positive("alpha", self.alpha))
        object.__setattr__(self, "beta", _require_positive("beta", self.beta))
        object.__setattr__(self, "gamma", _require_positive("gamma", self.gamma))
        object.__setattr__(self, "lam", _require_lam(self.lam))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.lam)


@dataclass(frozen=True)
class ReducedParams:
    """Identifiable coordinates (theta, beta, lam), theta = gamma * alpha**(-beta)."""

    theta: float
    beta: float
    lam: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", _require_positive("theta", self.theta))
        object.__setattr__(self, "beta", _require_positive("beta", self.beta))
        object.__setattr__(self, "lam", _require_lam(self.lam))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta, self.beta, self.lam)


def reduce_params(p: TgiwParams) -> ReducedParams:
    """Collapse (alpha, beta, gamma, lam) to the identifiable (theta, beta, lam)."""
    return ReducedParams(theta=p.gamma * p.alpha ** (-p.beta), beta=p.beta, lam=p.lam)


def expand_params(rp: ReducedParams) -> TgiwParams:
    """Canonical four-parameter representative: alpha = 1, gamma = theta.

    The cdf is invariant under ``expand_params(reduce_params(p))`` at every
    x > 0.
    """
    return TgiwParams(alpha=1.0, beta=rp.beta, gamma=rp.theta, lam=rp.lam)


class SubModel(Enum):
    """Named members of the family, each a set of fixed-parameter constraints.

    TGIW is the unrestricted four-parameter family.  The restricted members
    fix shape and/or transmutation parameters: e.g. IW is the inverse
    Weibull (gamma = 1, lam = 0) and TIR the transmuted inverse Rayleigh
    (beta = 2, gamma = 1).
    """

    TGIW = "tgiw"
    GIW = "giw"
    TIW = "tiw"
    IW = "iw"
    TIE = "tie"
    IE = "ie"
    TIR = "tir"
    IR = "ir"
    TFRECHET = "tfrechet"
    FRECHET = "frechet"

    @property
    def fixed(self) -> dict[str, float]:
        """Mapping of parameter name to its fixed value for this member."""
        return dict(_FIXED_CONSTRAINTS[self])

    @property
    def free(self) -> tuple[str, ...]:
        """Names of the parameters the member leaves free, in canonical order."""
        fixed = _FIXED_CONSTRAINTS[self]
        return tuple(n for n in _PARAM_ORDER if n not in fixed)

    @classmethod
    def from_name(cls, name: str) -> "SubModel":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown model {name!r}; expected one of: {valid}") from None


_PARAM_ORDER = ("alpha", "beta", "gamma", "lam")

_FIXED_CONSTRAINTS: dict[SubModel, dict[str, float]] = {
    SubModel.TGIW: {},
    SubModel.GIW: {"lam": 0.0},
    SubModel.TIW: {"gamma": 1.0},
    SubModel.IW: {"gamma": 1.0, "lam": 0.0},
    SubModel.TIE: {"beta": 1.0, "gamma": 1.0},
    SubModel.IE: {"beta": 1.0, "gamma": 1.0, "lam": 0.0},
    SubModel.TIR: {"beta": 2.0, "gamma": 1.0},
    SubModel.IR: {"beta": 2.0, "gamma": 1.0, "lam": 0.0},
    SubModel.TFRECHET: {"alpha": 1.0},
    SubModel.FRECHET: {"alpha": 1.0, "lam": 0.0},
}


def submodel_constrain(tag: SubModel, **free: float) -> TgiwParams:
    """Build a full parameter point from a sub-model tag and its free values.

    Raises ValueError if a fixed parameter of the tag is supplied, or if a
    free one is missing.
    """
    fixed = _FIXED_CONSTRAINTS[tag]
    values: dict[str, float] = dict(fixed)
    for name, value in free.items():
        if name not in _PARAM_ORDER:
            raise ValueError(f"unknown parameter {name!r}")
        if name in fixed:
            raise ValueError(
                f"parameter {name!r} is fixed to {fixed[name]} by {tag.value} "
                "and cannot be supplied"
            )
        values[name] = value
    missing = [n for n in _PARAM_ORDER if n not in values]
    if missing:
        raise ValueError(f"missing free parameter(s) for {tag.value}: {', '.join(missing)}")
    return TgiwParams(**values)


def nominal_k(tag: SubModel) -> int:
    """Free-parameter count of the four-parameter form (used for AIC/LR df)."""
    return 4 - len(_FIXED_CONSTRAINTS[tag])


def is_nested(restricted: SubModel, full: SubModel) -> bool:
    """True when ``restricted`` is the ``full`` member with extra parameters fixed."""
    rf, ff = _FIXED_CONSTRAINTS[restricted], _FIXED_CONSTRAINTS[full]
    return all(name in rf and rf[name] == value for name, value in ff.items()) and len(
        rf
    ) >= len(ff)

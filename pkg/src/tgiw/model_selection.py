"""Goodness of fit and model comparison: K-S, AIC/AICC, likelihood-ratio test."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammainccinv

from . import distribution as dist
from .data import Dataset
from .estimation import FitConfig, FitResult, fit_mle, identifiable_k
from .params import SubModel, TgiwParams, is_nested, nominal_k

__all__ = [
    "ks_statistic",
    "InformationCriteria",
    "information_criteria",
    "chi_square_upper_quantile",
    "LrTestResult",
    "lr_test",
    "ModelRow",
    "LrComparison",
    "ComparisonReport",
    "compare",
]


def ks_statistic(p: TgiwParams, d: Dataset) -> float:
    """One-sample Kolmogorov-Smirnov sup-distance between the sample and F.

    D_n = max_j max(|j/n - F(x_(j))|, |F(x_(j)) - (j-1)/n|).
    """
    x = d.values
    n = x.size
    F = np.asarray(dist.cdf(p, x))
    j = np.arange(1, n + 1)
    upper = np.abs(j / n - F)
    lower = np.abs(F - (j - 1) / n)
    return float(max(upper.max(), lower.max()))


@dataclass(frozen=True)
class InformationCriteria:
    aic: float
    aicc: float


def information_criteria(neg2_log_lik: float, k: int, n: int) -> InformationCriteria:
    """AIC = -2l + 2k and its small-sample correction AICC = AIC + 2k(k+1)/(n-k-1)."""
    k, n = int(k), int(n)
    if k < 0:
        raise ValueError("parameter count k must be >= 0")
    if n <= k + 1:
        raise ValueError(f"sample size n = {n} must exceed k + 1 = {k + 1}")
    aic = neg2_log_lik + 2.0 * k
    aicc = aic + 2.0 * k * (k + 1.0) / (n - k - 1.0)
    return InformationCriteria(aic=aic, aicc=aicc)


def chi_square_upper_quantile(df: int, level: float) -> float:
    """Upper-tail chi-square quantile via regularized incomplete-gamma inversion."""
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    return float(2.0 * gammainccinv(df / 2.0, level))


@dataclass(frozen=True)
class LrTestResult:
    omega: float
    df: int
    critical: float
    reject: bool
    level: float


def lr_test(ell_full: float, ell_restricted: float, df: int, level: float = 0.05) -> LrTestResult:
    """Likelihood-ratio test of a restricted model nested in a fuller one.

    omega = 2 * (l_full - l_restricted), compared against the upper
    chi-square quantile with the given degrees of freedom.
    """
    omega = 2.0 * (ell_full - ell_restricted)
    if omega < -1e-6:
        raise ValueError(
            f"nesting violated: restricted log-likelihood exceeds the full one (omega = {omega:.3g})"
        )
    critical = chi_square_upper_quantile(df, level)
    return LrTestResult(
        omega=omega, df=int(df), critical=critical, reject=omega > critical, level=level
    )


@dataclass(frozen=True)
class ModelRow:
    model: SubModel
    k: int
    neg2_log_lik: float | None
    aic: float | None
    aicc: float | None
    ks: float | None
    fit: FitResult | None
    failed: bool = False
    error: str = ""


@dataclass(frozen=True)
class LrComparison:
    restricted: SubModel
    full: SubModel
    result: LrTestResult


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ModelRow, ...]
    lr_tests: tuple[LrComparison, ...]
    n_obs: int
    paper_k: bool
    level: float


def compare(
    d: Dataset,
    models: list[SubModel],
    cfg: FitConfig | None = None,
    paper_k: bool = False,
    level: float = 0.05,
) -> ComparisonReport:
    """Fit each model (reduced mode) and tabulate K-S, -2l, AIC and AICC.

    ``paper_k`` switches the parameter count from the identifiable one
    (reduced free parameters) to the nominal four-parameter count, which is
    what published comparisons of this family conventionally report.
    Likelihood-ratio tests are run for each adjacent nested pair; degrees of
    freedom always count restrictions in the four-parameter space.
    """
    if not models:
        raise ValueError("at least one model is required")
    cfg = cfg or FitConfig()
    rows: list[ModelRow] = []
    for model in models:
        row_cfg = replace(cfg, model=model, mode="reduced", method="mle")
        try:
            fr = fit_mle(d, row_cfg)
        except ValueError as exc:
            rows.append(
                ModelRow(
                    model=model, k=0, neg2_log_lik=None, aic=None, aicc=None, ks=None,
                    fit=None, failed=True, error=str(exc),
                )
            )
            continue
        k = nominal_k(model) if paper_k else identifiable_k(model)
        neg2 = 2.0 * fr.neg_log_lik
        ic = information_criteria(neg2, k, d.n)
        rows.append(
            ModelRow(
                model=model,
                k=k,
                neg2_log_lik=neg2,
                aic=ic.aic,
                aicc=ic.aicc,
                ks=ks_statistic(fr.params, d),
                fit=fr,
            )
        )

    lr_tests: list[LrComparison] = []
    for left, right in zip(rows, rows[1:]):
        if left.failed or right.failed:
            continue
        pair = _nested_pair(left, right)
        if pair is None:
            continue
        restricted, full = pair
        df = nominal_k(full.model) - nominal_k(restricted.model)
        if df < 1:
            continue
        result = lr_test(
            -full.fit.neg_log_lik, -restricted.fit.neg_log_lik, df=df, level=level
        )
        lr_tests.append(LrComparison(restricted=restricted.model, full=full.model, result=result))

    return ComparisonReport(
        rows=tuple(rows), lr_tests=tuple(lr_tests), n_obs=d.n, paper_k=paper_k, level=level
    )


def _nested_pair(a: ModelRow, b: ModelRow) -> tuple[ModelRow, ModelRow] | None:
    """Orient an adjacent pair as (restricted, full), or None when not nested."""
    if is_nested(a.model, b.model) and nominal_k(a.model) < nominal_k(b.model):
        return a, b
    if is_nested(b.model, a.model) and nominal_k(b.model) < nominal_k(a.model):
        return b, a
    return None

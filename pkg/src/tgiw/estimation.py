"""Parameter estimation: maximum likelihood, (weighted) least squares, inference.

Fitting works in an unconstrained transform space (log for positive
parameters, atanh for the transmutation weight) with a Nelder-Mead simplex
seeded by a method-of-quantiles start, optional uniform multistart draws,
and a gradient (BFGS) polish for maximum likelihood.

The default fitting mode is ``reduced``: the likelihood depends on
``alpha`` and ``gamma`` only through ``theta = gamma * alpha**(-beta)``, so
the four-parameter (``full``) mode sits on a flat ridge and is offered only
for comparison, with an ill-conditioning warning on its information matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize
from scipy.special import ndtri

from . import distribution as dist
from .data import Dataset
from .params import (
    ReducedParams,
    SubModel,
    TgiwParams,
    expand_params,
    reduce_params,
)

__all__ = [
    "FitConfig",
    "FitResult",
    "ObservedInformation",
    "log_likelihood",
    "score",
    "fit_mle",
    "fit_lse",
    "fit_wlse",
    "observed_information",
    "wald_intervals",
    "wlse_weights",
]

# |lam| beyond which an optimum is treated as pressing the [-1, 1] boundary
_LAM_BOUNDARY = 0.999
# condition-number thresholds for the observed information
_ILL_CONDITIONED = 1e6
_SINGULAR = 1e12


@dataclass(frozen=True)
class FitConfig:
    """Fitting request: model, parameterization mode, method and optimizer knobs."""

    model: SubModel = SubModel.TGIW
    mode: str = "reduced"  # "reduced" | "full"
    method: str = "mle"  # "mle" | "lse" | "wlse"
    f_tol: float = 1e-10
    x_tol: float = 1e-10
    max_iter: int = 5000
    multistart: int = 1
    seed: int = 0
    delta: float = 0.05  # Wald interval miscoverage (level 1 - delta)

    def __post_init__(self) -> None:
        if self.mode not in ("reduced", "full"):
            raise ValueError(f"mode must be 'reduced' or 'full', got {self.mode!r}")
        if self.method not in ("mle", "lse", "wlse"):
            raise ValueError(f"method must be one of mle/lse/wlse, got {self.method!r}")
        if self.f_tol <= 0 or self.x_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1 or self.multistart < 1:
            raise ValueError("max_iter and multistart must be >= 1")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")


@dataclass(frozen=True)
class ObservedInformation:
    """Negative Hessian of the log-likelihood over a set of free parameters.

    ``ill_conditioned`` fires when the condition number exceeds 1e6 or when
    the smallest singular value sits below the finite-difference noise floor
    (the alpha-gamma ridge makes the four-parameter matrix analytically
    singular, so its smallest eigenvalue is pure differencing noise).
    ``singular`` (condition number above 1e12 or non-finite entries) refuses
    inversion outright.
    """

    matrix: np.ndarray
    names: tuple[str, ...]
    condition_number: float
    ill_conditioned: bool
    singular: bool

    def covariance(self) -> np.ndarray:
        if self.singular:
            raise ValueError("observed information is numerically singular")
        return np.linalg.inv(self.matrix)

    def std_errors(self) -> dict[str, float]:
        diag = np.diag(self.covariance())
        if np.any(diag < 0):
            raise ValueError("observed information is not positive definite")
        return {n: float(math.sqrt(v)) for n, v in zip(self.names, diag)}


@dataclass(frozen=True)
class FitResult:
    """Outcome of a fit: estimates, diagnostics and (for MLE) inference."""

    model: SubModel
    mode: str
    method: str
    params: TgiwParams
    reduced: ReducedParams
    neg_log_lik: float
    objective: float
    converged: bool
    iterations: int
    gradient_norm: float
    free_names: tuple[str, ...]
    estimates: dict[str, float]
    n_obs: int
    boundary_lambda: bool = False
    std_errors: dict[str, float] | None = None
    conf_intervals: dict[str, tuple[float, float]] | None = None
    conf_level: float | None = None
    information: ObservedInformation | None = None
    message: str = ""


# ---------------------------------------------------------------------------
# likelihood and score


def _log_likelihood_values(p: TgiwParams, x: np.ndarray) -> float:
    """Log-likelihood evaluated directly in log space (never via pdf products)."""
    n = x.size
    with np.errstate(over="ignore"):
        t = (p.alpha * x) ** (-p.beta)
    u = np.exp(-t * p.gamma)
    bracket = 1.0 + p.lam - 2.0 * p.lam * u
    if np.any(bracket <= 0.0):
        return -math.inf
    return float(
        n * math.log(p.alpha * p.beta * p.gamma)
        - (p.beta + 1.0) * np.sum(np.log(p.alpha * x))
        - p.gamma * np.sum(t)
        + np.sum(np.log(bracket))
    )


def log_likelihood(p: TgiwParams, d: Dataset) -> float:
    """Sample log-likelihood; -inf when a term's density is zero (|lam| = 1 edge)."""
    return _log_likelihood_values(p, d.values)


def score(p: TgiwParams, d: Dataset) -> np.ndarray:
    """Gradient of the log-likelihood in (alpha, beta, gamma, lam) order.

    Derived by differentiating the log-likelihood itself; each component
    matches central finite differences (tested), which is the correctness
    oracle.
    """
    return _score_values(p, d.values)


def _score_values(p: TgiwParams, x: np.ndarray) -> np.ndarray:
    n = x.size
    alpha, beta, gamma, lam = p.as_tuple()
    t = (alpha * x) ** (-beta)
    u = np.exp(-gamma * t)
    denom = 1.0 + lam - 2.0 * lam * u
    if np.any(denom <= 0.0):
        raise ValueError("score undefined: a likelihood term has zero density")
    lnax = np.log(alpha * x)
    tu_d = t * u / denom
    d_alpha = (
        n / alpha
        - n * (beta + 1.0) / alpha
        + gamma * beta / alpha * np.sum(t)
        - 2.0 * lam * gamma * beta / alpha * np.sum(tu_d)
    )
    d_beta = (
        n / beta
        - np.sum(lnax)
        + gamma * np.sum(t * lnax)
        - 2.0 * lam * gamma * np.sum(t * lnax * u / denom)
    )
    d_gamma = n / gamma - np.sum(t) + 2.0 * lam * np.sum(tu_d)
    d_lam = np.sum((1.0 - 2.0 * u) / denom)
    return np.array([d_alpha, d_beta, d_gamma, d_lam])


def _reduced_gradient(rp: ReducedParams, x: np.ndarray) -> np.ndarray:
    """Gradient of the log-likelihood in (theta, beta, lam) coordinates.

    With alpha fixed at 1 the reduced likelihood is the full one at
    (1, beta, theta, lam), so the gradient is the (gamma, beta, lam) slice
    of the four-parameter score.
    """
    s = _score_values(expand_params(rp), x)
    return np.array([s[2], s[1], s[3]])


# ---------------------------------------------------------------------------
# free-parameter bookkeeping and transforms

_REDUCED_ORDER = ("theta", "beta", "lam")
_FULL_ORDER = ("alpha", "beta", "gamma", "lam")


def _free_names(model: SubModel, mode: str) -> tuple[tuple[str, ...], dict[str, float]]:
    """Free coordinate names and fixed values for a model in a given mode."""
    fixed = model.fixed
    if mode == "full":
        names = tuple(n for n in _FULL_ORDER if n not in fixed)
        return names, fixed
    # reduced: theta is always free (it absorbs any alpha or gamma constraint)
    names = tuple(
        n for n in _REDUCED_ORDER if n == "theta" or n not in fixed
    )
    reduced_fixed = {k: v for k, v in fixed.items() if k in ("beta", "lam")}
    return names, reduced_fixed


def identifiable_k(model: SubModel) -> int:
    """Number of free parameters in the identifiable (reduced) parameterization."""
    names, _ = _free_names(model, "reduced")
    return len(names)


def _to_z(name: str, value: float) -> float:
    if name == "lam":
        value = min(max(value, -1.0 + 1e-12), 1.0 - 1e-12)
        return math.atanh(value)
    return math.log(value)


def _from_z(name: str, z: float) -> float:
    if name == "lam":
        return math.tanh(z)
    return math.exp(min(z, 700.0))


def _params_from_z(z: np.ndarray, names: tuple[str, ...], fixed: dict[str, float], mode: str) -> TgiwParams:
    values = dict(fixed)
    for name, zi in zip(names, z):
        values[name] = _from_z(name, float(zi))
    if mode == "full":
        return TgiwParams(**{k: values[k] for k in _FULL_ORDER})
    rp = ReducedParams(theta=values["theta"], beta=values["beta"], lam=values.get("lam", 0.0))
    return expand_params(rp)


def _quantile_seed(x: np.ndarray, names: tuple[str, ...], fixed: dict[str, float], mode: str) -> np.ndarray:
    """Method-of-quantiles start: match the quartiles and median under lam = 0."""
    x25, x50, x75 = np.quantile(x, [0.25, 0.5, 0.75])
    if fixed.get("beta") is not None:
        beta0 = fixed["beta"]
    elif x75 > x25:
        beta0 = (math.log(-math.log(0.25)) - math.log(-math.log(0.75))) / (
            math.log(x75) - math.log(x25)
        )
        beta0 = min(max(beta0, 0.05), 50.0)
    else:
        beta0 = 1.0
    theta0 = math.log(2.0) * x50**beta0
    seed_values = {"theta": theta0, "beta": beta0, "lam": 0.0, "alpha": 1.0, "gamma": theta0}
    if mode == "full" and "gamma" not in names and "alpha" in names:
        # gamma pinned by the model: push the scale into alpha instead
        seed_values["alpha"] = (fixed.get("gamma", 1.0) / theta0) ** (1.0 / beta0)
    return np.array([_to_z(n, seed_values[n]) for n in names])


# ---------------------------------------------------------------------------
# objectives


def wlse_weights(n: int) -> np.ndarray:
    """Weights (n+1)^2 (n+2) / (j (n-j+1)) for the weighted least-squares criterion."""
    j = np.arange(1, n + 1, dtype=float)
    return (n + 1.0) ** 2 * (n + 2.0) / (j * (n - j + 1.0))


def _ls_objective(p: TgiwParams, x: np.ndarray, weights: np.ndarray | None) -> float:
    n = x.size
    F = np.asarray(dist.cdf(p, x))
    resid = F - np.arange(1, n + 1) / (n + 1.0)
    if weights is None:
        return float(np.sum(resid * resid))
    return float(np.sum(weights * resid * resid))


# ---------------------------------------------------------------------------
# fit driver


def _neg_objective_factory(method: str, x: np.ndarray, names, fixed, mode):
    weights = wlse_weights(x.size) if method == "wlse" else None

    def objective(z: np.ndarray) -> float:
        try:
            p = _params_from_z(z, names, fixed, mode)
        except ValueError:
            return math.inf
        if method == "mle":
            ll = _log_likelihood_values(p, x)
            return math.inf if not math.isfinite(ll) else -ll
        return _ls_objective(p, x, weights)

    return objective


def _mle_grad_z(z: np.ndarray, x: np.ndarray, names, fixed, mode) -> np.ndarray:
    """Gradient of the negative log-likelihood in transform space (chain rule)."""
    p = _params_from_z(z, names, fixed, mode)
    if mode == "full":
        g = dict(zip(_FULL_ORDER, _score_values(p, x)))
    else:
        rp = reduce_params(p)
        g = dict(zip(_REDUCED_ORDER, _reduced_gradient(rp, x)))
    out = []
    for name, zi in zip(names, z):
        v = _from_z(name, float(zi))
        jac = (1.0 - v * v) if name == "lam" else v
        out.append(-g[name] * jac)
    return np.array(out)


def _free_space_gradient(p: TgiwParams, x: np.ndarray, names, mode) -> np.ndarray:
    """Log-likelihood gradient in the free original coordinates (not transformed)."""
    if mode == "full":
        g = dict(zip(_FULL_ORDER, _score_values(p, x)))
    else:
        g = dict(zip(_REDUCED_ORDER, _reduced_gradient(reduce_params(p), x)))
    return np.array([g[n] for n in names])


def _fd_gradient(fn, z: np.ndarray) -> np.ndarray:
    h = np.finfo(float).eps ** (1 / 3) * np.maximum(1.0, np.abs(z))
    out = np.empty_like(z)
    for i in range(z.size):
        e = np.zeros_like(z)
        e[i] = h[i]
        out[i] = (fn(z + e) - fn(z - e)) / (2.0 * h[i])
    return out


def _fit(d: Dataset, cfg: FitConfig) -> FitResult:
    names, fixed = _free_names(cfg.model, cfg.mode)
    k = len(names)
    if d.n <= k:
        raise ValueError(
            f"dataset of size {d.n} cannot identify {k} free parameters (need n > k)"
        )
    x = d.values
    objective = _neg_objective_factory(cfg.method, x, names, fixed, cfg.mode)

    z0 = _quantile_seed(x, names, fixed, cfg.mode)
    rng = np.random.default_rng(cfg.seed)
    starts = [z0] + [z0 + rng.uniform(-2.0, 2.0, size=k) for _ in range(cfg.multistart - 1)]

    options = dict(xatol=cfg.x_tol, fatol=cfg.f_tol, maxiter=cfg.max_iter, maxfev=2 * cfg.max_iter)
    best = None
    for start in starts:
        res = minimize(objective, start, method="Nelder-Mead", options=options)
        if math.isfinite(res.fun) and (best is None or res.fun < best.fun):
            best = res
    if best is None:
        raise ValueError("all optimizer starts produced non-finite objectives (degenerate data)")

    iterations = int(best.nit)
    optimizer_ok = bool(best.success)
    z_hat, f_hat = np.asarray(best.x, dtype=float), float(best.fun)

    if cfg.method == "mle":
        polish = minimize(
            objective,
            z_hat,
            jac=lambda z: _mle_grad_z(z, x, names, fixed, cfg.mode),
            method="BFGS",
            options=dict(gtol=1e-9 * max(1.0, math.sqrt(d.n)), maxiter=500),
        )
        if math.isfinite(polish.fun) and polish.fun <= f_hat:
            z_hat, f_hat = np.asarray(polish.x, dtype=float), float(polish.fun)
            iterations += int(polish.nit)
    else:
        restart = minimize(objective, z_hat, method="Nelder-Mead", options=options)
        if math.isfinite(restart.fun) and restart.fun <= f_hat:
            improvement = f_hat - float(restart.fun)
            z_hat, f_hat = np.asarray(restart.x, dtype=float), float(restart.fun)
            iterations += int(restart.nit)
            optimizer_ok = optimizer_ok and improvement <= max(cfg.f_tol, 1e-9) * (1.0 + abs(f_hat))

    params = _params_from_z(z_hat, names, fixed, cfg.mode)
    reduced = reduce_params(params)
    estimates = _estimates_dict(params, reduced, names, cfg.mode)
    neg_ll = -_log_likelihood_values(params, x)

    boundary = "lam" in names and abs(params.lam) > _LAM_BOUNDARY
    if cfg.method == "mle":
        grad = _free_space_gradient(params, x, names, cfg.mode)
    else:
        grad = _fd_gradient(objective, z_hat)
    gradient_norm = float(np.max(np.abs(grad)))

    grad_tol = 1e-4 * max(1.0, math.sqrt(d.n)) if cfg.method == "mle" else math.inf
    converged = optimizer_ok and not boundary and gradient_norm <= grad_tol

    message = ""
    if boundary:
        message = (
            f"transmutation estimate lam = {params.lam:.6g} presses the [-1, 1] boundary; "
            "the fit is non-regular and Wald inference for lam is suppressed"
        )
    elif not converged:
        message = "optimizer did not meet the convergence tolerances"

    result = FitResult(
        model=cfg.model,
        mode=cfg.mode,
        method=cfg.method,
        params=params,
        reduced=reduced,
        neg_log_lik=neg_ll,
        objective=f_hat,
        converged=converged,
        iterations=iterations,
        gradient_norm=gradient_norm,
        free_names=names,
        estimates=estimates,
        n_obs=d.n,
        boundary_lambda=boundary,
        message=message,
    )
    if cfg.method == "mle":
        result = _attach_inference(result, d, cfg)
    return result


def _estimates_dict(params: TgiwParams, reduced: ReducedParams, names, mode) -> dict[str, float]:
    source = (
        {"alpha": params.alpha, "beta": params.beta, "gamma": params.gamma, "lam": params.lam}
        if mode == "full"
        else {"theta": reduced.theta, "beta": reduced.beta, "lam": reduced.lam}
    )
    return {n: float(source[n]) for n in names}


def _attach_inference(result: FitResult, d: Dataset, cfg: FitConfig) -> FitResult:
    """Fill std errors and Wald intervals from the observed information, when sane."""
    names = result.free_names
    if result.boundary_lambda:
        names = tuple(n for n in names if n != "lam")
    if not names:
        return result
    try:
        info = observed_information(result.params, d, mode=result.mode, names=names)
    except ValueError:
        return result
    result = replace(result, information=info)
    if info.singular:
        return result
    try:
        ses = info.std_errors()
    except ValueError:
        return result
    z = float(ndtri(1.0 - cfg.delta / 2.0))
    cis = {
        n: (result.estimates[n] - z * ses[n], result.estimates[n] + z * ses[n]) for n in names
    }
    return replace(
        result, std_errors=ses, conf_intervals=cis, conf_level=1.0 - cfg.delta
    )


def fit_mle(d: Dataset, cfg: FitConfig | None = None) -> FitResult:
    """Maximum-likelihood fit of cfg.model to the data (reduced mode by default)."""
    cfg = replace(cfg or FitConfig(), method="mle")
    return _fit(d, cfg)


def fit_lse(d: Dataset, cfg: FitConfig | None = None) -> FitResult:
    """Least-squares fit: minimize sum_j (F(x_(j)) - j/(n+1))**2."""
    cfg = replace(cfg or FitConfig(), method="lse")
    return _fit(d, cfg)


def fit_wlse(d: Dataset, cfg: FitConfig | None = None) -> FitResult:
    """Weighted least-squares fit with weights (n+1)^2 (n+2) / (j (n-j+1))."""
    cfg = replace(cfg or FitConfig(), method="wlse")
    return _fit(d, cfg)


# ---------------------------------------------------------------------------
# observed information and Wald intervals


def observed_information(
    p: TgiwParams,
    d: Dataset,
    mode: str = "reduced",
    names: tuple[str, ...] | None = None,
) -> ObservedInformation:
    """Negative Hessian of the log-likelihood at p by central finite differences.

    Steps are scaled per parameter as h = eps**(1/3) * max(1, |value|) and the
    matrix is symmetrized.  ``mode`` selects the coordinates: the identifiable
    (theta, beta, lam) or the four-parameter (alpha, beta, gamma, lam) space;
    the latter is flagged ill-conditioned on the alpha-gamma ridge.
    """
    if mode not in ("reduced", "full"):
        raise ValueError(f"mode must be 'reduced' or 'full', got {mode!r}")
    x = d.values
    if mode == "full":
        order = _FULL_ORDER
        base = {"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "lam": p.lam}

        def neg_ll(values: dict[str, float]) -> float:
            return -_log_likelihood_values(TgiwParams(**values), x)

    else:
        rp = reduce_params(p)
        order = _REDUCED_ORDER
        base = {"theta": rp.theta, "beta": rp.beta, "lam": rp.lam}

        def neg_ll(values: dict[str, float]) -> float:
            q = ReducedParams(theta=values["theta"], beta=values["beta"], lam=values["lam"])
            return -_log_likelihood_values(expand_params(q), x)

    names = tuple(names) if names is not None else order
    unknown = [n for n in names if n not in order]
    if unknown:
        raise ValueError(f"names {unknown} not valid for mode {mode!r}")

    v0 = np.array([base[n] for n in names], dtype=float)
    h = np.finfo(float).eps ** (1 / 3) * np.maximum(1.0, np.abs(v0))
    if "lam" in names:
        i = names.index("lam")
        if 1.0 - abs(v0[i]) <= h[i]:
            raise ValueError(
                "lam is too close to the [-1, 1] boundary for interior curvature"
            )

    def f(v: np.ndarray) -> float:
        values = dict(base)
        values.update({n: float(vi) for n, vi in zip(names, v)})
        return neg_ll(values)

    k = len(names)
    H = np.zeros((k, k))
    f0 = f(v0)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        H[i, i] = (f(v0 + ei) + f(v0 - ei) - 2.0 * f0) / h[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h[j]
            H[i, j] = H[j, i] = (
                f(v0 + ei + ej) + f(v0 - ei - ej) - f(v0 + ei - ej) - f(v0 - ei + ej)
            ) / (4.0 * h[i] * h[j])
    H = 0.5 * (H + H.T)

    # central-difference entries carry absolute noise ~ eps^(1/3) * |f0|, so a
    # smallest singular value at or below that scale is indistinguishable from 0
    noise_floor = 10.0 * np.finfo(float).eps ** (1 / 3) * max(1.0, abs(f0))
    if not np.all(np.isfinite(H)):
        cond, smin = math.inf, 0.0
    else:
        s = np.linalg.svd(H, compute_uv=False)
        smin = float(s[-1])
        cond = math.inf if smin == 0.0 else float(s[0] / smin)
    return ObservedInformation(
        matrix=H,
        names=names,
        condition_number=cond,
        ill_conditioned=cond > _ILL_CONDITIONED or smin < noise_floor,
        singular=(not math.isfinite(cond)) or cond > _SINGULAR,
    )


def wald_intervals(fr: FitResult, delta: float = 0.05) -> dict[str, tuple[float, float]]:
    """Wald intervals estimate +- z_(delta/2) * se at coverage 1 - delta."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if fr.std_errors is None:
        raise ValueError("fit carries no standard errors (information unavailable or singular)")
    z = float(ndtri(1.0 - delta / 2.0))
    return {
        name: (fr.estimates[name] - z * se, fr.estimates[name] + z * se)
        for name, se in fr.std_errors.items()
    }

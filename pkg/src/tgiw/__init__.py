"""Transmuted generalized inverse Weibull lifetime distribution toolkit.

Exact distribution functions, order statistics, maximum-likelihood and
(weighted) least-squares fitting, goodness of fit, and model comparison,
with a CLI (``tgiw``) for fitting, sampling, curve tabulation and a
one-command reproduction of the bundled reliability case study.
"""

from .data import Dataset, embedded_dataset, parse_dataset, read_dataset_file
from .distribution import (
    MomentNotDefinedError,
    ShapeStatistics,
    cdf,
    coeff_of_variation,
    cumulative_hazard,
    hazard,
    kurtosis,
    log_pdf,
    median,
    mgf_partial_sum,
    pdf,
    quantile,
    raw_moment,
    sample,
    shape_statistics,
    skewness,
    survival,
)
from .estimation import (
    FitConfig,
    FitResult,
    ObservedInformation,
    fit_lse,
    fit_mle,
    fit_wlse,
    identifiable_k,
    log_likelihood,
    observed_information,
    score,
    wald_intervals,
    wlse_weights,
)
from .model_selection import (
    ComparisonReport,
    InformationCriteria,
    LrTestResult,
    chi_square_upper_quantile,
    compare,
    information_criteria,
    ks_statistic,
    lr_test,
)
from .order_stats import OrderSpec, joint_os_density, min_max_joint_density, os_density
from .params import (
    ReducedParams,
    SubModel,
    TgiwParams,
    expand_params,
    nominal_k,
    reduce_params,
    submodel_constrain,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "TgiwParams",
    "ReducedParams",
    "SubModel",
    "submodel_constrain",
    "reduce_params",
    "expand_params",
    "nominal_k",
    "identifiable_k",
    "cdf",
    "pdf",
    "log_pdf",
    "survival",
    "hazard",
    "cumulative_hazard",
    "quantile",
    "median",
    "sample",
    "raw_moment",
    "coeff_of_variation",
    "skewness",
    "kurtosis",
    "ShapeStatistics",
    "shape_statistics",
    "mgf_partial_sum",
    "MomentNotDefinedError",
    "OrderSpec",
    "os_density",
    "joint_os_density",
    "min_max_joint_density",
    "Dataset",
    "embedded_dataset",
    "parse_dataset",
    "read_dataset_file",
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
    "ks_statistic",
    "InformationCriteria",
    "information_criteria",
    "chi_square_upper_quantile",
    "LrTestResult",
    "lr_test",
    "ComparisonReport",
    "compare",
]

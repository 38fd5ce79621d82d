"""Equal-tailed intervals for the add-one smoothed binomial estimator.

The smoothed estimate (x+1)/(n+2) is the posterior mean of the success
probability under a flat prior, and its credible interval never touches
0 or 1 — unlike the classical maximum-likelihood intervals.  This package
locates that interval by composite Simpson integration of the binomial
likelihood, provides the normal-approximation and Clopper-Pearson
intervals for comparison, and ships the analysis and export tooling used
to quantify their disagreement.
"""

from .analysis import (
    AccuracyRow,
    ComparisonRow,
    REFERENCE_CASES,
    accuracy_study,
    comparison_table,
    error_percentage,
    first_differing_decimal,
)
from .dataset import ExportRow, ExportSpec, compute_rows, read_rows, run_export
from .errors import DomainError, LaplaceCIError, ResourceLimitError
from .intervals import (
    DEFAULT_K,
    METHOD_CLOPPER_PEARSON,
    METHOD_EXACT,
    METHOD_NORMAL,
    Condition,
    ConditionReport,
    Interval,
    applicability,
    clear_grid_cache,
    clopper_pearson,
    clopper_pearson_f_form,
    exact_interval,
    grid_for,
    normal_interval,
    one_sided_interval,
)
from .likelihood import (
    Observation,
    analytic_total_mass,
    laplace_estimate,
    log_likelihood,
    mle_estimate,
)
from .precision import PRECISION_ENV_VAR, PrecisionMode, precision_mode
from .quadrature import (
    BLOCK_SIZE,
    MAX_SUBDIVISIONS,
    PrefixMassGrid,
    build_grid,
    lower_crossing,
    stream_crossings,
    total_mass,
    upper_crossing,
)
from .special import (
    f_quantile,
    ln_choose,
    ln_gamma,
    normal_quantile,
    reg_inc_beta,
    reg_inc_beta_inv,
)
from .tables import TABLE_NAMES, build_table, render_table, truncate_decimal, two_decimal_z

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "LaplaceCIError", "DomainError", "ResourceLimitError",
    # likelihood
    "Observation", "log_likelihood", "mle_estimate", "laplace_estimate",
    "analytic_total_mass",
    # special functions
    "ln_gamma", "ln_choose", "normal_quantile", "reg_inc_beta",
    "reg_inc_beta_inv", "f_quantile",
    # quadrature
    "PrefixMassGrid", "build_grid", "lower_crossing", "upper_crossing",
    "stream_crossings", "total_mass", "MAX_SUBDIVISIONS", "BLOCK_SIZE",
    # intervals
    "Interval", "exact_interval", "one_sided_interval", "normal_interval",
    "clopper_pearson", "clopper_pearson_f_form", "applicability",
    "Condition", "ConditionReport", "DEFAULT_K", "METHOD_EXACT",
    "METHOD_NORMAL", "METHOD_CLOPPER_PEARSON", "grid_for", "clear_grid_cache",
    # analysis
    "ComparisonRow", "AccuracyRow", "error_percentage", "comparison_table",
    "accuracy_study", "first_differing_decimal", "REFERENCE_CASES",
    # tables
    "TABLE_NAMES", "build_table", "render_table", "truncate_decimal",
    "two_decimal_z",
    # dataset
    "ExportSpec", "ExportRow", "run_export", "compute_rows", "read_rows",
    # precision
    "PrecisionMode", "precision_mode", "PRECISION_ENV_VAR",
]

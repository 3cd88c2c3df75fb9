"""Stable-law exponent estimation from sign/log statistics.

Estimate the characteristic exponent alpha (and the companion skewness,
scale and shift parameters) of a stable law from an i.i.d. sample, with a
closed-form upper bound on the mean-square error of the estimate, exact
moment formulas for the sign and log-magnitude statistics, a seeded
sampler, a Monte Carlo study harness, and a heavy-tailed signal pipeline
built on extrema increments.
"""

__version__ = "0.1.0"

from .bounds import (BoundReport, alpha_mse_bound, b_u4_central,
                     b_v4_central, bound_abs3, bound_nu4, bound_report,
                     mse_nu, p1, p2, p3, p3_prime)
from .density import AccuracyWarning, stable_pdf, survival_series
from .estimator import (GeneralEstimate, StrictEstimate, UVStats,
                        estimate_general, estimate_strict, triplet_transform,
                        uv_stats)
from .moments import (MomentRow, ZETA3, ZETA5, ZETA7, dv, log_moment,
                      moment_table, u_central_moment, v_central_moment)
from .params import (EULER_GAMMA, FormAParams, StrictParams, from_strict,
                     tanpi, theta_bound, to_strict, transform_params,
                     validate_formA, validate_strict)
from .sampler import RandomStream, sample_formA, sample_formA_rng, sample_strict
from .signal import (DensityComparison, FluxConstants, SignalSeries, analyze,
                     compose_flux, extract_extrema, extrema_increments,
                     tail_slope)
from .study import (OracleReport, StudyConfig, StudyRow, oracle_suite,
                    replicate_general, replicate_strict, variance_study)

__all__ = [
    "__version__",
    "EULER_GAMMA", "ZETA3", "ZETA5", "ZETA7",
    "FormAParams", "StrictParams", "validate_formA", "validate_strict",
    "to_strict", "from_strict", "transform_params", "theta_bound", "tanpi",
    "MomentRow", "dv", "log_moment", "u_central_moment", "v_central_moment",
    "moment_table",
    "BoundReport", "p1", "p2", "p3", "p3_prime", "b_u4_central",
    "b_v4_central", "mse_nu", "bound_nu4", "bound_abs3", "alpha_mse_bound",
    "bound_report",
    "RandomStream", "sample_formA", "sample_formA_rng", "sample_strict",
    "UVStats", "StrictEstimate", "GeneralEstimate", "uv_stats",
    "estimate_strict", "triplet_transform", "estimate_general",
    "AccuracyWarning", "stable_pdf", "survival_series",
    "SignalSeries", "FluxConstants", "DensityComparison", "compose_flux",
    "extract_extrema", "extrema_increments", "tail_slope", "analyze",
    "StudyConfig", "StudyRow", "OracleReport", "variance_study",
    "replicate_general", "replicate_strict", "oracle_suite",
]

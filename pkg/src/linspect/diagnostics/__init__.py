"""Reliability analyses for linear models of a nonlinear plant."""
from .compare import ComparisonReport, compare_linearizations, simulate_linear
from .deviation import (LINEARIZATION_ERROR, NOMINAL_PERCENT, DeviationProfile,
                        linearization_error_profile, nominal_deviation_profile)
from .eigen import (CLUSTER_TOL, CT_TOL_INT, DT_TOL_INT, INTEGRATOR,
                    OSCILLATORY, STABLE, UNSTABLE, EigenCluster, EigenReport,
                    classify_ct, classify_dt, cluster_values, eigen_report,
                    eigen_report_from_values)
from .sweep import (FrequencySweep, condition_sweep, default_grid,
                    numerical_rank, rank_sweep)

__all__ = [
    "ComparisonReport", "compare_linearizations", "simulate_linear",
    "LINEARIZATION_ERROR", "NOMINAL_PERCENT", "DeviationProfile",
    "linearization_error_profile", "nominal_deviation_profile",
    "CLUSTER_TOL", "CT_TOL_INT", "DT_TOL_INT", "INTEGRATOR", "OSCILLATORY",
    "STABLE", "UNSTABLE", "EigenCluster", "EigenReport", "classify_ct",
    "classify_dt", "cluster_values", "eigen_report", "eigen_report_from_values",
    "FrequencySweep", "condition_sweep", "default_grid", "numerical_rank",
    "rank_sweep",
]

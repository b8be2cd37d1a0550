"""Bias-corrected base-rate estimation under prior probability shift."""

from .core import DerivedScalars, ErrorModel, Scenario, derive_scalars, validate_scenario
from .estimators import (
    ConfusionCounts,
    CorrectedEstimate,
    EstimatedRates,
    calibration_estimate,
    estimate_rates,
    misclassification_estimate,
    naive_estimate,
)
from .moments import (
    CALIBRATION,
    MISCLASSIFICATION,
    MomentSet,
    abs_bias_bounds,
    bias_calibration,
    bias_misclassification,
    mse,
    mse_difference,
    slope_abs_bias,
    slope_partials,
    variance_calibration,
    variance_misclassification,
)
from .simulator import (
    SimConfig,
    SimResult,
    enumerate_small_exact,
    simulate_moments,
    simulate_once,
)
from .boundary import (
    BoundaryPoint,
    CurveSeries,
    boundary_curve,
    find_delta_star,
    mse_diff_curve,
    slope_curve,
)

__version__ = "0.1.0"

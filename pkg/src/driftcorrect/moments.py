"""First-order bias, variance and MSE of both corrected estimators under drift.

All expressions drop terms of order 1/n**2. The bias of the calibration
estimator is measured against the drifted base rate ``alpha + delta`` (the
quantity being estimated), not against the test-time base rate.

The functions taking ``(model, scenario)`` validate their inputs; the
``*_values`` functions underneath accept floats or broadcastable numpy arrays
and do no checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ErrorModel, Scenario, beta_of, t_term_of, _check_alpha
from .errors import DegenerateModel, NegativeVariance, PCapOutOfRange, SingularModel

MISCLASSIFICATION = "misclassification"
CALIBRATION = "calibration"
ESTIMATOR_KINDS = (MISCLASSIFICATION, CALIBRATION)

NEGATIVE_VARIANCE_TOL = 1e-12


@dataclass(frozen=True)
class MomentSet:
    """Bias, variance and MSE of one estimator at one scenario.

    ``mse`` is always ``bias**2 + variance``; ``order_note`` says where the
    numbers come from ("first-order", "second-order-rates", "empirical",
    "exact").
    """

    bias: float
    variance: float
    mse: float
    order_note: str = "first-order"

    @classmethod
    def from_bias_variance(cls, bias, variance, order_note="first-order") -> MomentSet:
        bias = float(bias)
        variance = float(variance)
        return cls(bias, variance, bias * bias + variance, order_note)


def _require_invertible(model: ErrorModel):
    if model.is_singular:
        raise SingularModel(
            f"p00 + p11 - 1 = {model.d:.3g} is within {model.singular_tol:g} of zero"
        )


def _noise_weight(p00, p11, alpha):
    return p11 * (1 - p11) / alpha + p00 * (1 - p00) / (1 - alpha)


def _require_mixed_predictions(model: ErrorModel, alpha: float):
    beta = beta_of(model.p00, model.p11, alpha)
    if not 0.0 < beta < 1.0:
        raise DegenerateModel(f"predicted-positive rate beta={beta!r} must lie in (0, 1)")


def bias_misclassification_values(p00, p11, alpha, delta, n):
    d = p00 + p11 - 1
    return (p00 - p11) / (n * d) + delta / (n * d * d) * _noise_weight(p00, p11, alpha)


def variance_misclassification_values(p00, p11, alpha, delta, n, second_order=False):
    d = p00 + p11 - 1
    if second_order:
        alpha_prime = alpha + delta
        var_p11 = p11 * (1 - p11) / (n * alpha) * (1 + (1 - alpha) / (n * alpha))
        var_p00 = p00 * (1 - p00) / (n * (1 - alpha)) * (1 + alpha / (n * (1 - alpha)))
        return ((1 - alpha_prime) ** 2 * var_p00 + alpha_prime**2 * var_p11) / (d * d)
    t = t_term_of(p00, p11, alpha)
    bracket = t + 2 * delta * (p00 - p11) * d + delta**2 * _noise_weight(p00, p11, alpha)
    return bracket / (n * d * d)


def slope_values(p00, p11, alpha):
    """Absolute slope T / (beta (1 - beta)) of the calibration bias in the drift."""
    beta = beta_of(p00, p11, alpha)
    return t_term_of(p00, p11, alpha) / (beta * (1 - beta))


def bias_calibration_values(p00, p11, alpha, delta):
    return -delta * slope_values(p00, p11, alpha)


def variance_calibration_values(p00, p11, alpha, delta, n):
    beta = beta_of(p00, p11, alpha)
    d = p00 + p11 - 1
    hit = p11 * (1 - p00)
    miss = p00 * (1 - p11)
    bracket = (
        slope_values(p00, p11, alpha)
        + 2 * delta * d * (hit / beta**2 - miss / (1 - beta) ** 2)
        + delta**2 * d * d * (hit / beta**3 + miss / (1 - beta) ** 3)
    )
    return alpha * (1 - alpha) / n * bracket


def mse_difference_values(p00, p11, alpha, delta, n):
    """MSE(misclassification) - MSE(calibration); positive favours calibration."""
    mse_p = (
        bias_misclassification_values(p00, p11, alpha, delta, n) ** 2
        + variance_misclassification_values(p00, p11, alpha, delta, n)
    )
    mse_c = (
        bias_calibration_values(p00, p11, alpha, delta) ** 2
        + variance_calibration_values(p00, p11, alpha, delta, n)
    )
    return mse_p - mse_c


def bias_misclassification(model: ErrorModel, scenario: Scenario) -> float:
    _require_invertible(model)
    return float(
        bias_misclassification_values(
            model.p00, model.p11, scenario.alpha, scenario.delta, scenario.n
        )
    )


def variance_misclassification(
    model: ErrorModel, scenario: Scenario, include_second_order_rate_factor: bool = False
) -> float:
    """Variance of the misclassification estimator.

    With ``include_second_order_rate_factor`` the rate variances keep their
    ``1 + (1 - alpha) / (n alpha)`` style correction factors instead of being
    collapsed to first order.
    """
    _require_invertible(model)
    return float(
        variance_misclassification_values(
            model.p00,
            model.p11,
            scenario.alpha,
            scenario.delta,
            scenario.n,
            second_order=include_second_order_rate_factor,
        )
    )


def bias_calibration(model: ErrorModel, scenario: Scenario) -> float:
    """Bias of the calibration estimator as an estimator of ``alpha + delta``.

    Does not depend on ``n`` and always has the opposite sign of ``delta``.
    """
    _require_mixed_predictions(model, scenario.alpha)
    return float(bias_calibration_values(model.p00, model.p11, scenario.alpha, scenario.delta))


def variance_calibration(model: ErrorModel, scenario: Scenario) -> float:
    _require_mixed_predictions(model, scenario.alpha)
    value = float(
        variance_calibration_values(
            model.p00, model.p11, scenario.alpha, scenario.delta, scenario.n
        )
    )
    if value < -NEGATIVE_VARIANCE_TOL:
        raise NegativeVariance(
            f"first-order calibration variance is {value:.3g} at {model}, {scenario}"
        )
    return max(value, 0.0)


def mse(
    model: ErrorModel,
    scenario: Scenario,
    estimator_kind: str,
    include_second_order_rate_factor: bool = False,
) -> MomentSet:
    if estimator_kind == MISCLASSIFICATION:
        bias = bias_misclassification(model, scenario)
        variance = variance_misclassification(model, scenario, include_second_order_rate_factor)
        note = "second-order-rates" if include_second_order_rate_factor else "first-order"
    elif estimator_kind == CALIBRATION:
        bias = bias_calibration(model, scenario)
        variance = variance_calibration(model, scenario)
        note = "first-order"
    else:
        raise ValueError(f"unknown estimator kind {estimator_kind!r}; use one of {ESTIMATOR_KINDS}")
    return MomentSet.from_bias_variance(bias, variance, note)


def mse_difference(model: ErrorModel, scenario: Scenario) -> float:
    return mse(model, scenario, MISCLASSIFICATION).mse - mse(model, scenario, CALIBRATION).mse


def slope_abs_bias(model: ErrorModel, alpha: float) -> float:
    """|bias of the calibration estimator| per unit |delta|.

    Equals ``(1-p00) p11 / beta + p00 (1-p11) / (1-beta)``, which simplifies to
    ``T / (beta (1 - beta))``.
    """
    _check_alpha(alpha)
    _require_mixed_predictions(model, alpha)
    return float(slope_values(model.p00, model.p11, alpha))


def abs_bias_bounds(p_cap: float, delta: float) -> tuple[float, float]:
    """Lower and upper bounds on |calibration bias| when p00, p11 <= p_cap.

    Returns ``(4 p_cap (1 - p_cap) |delta|, |delta|)``.
    """
    if not 0.5 <= p_cap <= 1.0:
        raise PCapOutOfRange(f"p_cap={p_cap!r} not in [0.5, 1]")
    return 4.0 * p_cap * (1.0 - p_cap) * abs(delta), abs(delta)


def _slope_dx(x, y, alpha):
    beta = beta_of(x, y, alpha)
    return alpha / (beta**2 * (1 - beta) ** 2) * (((1 - y) * beta) ** 2 - (y * (1 - beta)) ** 2)


def slope_partials(model: ErrorModel, alpha: float) -> tuple[float, float]:
    """Partial derivatives of the slope with respect to p00 and p11.

    The p11 derivative comes from the symmetry slope(x, y, a) = slope(y, x, 1 - a),
    which swaps the probability arguments as well as reflecting alpha.
    """
    _check_alpha(alpha)
    x, y = model.p00, model.p11
    return float(_slope_dx(x, y, alpha)), float(_slope_dx(y, x, 1 - alpha))

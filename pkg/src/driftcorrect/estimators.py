"""Point estimators of the base rate from a labelled test set and predictions.

Margins follow the usual convention: ``n1+ = n11 + n10`` and ``n0+ = n01 + n00``
are the row (true class) totals, ``n+1 = n11 + n01`` and ``n+0 = n10 + n00`` the
column (predicted class) totals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DEFAULT_SINGULAR_TOL
from .errors import DegenerateMargin, DriftCorrectError, SingularMatrix


@dataclass(frozen=True)
class ConfusionCounts:
    """Test-set tally; ``n_ab`` counts objects of true class a predicted as b."""

    n11: int
    n10: int
    n01: int
    n00: int

    def __post_init__(self):
        for name in ("n11", "n10", "n01", "n00"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DriftCorrectError(f"{name}={value!r} must be a nonnegative integer")
        if self.n == 0:
            raise DriftCorrectError("confusion counts are all zero")

    @property
    def n(self) -> int:
        return self.n11 + self.n10 + self.n01 + self.n00

    @property
    def n1_plus(self) -> int:
        return self.n11 + self.n10

    @property
    def n0_plus(self) -> int:
        return self.n01 + self.n00

    @property
    def n_plus1(self) -> int:
        return self.n11 + self.n01

    @property
    def n_plus0(self) -> int:
        return self.n10 + self.n00


@dataclass(frozen=True)
class EstimatedRates:
    """Row-normalised (``p11_hat``, ``p00_hat``) and column-normalised
    (``c11_hat``, ``c10_hat``) confusion rates."""

    p11_hat: float
    p00_hat: float
    c11_hat: float
    c10_hat: float

    @property
    def d_hat(self) -> float:
        return self.p00_hat + self.p11_hat - 1.0


@dataclass(frozen=True)
class CorrectedEstimate:
    value: float
    out_of_range: bool


_MARGIN_LABELS = {"n1_plus": "n1+", "n0_plus": "n0+", "n_plus1": "n+1", "n_plus0": "n+0"}


def naive_estimate(predicted_positive_count: int, population_size: int) -> float:
    """Fraction of objects the classifier labels positive."""
    if population_size <= 0:
        raise DriftCorrectError("population_size must be positive")
    if not 0 <= predicted_positive_count <= population_size:
        raise DriftCorrectError("predicted_positive_count must lie in [0, population_size]")
    return predicted_positive_count / population_size


def estimate_rates(counts: ConfusionCounts) -> EstimatedRates:
    for name in ("n1_plus", "n0_plus", "n_plus1", "n_plus0"):
        if getattr(counts, name) == 0:
            raise DegenerateMargin(_MARGIN_LABELS[name])
    return EstimatedRates(
        p11_hat=counts.n11 / counts.n1_plus,
        p00_hat=counts.n00 / counts.n0_plus,
        c11_hat=counts.n11 / counts.n_plus1,
        c10_hat=counts.n10 / counts.n_plus0,
    )


def misclassification_estimate(
    alpha_star: float, rates: EstimatedRates, tolerance: float = DEFAULT_SINGULAR_TOL
) -> CorrectedEstimate:
    """Invert the estimated confusion matrix applied to the naive rate.

    The result is not clipped to [0, 1]; ``out_of_range`` reports whether it
    left the unit interval.
    """
    d_hat = rates.d_hat
    if abs(d_hat) <= tolerance:
        raise SingularMatrix(f"|p00_hat + p11_hat - 1| = {abs(d_hat):.3g} <= {tolerance:g}")
    value = (alpha_star - (1.0 - rates.p00_hat)) / d_hat
    return CorrectedEstimate(value, not 0.0 <= value <= 1.0)


def calibration_estimate(alpha_star: float, rates: EstimatedRates) -> float:
    """Mix the column-normalised rates with weights ``alpha_star`` and ``1 - alpha_star``."""
    return alpha_star * rates.c11_hat + (1.0 - alpha_star) * rates.c10_hat

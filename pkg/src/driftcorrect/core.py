"""Classification error model, drift scenario and the scalars derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AlphaOutOfRange,
    DeltaOutOfRange,
    NonPositiveN,
    ProbabilityOutOfRange,
)

DEFAULT_SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class ErrorModel:
    """True per-class correct-classification probabilities of a binary classifier.

    ``p00`` is Pr(predict 0 | true 0) and ``p11`` is Pr(predict 1 | true 1).
    The off-diagonal probabilities are ``1 - p00`` and ``1 - p11``.
    """

    p00: float
    p11: float
    singular_tol: float = DEFAULT_SINGULAR_TOL

    def __post_init__(self):
        for name in ("p00", "p11"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0) or math.isnan(value):
                raise ProbabilityOutOfRange(f"{name}={value!r} not in [0, 1]")

    @property
    def p01(self) -> float:
        return 1.0 - self.p00

    @property
    def p10(self) -> float:
        return 1.0 - self.p11

    @property
    def d(self) -> float:
        """Determinant p00 + p11 - 1 of the confusion matrix."""
        return self.p00 + self.p11 - 1.0

    @property
    def is_singular(self) -> bool:
        return abs(self.d) <= self.singular_tol

    @classmethod
    def symmetric(cls, p: float, singular_tol: float = DEFAULT_SINGULAR_TOL) -> ErrorModel:
        return cls(p, p, singular_tol)


@dataclass(frozen=True)
class Scenario:
    """Base rate ``alpha`` at test time, drift ``delta`` and test-set size ``n``."""

    alpha: float
    delta: float
    n: int

    def __post_init__(self):
        _check_alpha(self.alpha)
        _check_delta(self.alpha, self.delta)
        _check_n(self.n)

    @property
    def alpha_prime(self) -> float:
        """Base rate of the drifted population."""
        return self.alpha + self.delta


@dataclass(frozen=True)
class DerivedScalars:
    beta: float
    beta_prime: float
    t_term: float
    d: float


def _check_alpha(alpha):
    if not (0.0 < alpha < 1.0):
        raise AlphaOutOfRange(f"alpha={alpha!r} not in (0, 1)")


def _check_delta(alpha, delta):
    if not (-alpha < delta < 1.0 - alpha):
        raise DeltaOutOfRange(
            f"delta={delta!r} puts alpha'={alpha + delta!r} outside (0, 1)"
        )


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n <= 0:
        raise NonPositiveN(f"n={n!r} must be a positive integer")


def validate_scenario(alpha, delta, n, model: ErrorModel | None = None) -> Scenario:
    """Build a :class:`Scenario`, raising the error for the first violated invariant.

    ``model`` is optional; when given its probabilities are re-checked too.
    """
    alpha = float(alpha)
    delta = float(delta)
    _check_alpha(alpha)
    _check_delta(alpha, delta)
    _check_n(n)
    if model is not None:
        ErrorModel(model.p00, model.p11, model.singular_tol)
    return Scenario(alpha, delta, int(n))


# Array-friendly helpers. Every public formula in the package goes through these.

def beta_of(p00, p11, alpha):
    """Expected predicted-positive rate at base rate ``alpha``."""
    return (1 - alpha) * (1 - p00) + alpha * p11


def t_term_of(p00, p11, alpha):
    return (1 - alpha) * p00 * (1 - p00) + alpha * p11 * (1 - p11)


def derive_scalars(model: ErrorModel, scenario: Scenario) -> DerivedScalars:
    return DerivedScalars(
        beta=beta_of(model.p00, model.p11, scenario.alpha),
        beta_prime=beta_of(model.p00, model.p11, scenario.alpha_prime),
        t_term=t_term_of(model.p00, model.p11, scenario.alpha),
        d=model.d,
    )

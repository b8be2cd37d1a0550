"""Exception hierarchy.

Every validation problem raised by the library derives from
:class:`DriftCorrectError`, which itself is a ``ValueError`` so callers that
only care about bad input can catch the builtin.
"""


class DriftCorrectError(ValueError):
    """Base class for all validation errors raised by driftcorrect."""


class AlphaOutOfRange(DriftCorrectError):
    pass


class DeltaOutOfRange(DriftCorrectError):
    pass


class NonPositiveN(DriftCorrectError):
    pass


class ProbabilityOutOfRange(DriftCorrectError):
    pass


class DegenerateMargin(DriftCorrectError):
    """A row or column margin of the confusion counts is zero."""

    def __init__(self, margin: str):
        self.margin = margin
        super().__init__(f"degenerate margin: {margin} is zero")


class SingularMatrix(DriftCorrectError):
    """Estimated confusion matrix is (numerically) not invertible."""


class SingularModel(DriftCorrectError):
    """True error model has p00 + p11 - 1 too close to zero."""


class NegativeVariance(DriftCorrectError):
    pass


class PCapOutOfRange(DriftCorrectError):
    pass


class DegenerateSample(DriftCorrectError):
    """A simulated test set left one of the estimators undefined."""

    def __init__(self, reason: str, replication: int | None = None):
        self.reason = reason
        self.replication = replication
        where = "" if replication is None else f" (replication {replication})"
        super().__init__(f"degenerate sample{where}: {reason}")


class AllDegenerate(DriftCorrectError):
    pass


class NTooLarge(DriftCorrectError):
    pass


class MultipleRoots(DriftCorrectError):
    """More than one sign change of the MSE difference on the positive drift range."""


class DegenerateModel(DriftCorrectError):
    """The classifier predicts a single class with certainty, so column rates are undefined."""

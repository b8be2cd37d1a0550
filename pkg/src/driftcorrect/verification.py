"""Cross-check of the analytic moments against the Monte Carlo simulator.

An analytic value passes when it lies within ``4 * SE + C / n**2`` of the
empirical value, SE being the Monte Carlo standard error of that moment.

``C = ALLOWANCE_C`` was fitted once: it is the largest ``n**2 * (|gap| - 4 SE)``
over the alpha = 0.3, n = 1000 cells of the default grid (seed 42,
200 000 replications, N' = 10**6), rounded up to one significant figure.
Those cells have roughly 300 positives in the test set, the regime the
first-order expansions are meant for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import ErrorModel, Scenario
from .moments import CALIBRATION, MISCLASSIFICATION, mse
from .simulator import DEFAULT_POPULATION, SimConfig, simulate_moments

ALLOWANCE_C = 700.0
SE_MULTIPLIER = 4.0

DEFAULT_ALPHAS = (0.05, 0.3)
DEFAULT_NS = (50, 1000)
DEFAULT_PROBS = (0.6, 0.7)
DEFAULT_DELTAS = (0.0, 0.1)


@dataclass(frozen=True)
class CheckRow:
    alpha: float
    delta: float
    n: int
    p00: float
    p11: float
    estimator: str
    moment: str
    analytic: float
    empirical: float
    standard_error: float
    allowance: float
    degenerate_count: int

    @property
    def gap(self) -> float:
        return abs(self.analytic - self.empirical)

    @property
    def passed(self) -> bool:
        return self.gap <= self.allowance


def default_grid():
    """The 32 (model, scenario) pairs: 16 parameter cells times two drifts."""
    for alpha, n, p00, p11, delta in itertools.product(
        DEFAULT_ALPHAS, DEFAULT_NS, DEFAULT_PROBS, DEFAULT_PROBS, DEFAULT_DELTAS
    ):
        yield ErrorModel(p00, p11), Scenario(alpha, delta, n)


def check_scenario(
    model: ErrorModel,
    scenario: Scenario,
    replications: int,
    seed: int,
    population_size: int = DEFAULT_POPULATION,
    allowance_c: float = ALLOWANCE_C,
    workers: int = 1,
) -> list[CheckRow]:
    config = SimConfig(model, scenario, population_size, replications, seed)
    result = simulate_moments(config, workers=workers)
    rows = []
    for kind, empirical in ((MISCLASSIFICATION, result.moments_p), (CALIBRATION, result.moments_c)):
        analytic = mse(model, scenario, kind)
        for moment in ("bias", "variance"):
            se = result.standard_errors[kind][moment]
            rows.append(
                CheckRow(
                    scenario.alpha, scenario.delta, scenario.n, model.p00, model.p11,
                    kind, moment,
                    getattr(analytic, moment), getattr(empirical, moment), se,
                    SE_MULTIPLIER * se + allowance_c / scenario.n**2,
                    result.degenerate_count,
                )
            )
    return rows


def run_grid(
    replications: int,
    seed: int,
    population_size: int = DEFAULT_POPULATION,
    allowance_c: float = ALLOWANCE_C,
    grid=None,
    workers: int = 1,
) -> list[CheckRow]:
    """Check every cell of ``grid`` (default: :func:`default_grid`) with the same seed."""
    rows = []
    for model, scenario in grid if grid is not None else default_grid():
        rows.extend(
            check_scenario(model, scenario, replications, seed, population_size, allowance_c, workers)
        )
    return rows

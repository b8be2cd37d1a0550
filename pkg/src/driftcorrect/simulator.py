"""Monte Carlo double-sampling simulator and an exact small-n enumeration.

One replication draws a labelled test set of size ``n`` from the test-time
population and the classifier's predictions on a drifted population of size
``N'``, then applies both corrected estimators.

Random streams
--------------
Replications are grouped in consecutive blocks of :data:`BLOCK_SIZE`.
Replication ``i`` belongs to block ``b = i // BLOCK_SIZE`` and block ``b`` draws
from ``PCG64(SeedSequence(seed, spawn_key=(b,)))``. Every block is generated
the same way no matter which worker runs it, and blocks are merged in index
order, so results do not depend on ``workers``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binom

from .core import DEFAULT_SINGULAR_TOL, ErrorModel, Scenario, beta_of
from .errors import AllDegenerate, DegenerateSample, DriftCorrectError, NTooLarge
from .moments import CALIBRATION, MISCLASSIFICATION, MomentSet

BLOCK_SIZE = 8192
DEFAULT_POPULATION = 1_000_000
EXCLUDE = "exclude"
ABORT = "abort"

# degeneracy codes
_OK, _ROW_MARGIN, _COLUMN_MARGIN, _SINGULAR = 0, 1, 2, 3
_REASONS = {
    _ROW_MARGIN: "zero row margin (n1+ or n0+)",
    _COLUMN_MARGIN: "zero column margin (n+1 or n+0)",
    _SINGULAR: "estimated confusion matrix is singular",
}


@dataclass(frozen=True)
class SimConfig:
    model: ErrorModel
    scenario: Scenario
    population_size: int = DEFAULT_POPULATION
    replications: int = 10_000
    seed: int = 0
    degeneracy_policy: str = EXCLUDE

    def __post_init__(self):
        if self.population_size < 10 * self.scenario.n:
            raise DriftCorrectError(
                f"population_size={self.population_size} must be at least 10 n = {10 * self.scenario.n}"
            )
        if self.replications < 1:
            raise DriftCorrectError("replications must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DriftCorrectError("seed must be a 64-bit unsigned integer")
        if self.degeneracy_policy not in (EXCLUDE, ABORT):
            raise DriftCorrectError(f"unknown degeneracy policy {self.degeneracy_policy!r}")

    @property
    def positives_in_population(self) -> int:
        """Number of true positives in the drifted population, round(alpha' N')."""
        return int(round(self.scenario.alpha_prime * self.population_size))


@dataclass(frozen=True)
class SimResult:
    """Empirical moments of both estimators.

    Variances use the unbiased (``ddof=1``) sample variance and ``mse`` is
    ``bias**2 + variance``, which exceeds the raw mean squared deviation by
    ``variance / effective_replications``.
    """

    moments_p: MomentSet
    moments_c: MomentSet
    standard_errors: dict = field(default_factory=dict)
    degenerate_count: int = 0
    effective_replications: int = 0

    @property
    def replications(self) -> int:
        return self.degenerate_count + self.effective_replications

    @property
    def degeneracy_rate(self) -> float:
        return self.degenerate_count / self.replications


@dataclass(frozen=True)
class ExactMoments:
    moments_p: MomentSet
    moments_c: MomentSet
    degenerate_probability: float


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _draw_block(config: SimConfig, rng: np.random.Generator, size: int):
    model, scenario = config.model, config.scenario
    n = scenario.n
    n1 = rng.binomial(n, scenario.alpha, size)
    n0 = n - n1
    n11 = rng.binomial(n1, model.p11)
    n00 = rng.binomial(n0, model.p00)
    n10 = n1 - n11
    n01 = n0 - n00

    pos = config.positives_in_population
    neg = config.population_size - pos
    predicted = rng.binomial(pos, model.p11, size) + rng.binomial(neg, 1.0 - model.p00, size)
    alpha_star = predicted / config.population_size

    code = np.full(size, _OK, dtype=np.int8)
    with np.errstate(divide="ignore", invalid="ignore"):
        p11_hat = n11 / n1
        p00_hat = n00 / n0
        c11_hat = n11 / (n11 + n01)
        c10_hat = n10 / (n10 + n00)
        d_hat = p00_hat + p11_hat - 1.0
        singular = ~(np.abs(d_hat) > model.singular_tol)
        code[singular] = _SINGULAR
        code[(n11 + n01 == 0) | (n10 + n00 == 0)] = _COLUMN_MARGIN
        code[(n1 == 0) | (n0 == 0)] = _ROW_MARGIN
        alpha_p = (alpha_star - (1.0 - p00_hat)) / d_hat
        alpha_c = alpha_star * c11_hat + (1.0 - alpha_star) * c10_hat
    return alpha_p, alpha_c, code


def simulate_once(config: SimConfig, rng: np.random.Generator) -> tuple[float, float]:
    """One replication; returns ``(alpha_p_hat, alpha_c_hat)``.

    Raises :class:`DegenerateSample` when a margin is zero or the estimated
    confusion matrix is singular.
    """
    alpha_p, alpha_c, code = _draw_block(config, rng, 1)
    if code[0] != _OK:
        raise DegenerateSample(_REASONS[int(code[0])])
    return float(alpha_p[0]), float(alpha_c[0])


def _empirical(values: np.ndarray, target: float) -> tuple[MomentSet, float, float]:
    m = values.size
    mean = values.mean()
    centred = values - mean
    if m > 1:
        variance = float(centred @ centred / (m - 1))
        fourth = float(np.mean(centred**4))
        se_bias = math.sqrt(variance / m)
        se_var = math.sqrt(max(fourth - variance**2, 0.0) / m)
    else:
        variance, se_bias, se_var = 0.0, math.inf, math.inf
    return MomentSet.from_bias_variance(mean - target, variance, "empirical"), se_bias, se_var


def simulate_moments(config: SimConfig, workers: int = 1) -> SimResult:
    """Run ``config.replications`` replications and summarise them."""
    n_blocks = -(-config.replications // BLOCK_SIZE)

    def run(block):
        size = min(BLOCK_SIZE, config.replications - block * BLOCK_SIZE)
        return _draw_block(config, block_rng(config.seed, block), size)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(run, range(n_blocks)))
    else:
        blocks = [run(b) for b in range(n_blocks)]

    alpha_p = np.concatenate([b[0] for b in blocks])
    alpha_c = np.concatenate([b[1] for b in blocks])
    code = np.concatenate([b[2] for b in blocks])

    bad = code != _OK
    if config.degeneracy_policy == ABORT and bad.any():
        first = int(np.argmax(bad))
        raise DegenerateSample(_REASONS[int(code[first])], replication=first)
    good = ~bad
    effective = int(good.sum())
    if effective == 0:
        raise AllDegenerate(f"all {config.replications} replications were degenerate")

    target = config.scenario.alpha_prime
    moments_p, se_bp, se_vp = _empirical(alpha_p[good], target)
    moments_c, se_bc, se_vc = _empirical(alpha_c[good], target)
    return SimResult(
        moments_p=moments_p,
        moments_c=moments_c,
        standard_errors={
            MISCLASSIFICATION: {"bias": se_bp, "variance": se_vp},
            CALIBRATION: {"bias": se_bc, "variance": se_vc},
        },
        degenerate_count=int(bad.sum()),
        effective_replications=effective,
    )


def _outcome_table(model: ErrorModel, scenario: Scenario, n1: int):
    """Probabilities and validity of every (n11, n00) outcome given n1+ = n1."""
    n = scenario.n
    n0 = n - n1
    n11 = np.arange(n1 + 1)[:, None]
    n00 = np.arange(n0 + 1)[None, :]
    weight = (
        binom.pmf(n1, n, scenario.alpha)
        * binom.pmf(n11, n1, model.p11)
        * binom.pmf(n00, n0, model.p00)
    )
    n10 = n1 - n11
    n01 = n0 - n00
    if n1 == 0 or n0 == 0:
        ok = np.zeros(weight.shape, dtype=bool)
        return weight, ok, n11, n10, n01, n00
    with np.errstate(divide="ignore", invalid="ignore"):
        d_hat = n00 / n0 + n11 / n1 - 1.0
    ok = (n11 + n01 > 0) & (n10 + n00 > 0) & (np.abs(d_hat) > model.singular_tol)
    return weight, ok, n11, n10, n01, n00


def degeneracy_probability(model: ErrorModel, scenario: Scenario, max_n: int = 400) -> float:
    """Exact probability that a test set of size n is degenerate.

    Sums binomial probabilities over every (n1+, n11, n00) outcome.
    """
    if scenario.n > max_n:
        raise NTooLarge(f"n={scenario.n} exceeds max_n={max_n}")
    good = math.fsum(
        float(np.sum(w[ok])) for w, ok, *_ in (
            _outcome_table(model, scenario, n1) for n1 in range(scenario.n + 1)
        )
    )
    return max(0.0, 1.0 - good)


def enumerate_small_exact(
    model: ErrorModel, scenario: Scenario, max_n: int = 64
) -> ExactMoments:
    """Exact bias and variance of both estimators, conditional on a non-degenerate test set.

    The naive rate of the drifted population is fixed at its expectation
    beta', so only test-set sampling noise enters.
    """
    if scenario.n > max_n:
        raise NTooLarge(f"n={scenario.n} exceeds max_n={max_n}")
    beta_prime = beta_of(model.p00, model.p11, scenario.alpha_prime)
    weights, est_p, est_c = [], [], []
    for n1 in range(1, scenario.n):
        w, ok, n11, n10, n01, n00 = _outcome_table(model, scenario, n1)
        n11, n10, n01, n00 = (np.broadcast_to(a, w.shape) for a in (n11, n10, n01, n00))
        w, n11, n10, n01, n00 = w[ok], n11[ok], n10[ok], n01[ok], n00[ok]
        n0 = scenario.n - n1
        p11_hat = n11 / n1
        p00_hat = n00 / n0
        weights.append(w)
        est_p.append((beta_prime - (1.0 - p00_hat)) / (p00_hat + p11_hat - 1.0))
        est_c.append(beta_prime * n11 / (n11 + n01) + (1.0 - beta_prime) * n10 / (n10 + n00))
    weights = np.concatenate(weights)
    total = weights.sum()
    if total == 0.0:
        raise AllDegenerate("every test-set outcome is degenerate")
    weights = weights / total

    target = scenario.alpha_prime
    moments = []
    for values in (np.concatenate(est_p), np.concatenate(est_c)):
        mean = float(weights @ values)
        variance = float(weights @ (values - mean) ** 2)
        moments.append(MomentSet.from_bias_variance(mean - target, variance, "exact"))
    return ExactMoments(moments[0], moments[1], max(0.0, 1.0 - float(total)))

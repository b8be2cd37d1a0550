"""Where the two estimators have equal first-order MSE, and the curve data behind it.

All curves restrict to symmetric classifiers (p00 = p11 = p) except
:func:`mse_diff_curve`, which takes both probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ErrorModel, Scenario, _check_alpha, _check_delta, _check_n
from .errors import MultipleRoots, PCapOutOfRange, SingularModel
from .moments import mse_difference_values, slope_values

SCAN_POINTS = 1000
D_TOL = 1e-12
DELTA_TOL = 1e-9
MAX_BISECTIONS = 200

SLOPE_CURVE = "slope_curve"
MSE_DIFF_CURVE = "mse_diff_curve"
BOUNDARY_CURVE = "boundary_curve"


@dataclass(frozen=True)
class BoundaryPoint:
    """Root ``delta_star`` of the MSE difference on (0, 1 - alpha), or ``None``.

    When no root exists, ``sign`` records the sign of the difference over the
    whole interval: +1 (calibration always preferred), -1, or 0 when the
    difference vanishes identically.
    """

    p: float
    delta_star: float | None
    alpha: float
    n: int
    sign: int = 0

    @property
    def found(self) -> bool:
        return self.delta_star is not None


@dataclass(frozen=True)
class CurveSeries:
    kind: str
    parameters: dict
    x: np.ndarray
    y: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have equal length")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("x must be strictly increasing")

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))


def _d(p, alpha, n, delta):
    return mse_difference_values(p, p, alpha, delta, n)


def _bisect(f, lo, hi, f_lo, tolerance):
    mid = 0.5 * (lo + hi)
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            break
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if abs(f_mid) <= tolerance and hi - lo <= DELTA_TOL:
            break
    return mid


def find_delta_star(
    p: float, alpha: float, n: int, tolerance: float = D_TOL, scan_points: int = SCAN_POINTS
) -> BoundaryPoint:
    """Positive drift at which both estimators have the same first-order MSE.

    The difference is scanned on ``scan_points`` interior points of
    (0, 1 - alpha) plus delta = 0; a single sign change is then refined by
    bisection until |D| <= ``tolerance`` and the bracket is narrower than
    1e-9. More than one sign change raises :class:`MultipleRoots`.
    """
    _check_alpha(alpha)
    _check_n(n)
    if not 0.5 <= p <= 1.0:
        raise PCapOutOfRange(f"p={p!r} must lie in (0.5, 1]")
    if ErrorModel.symmetric(p).is_singular:
        raise SingularModel(f"p={p!r} makes the confusion matrix singular")

    grid = np.linspace(0.0, 1.0 - alpha, scan_points + 2)[:-1]
    values = _d(p, alpha, n, grid)
    signs = np.where(np.abs(values) <= tolerance, 0, np.sign(values)).astype(int)
    nonzero = np.flatnonzero(signs)
    if nonzero.size == 0:
        return BoundaryPoint(p, None, alpha, n, 0)

    changes = nonzero[1:][signs[nonzero[1:]] != signs[nonzero[:-1]]]
    if changes.size > 1:
        raise MultipleRoots(
            f"{changes.size} sign changes of the MSE difference for p={p}, alpha={alpha}, n={n}"
        )
    if changes.size == 0:
        return BoundaryPoint(p, None, alpha, n, int(signs[nonzero[0]]))

    hi_idx = int(changes[0])
    lo_idx = int(nonzero[np.searchsorted(nonzero, hi_idx) - 1])
    lo, hi = float(grid[lo_idx]), float(grid[hi_idx])
    f = lambda delta: float(_d(p, alpha, n, delta))  # noqa: E731
    root = _bisect(f, lo, hi, float(values[lo_idx]), tolerance)
    return BoundaryPoint(p, root, alpha, n, 0)


def slope_curve(alpha_list, p_grid) -> list[CurveSeries]:
    """One series of |calibration bias slope| against p per alpha, then the lower bound 4p(1-p)."""
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.size and (p_grid.min() < 0.5 or p_grid.max() > 1.0):
        raise PCapOutOfRange("p_grid must lie in [0.5, 1]")
    series = []
    for alpha in alpha_list:
        _check_alpha(alpha)
        series.append(
            CurveSeries(SLOPE_CURVE, {"alpha": alpha}, p_grid, slope_values(p_grid, p_grid, alpha))
        )
    series.append(
        CurveSeries(SLOPE_CURVE, {"lower_bound": True}, p_grid, 4.0 * p_grid * (1.0 - p_grid))
    )
    return series


def mse_diff_curve(alpha, n, p00, p11, delta_grid) -> CurveSeries:
    model = ErrorModel(p00, p11)
    if model.is_singular:
        raise SingularModel(f"p00 + p11 - 1 = {model.d:.3g} is singular")
    Scenario(alpha, 0.0, n)
    delta_grid = np.asarray(delta_grid, dtype=float)
    for delta in delta_grid:
        _check_delta(alpha, delta)
    values = mse_difference_values(p00, p11, alpha, delta_grid, n)
    return CurveSeries(
        MSE_DIFF_CURVE, {"alpha": alpha, "n": n, "p00": p00, "p11": p11}, delta_grid, values
    )


def boundary_curve(alpha, n, p_grid) -> CurveSeries:
    """Decision boundary delta*(p). Points without a root are left out of the
    series and listed under ``metadata["not_found"]`` as ``(p, sign)``."""
    points = [find_delta_star(float(p), alpha, n) for p in p_grid]
    found = [pt for pt in points if pt.found]
    return CurveSeries(
        BOUNDARY_CURVE,
        {"alpha": alpha, "n": n},
        np.array([pt.p for pt in found], dtype=float),
        np.array([pt.delta_star for pt in found], dtype=float),
        {"not_found": [(pt.p, pt.sign) for pt in points if not pt.found], "points": points},
    )

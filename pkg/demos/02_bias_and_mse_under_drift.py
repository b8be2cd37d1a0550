"""
How drift in the base rate affects both estimators.

Prints the data behind the slope curve (absolute calibration bias per unit of
drift) and the MSE difference as a function of drift.
"""

import numpy as np

from driftcorrect import (
    CALIBRATION,
    MISCLASSIFICATION,
    ErrorModel,
    Scenario,
    mse,
    mse_diff_curve,
    slope_curve,
)

## Moments at one scenario
model = ErrorModel(p00=0.7, p11=0.7)
scenario = Scenario(alpha=0.3, delta=0.1, n=1000)
for kind in (MISCLASSIFICATION, CALIBRATION):
    m = mse(model, scenario, kind)
    print(f"{kind:>18}: bias={m.bias:+.5f} variance={m.variance:.3e} mse={m.mse:.3e}")

## The calibration bias grows linearly in |delta|; its slope falls with accuracy
p = np.linspace(0.5, 1.0, 11)
series = slope_curve([0.05, 0.3], p)
print("\n   p   alpha=0.05  alpha=0.3  lower bound")
for i, pi in enumerate(p):
    print(f"{pi:5.2f}  {series[0].y[i]:9.4f}  {series[1].y[i]:9.4f}  {series[2].y[i]:9.4f}")

## MSE(misclassification) - MSE(calibration); positive means calibration wins
deltas = np.array([-0.2, -0.1, 0.0, 0.05, 0.1, 0.2, 0.4])
for alpha, n in [(0.3, 1000), (0.3, 50), (0.05, 50)]:
    curve = mse_diff_curve(alpha, n, 0.7, 0.7, deltas[deltas > -alpha])
    cells = "  ".join(f"{d:+.2f}:{v:+.2e}" for d, v in curve.points)
    print(f"\nalpha={alpha}, n={n}\n  {cells}")

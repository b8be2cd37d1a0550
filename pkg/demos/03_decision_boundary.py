"""
Which estimator to use: the decision boundary delta*(p).

Above the boundary the misclassification estimator has the lower first-order
MSE; below it the calibration estimator does.
"""

import numpy as np

from driftcorrect import boundary_curve, find_delta_star

## A single point
point = find_delta_star(p=0.7, alpha=0.3, n=1000)
print(point)

## Whole curves for a few (alpha, n)
p_grid = np.linspace(0.55, 0.95, 9)
for alpha in (0.05, 0.3):
    for n in (50, 1000):
        curve = boundary_curve(alpha, n, p_grid)
        found = dict(curve.points)
        row = "  ".join(
            f"{p:.2f}:{found[p]:.4f}" if p in found else f"{p:.2f}:  --  " for p in p_grid
        )
        print(f"alpha={alpha:<4} n={n:<5} {row}")

## "--" marks p where calibration wins for every positive drift

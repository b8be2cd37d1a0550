"""
Correcting a classifier's base-rate estimate with a labelled test set.
"""

from driftcorrect import (
    ConfusionCounts,
    calibration_estimate,
    estimate_rates,
    misclassification_estimate,
    naive_estimate,
)

## A labelled test set of 100 objects: rows are true classes, columns predictions
counts = ConfusionCounts(n11=40, n10=10, n01=5, n00=45)
rates = estimate_rates(counts)
print(rates)

## The classifier marks 500 000 of 1 000 000 production objects as positive
alpha_star = naive_estimate(500_000, 1_000_000)

## Invert the row-normalised confusion matrix ...
corrected = misclassification_estimate(alpha_star, rates)
print(f"misclassification estimator: {corrected.value:.6f} (outside [0, 1]: {corrected.out_of_range})")

## ... or reweight the column-normalised rates
print(f"calibration estimator:       {calibration_estimate(alpha_star, rates):.6f}")

## When predictions are rare, inverting can leave the unit interval; the value is kept as is
low = misclassification_estimate(0.05, rates)
print(f"alpha* = 0.05 -> {low.value:.4f}, flagged: {low.out_of_range}")

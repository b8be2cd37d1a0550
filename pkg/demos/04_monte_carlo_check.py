"""
Checking the first-order formulas against simulation and exact enumeration.
"""

from driftcorrect import (
    ErrorModel,
    Scenario,
    SimConfig,
    enumerate_small_exact,
    mse,
    simulate_moments,
)

model = ErrorModel(0.7, 0.7)

## Large test set: the formulas are accurate
scenario = Scenario(alpha=0.3, delta=0.1, n=1000)
result = simulate_moments(SimConfig(model, scenario, replications=200_000, seed=42))
for kind, empirical in (("misclassification", result.moments_p), ("calibration", result.moments_c)):
    analytic = mse(model, scenario, kind)
    se = result.standard_errors[kind]
    print(
        f"{kind:>18}: bias {analytic.bias:+.5f} vs {empirical.bias:+.5f} (SE {se['bias']:.1e}); "
        f"variance {analytic.variance:.4e} vs {empirical.variance:.4e} (SE {se['variance']:.1e})"
    )

## Small test set: exact enumeration shows where the expansion breaks down.
## The misclassification estimator divides by p00_hat + p11_hat - 1, which can
## land close to zero, so its exact variance is far above the first-order value.
for n in (20, 40):
    small = Scenario(alpha=0.3, delta=0.1, n=n)
    exact = enumerate_small_exact(model, small)
    for kind, ex in (("misclassification", exact.moments_p), ("calibration", exact.moments_c)):
        analytic = mse(model, small, kind)
        print(f"n={n} {kind:>18}: variance first-order {analytic.variance:.4f}, exact {ex.variance:.4f}")
    print(f"n={n} probability of a degenerate test set: {exact.degenerate_probability:.2e}")

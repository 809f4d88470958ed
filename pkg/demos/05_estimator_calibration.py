"""Calibrating the two tail estimators on exact Pareto samples.

The log-log least-squares fit of the survival function is the primary
estimator (it is what one draws on a CCDF plot); the Hill estimator is the
maximum-likelihood cross-check.  On inverse-CDF Pareto samples - where the
true exponent is known by construction - both should land on it.
"""

import numpy as np

from kestenlab import RngStream, hill_estimator, tail_exponent_ls


def exact_pareto(mu: float, n: int, seed: int) -> np.ndarray:
    """P(X > x) = x^{-mu} for x >= 1, by inverting the CDF."""
    u = RngStream(seed).generator().random(n)
    return u ** (-1.0 / mu)


n = 1_000_000
k = 10_000
print(f"{n} draws per case, LS fit above the 95th percentile, Hill with k = {k}\n")
print("true mu    LS fit             Hill               |difference|")

for i, mu in enumerate((1.0, 2.5, 3.0)):
    x = exact_pareto(mu, n, seed=900 + i)
    fit = tail_exponent_ls(x, float(np.quantile(x, 0.95)))
    hill = hill_estimator(x, k)
    se_hill = hill / np.sqrt(k)
    print(f"  {mu:3.1f}    {fit.exponent:.3f} +- {fit.stderr:.3f}    "
          f"{hill:.3f} +- {se_hill:.3f}     {abs(fit.exponent - hill):.3f}")

print("\nnotes:")
print("- the reported LS stderr is the OLS slope error; survival points are")
print("  strongly dependent, so treat it as optimistic")
print("- Hill's se = mu/sqrt(k) is the honest yardstick for agreement")
print("- never swap Hill in silently: the LS fit on the CCDF is the method")
print("  the headline empirical exponent-3 results are built on")

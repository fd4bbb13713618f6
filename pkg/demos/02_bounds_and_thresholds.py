"""
Lower bounds for n+2 points and equilateral-set thresholds
==========================================================

Any n+2 points in the p = 4 (or p = 2) space of dimension n must have
distance ratio at least schuette_bound(n, p) > 1.  Consequently no
n+2 points can be equilateral, and a perturbation argument extends
that to every exponent within epsilon_threshold(n, center) of the
center exponent.  This script tabulates both quantities and checks
the norm-equivalence factor that drives the perturbation.
"""

import math

import numpy as np

from lp_extremal import (
    bound_sweep,
    epsilon_threshold,
    norm_equivalence_factor,
    p_norm,
    schuette_bound,
)

print("n    bound(n,4)        bound(n,2)        eps(n,4)      eps(n,2)")
for n in (2, 3, 4, 8, 16, 64, 256):
    print(
        f"{n:<4d} {schuette_bound(n, 4):.12f}    {schuette_bound(n, 2):.12f}"
        f"    {epsilon_threshold(n, 4):.6e}  {epsilon_threshold(n, 2):.6e}"
    )

print()

# the same table as a structured object, ready for CSV export
table = bound_sweep(2, 6, 4)
print(table.to_csv())

# the threshold decays like 2 * center / (n log n); at n = 1e6 the
# scaled value is already within a percent of its limit
n = 10 ** 6
scaled = epsilon_threshold(n, 4) * n * math.log(n)
print(f"epsilon(1e6, 4) * n * ln n = {scaled:.6f}  (limit 8)")

print()

# two-sided norm equivalence: ||v||_4 and ||v||_p differ by at most
# n^|1/4 - 1/p|, the factor the threshold argument consumes
rng = np.random.default_rng(1)
print("p      n   factor       worst observed")
for p in (1.0, 2.0, 3.0, 6.0):
    worst = 0.0
    for _ in range(2000):
        v = rng.standard_normal(5)
        a, b = p_norm(v, 4.0), p_norm(v, p)
        worst = max(worst, a / b, b / a)
    print(f"{p:<6g} 5   {norm_equivalence_factor(5, p):.8f}   {worst:.8f}")

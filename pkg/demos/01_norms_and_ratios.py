"""
p-norms, distances, and the max/min distance ratio
===================================================

Walks the basic geometry: evaluate some p-norms, compare how the same
point set spreads out under different exponents, and read off the
distance ratio that everything else in the package bounds or attacks.
"""

import numpy as np

from lp_extremal import Configuration, distance, p_norm, ratio_report

v = np.array([3.0, 4.0])
for p in (1.0, 2.0, 4.0, 8.0):
    print(f"||(3,4)||_{p:g} = {p_norm(v, p):.12f}")

# the p-norm of a fixed vector decreases as p grows
print()

# unit square: four points, two distance values under any p
square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
for p in (1.0, 2.0, 4.0):
    side = distance(square[0], square[1], p)
    diag = distance(square[0], square[2], p)
    print(f"p = {p:g}: side {side:.12f}, diagonal {diag:.12f}, ratio {diag / side:.12f}")

print()

# ratio_report scans all pairs and names the extremal ones
config = Configuration(square, 4.0)
rep = ratio_report(config)
print(f"4-norm ratio of the square: {rep.ratio!r}")
print(f"  max {rep.max_dist!r} between points {rep.argmax_pair}")
print(f"  min {rep.min_dist!r} between points {rep.argmin_pair}")
print(f"  2^(1/4) for comparison:   {2.0 ** 0.25!r}")

print()

# a slightly bent square: the ratio moves away from the optimum
bent = square.copy()
bent[2] += np.array([0.05, -0.03])
print(f"bent square ratio: {ratio_report(Configuration(bent, 4.0)).ratio!r}")

# duplicate points have no defined ratio; the scan refuses them
try:
    ratio_report(Configuration(np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]]), 4.0))
except ValueError as exc:
    print(f"duplicates rejected: {exc}")

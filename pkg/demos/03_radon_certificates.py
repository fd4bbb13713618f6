"""
Radon partitions as per-instance ratio certificates
===================================================

Any n+2 points in R^n admit a Radon partition: two disjoint groups
whose convex hulls share a point.  From the convex weights alpha and
beta of that shared point one computes

    certificate = 2 / (2 - sum(alpha^2) - sum(beta^2)),

a lower bound on (max dist / min dist)^4 in the 4-norm for that very
point set.  The audit retraces the inequality chain behind the bound
term by term.
"""

import numpy as np

from lp_extremal import (
    Configuration,
    audit_chain,
    certificate_bound,
    radon_partition,
    ratio_report,
    schuette_bound,
)

# the unit square: the diagonals cross in the middle, both sides get
# uniform weights 1/2, and the certificate is exactly 2 = ratio^4
square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
cert = radon_partition(square)
print(f"square: sides {sorted(cert.side_a)} / {sorted(cert.side_b)}")
print(f"  alphas {cert.alphas}, betas {cert.betas}")
print(f"  certificate {cert.certificate!r}, residual {cert.residual:.3e}")
print(f"  actual ratio^4 = {ratio_report(Configuration(square, 4.0)).ratio ** 4!r}")

print()

# one point inside a triangle: a 1-versus-3 partition, heavier weights,
# and therefore a stronger certificate
nested = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [0.5, 0.5]])
cert = radon_partition(nested)
print(f"nested: sides {sorted(cert.side_a)} / {sorted(cert.side_b)}")
print(f"  certificate {cert.certificate!r}")
print(f"  actual ratio^4 = {ratio_report(Configuration(nested, 4.0)).ratio ** 4!r}")

print()

# the full audit on a random instance: each inequality with its margin
rng = np.random.default_rng(5)
pts = rng.standard_normal((5, 3))
config = Configuration(pts, 4.0)
cert = radon_partition(pts)
audit = audit_chain(config, cert)
print("random 5 points in R^3:")
for rec in audit.records():
    print(f"  {rec.name:<9} lhs {rec.lhs: .6e}  rhs {rec.rhs: .6e}  margin {rec.margin: .3e}")
print(f"  square slack {audit.square_slack:.6e} (always >= 0)")
print(f"  all hold: {audit.all_hold()}")

print()

# the certificate always sandwiches between the uniform lower bound
# and the observed ratio
worst_gap = np.inf
for trial in range(200):
    pts = rng.standard_normal((5, 3))
    cb = certificate_bound(radon_partition(pts))
    r4 = ratio_report(Configuration(pts, 4.0)).ratio ** 4
    assert r4 >= cb >= schuette_bound(3, 4) ** 4 - 1e-12
    worst_gap = min(worst_gap, r4 - cb)
print(f"200 random instances: ratio^4 - certificate >= {worst_gap:.6f} >= 0")

"""Radon partitions and per-instance distance-ratio certificates.

Any n+2 points in R^n admit a partition into two sides whose convex
hulls share a point.  The convex weights of that common point yield a
computable lower bound 2/(2 - sum(alpha^2) - sum(beta^2)) on the
fourth power of the max/min distance ratio in the 4-norm;
`audit_chain` re-derives the bound step by step on the given points
and verifies every intermediate inequality numerically.
"""

import math
from dataclasses import dataclass

import numpy as np

from lp_extremal.errors import NumericalBreakdown
from lp_extremal.lpgeom import Configuration, _pair_power_scan

__all__ = [
    "RadonCertificate",
    "InequalityRecord",
    "ChainAudit",
    "radon_partition",
    "certificate_bound",
    "audit_chain",
]

WEIGHT_RESIDUAL_TOL = 1e-10
CHAIN_TOL = 1e-9


def _as_point_matrix(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError(f"expected a 2-D array of points, got shape {pts.shape}")
    m, n = pts.shape
    if n < 1:
        raise ValueError("points must have dimension >= 1")
    if m != n + 2:
        raise ValueError(f"need exactly n+2 = {n + 2} points in R^{n}, got {m}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain non-finite coordinates")
    return pts


def _null_vector(pts: np.ndarray) -> np.ndarray:
    """Nonzero lambda with sum(lambda) = 0 and sum(lambda_i x_i) = 0.

    Gaussian elimination with partial pivoting on the (n+1) x (n+2)
    homogeneous system; the free variable is the last non-pivot column,
    set to 1, with any other free columns set to 0.
    """
    m, n = pts.shape
    a = np.vstack([np.ones((1, m)), pts.T])  # (n+1) x m
    n_rows = n + 1
    scale = max(1.0, float(np.max(np.abs(a))))
    tiny = 1e-13 * scale
    pivot_cols = []
    row = 0
    for col in range(m):
        if row >= n_rows:
            break
        sub = np.abs(a[row:, col])
        best = int(np.argmax(sub)) + row
        if abs(a[best, col]) <= tiny:
            continue  # free column
        if best != row:
            a[[row, best]] = a[[best, row]]
        a[row] = a[row] / a[row, col]
        mask = np.arange(n_rows) != row
        a[mask] -= np.outer(a[mask, col], a[row])
        pivot_cols.append(col)
        row += 1
    free_cols = [c for c in range(m) if c not in pivot_cols]
    if not free_cols:
        raise NumericalBreakdown(
            "elimination found no free column in the affine dependence system",
            diagnostics={"m": m, "n": n, "rank": len(pivot_cols), "scale": scale},
        )
    free = free_cols[-1]
    lam = np.zeros(m)
    lam[free] = 1.0
    # rows were reduced to identity on the pivot columns
    for r, c in enumerate(pivot_cols):
        lam[c] = -a[r, free]
    return lam


def _certificate_value(alphas, betas) -> float:
    sum_sq = math.fsum((float(w) ** 2 for w in alphas)) + math.fsum(
        (float(w) ** 2 for w in betas)
    )
    denom = 2.0 - sum_sq
    if denom <= 0.0:
        raise NumericalBreakdown(
            "weight squares sum to >= 2; certificate undefined",
            diagnostics={"sum_sq": sum_sq},
        )
    return 2.0 / denom


@dataclass(frozen=True)
class RadonCertificate:
    """Radon partition with convex weights and the ratio certificate.

    side_a and side_b are disjoint index tuples covering all n+2
    points; alphas and betas are the convex weights expressing the
    common point from each side.  certificate = 2/(2 - sum(alpha^2) -
    sum(beta^2)) bounds (max dist / min dist)^4 from below in the
    4-norm.  residual is the max-norm error of the two weighted-sum
    constraints relative to common_point.
    """

    side_a: tuple
    side_b: tuple
    alphas: np.ndarray
    betas: np.ndarray
    common_point: np.ndarray
    certificate: float
    residual: float

    def __post_init__(self):
        for name in ("alphas", "betas", "common_point"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "side_a", tuple(int(i) for i in self.side_a))
        object.__setattr__(self, "side_b", tuple(int(i) for i in self.side_b))
        if len(self.side_a) != len(self.alphas) or len(self.side_b) != len(self.betas):
            raise ValueError("weight vectors must match their index sets")
        if len(self.side_a) < 1 or len(self.side_b) < 1:
            raise ValueError("both sides of the partition must be non-empty")
        if set(self.side_a) & set(self.side_b):
            raise ValueError("partition sides overlap")
        if np.any(self.alphas < 0) or np.any(self.betas < 0):
            raise ValueError("convex weights must be nonnegative")
        for w in (self.alphas, self.betas):
            if abs(math.fsum(w.tolist()) - 1.0) > 1e-12:
                raise ValueError("convex weights must sum to 1")

    @property
    def k(self) -> int:
        return len(self.side_a)

    @property
    def l(self) -> int:
        return len(self.side_b)

    def to_dict(self) -> dict:
        return {
            "side_a": list(self.side_a),
            "side_b": list(self.side_b),
            "alphas": self.alphas.tolist(),
            "betas": self.betas.tolist(),
            "common_point": self.common_point.tolist(),
            "certificate": self.certificate,
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RadonCertificate":
        try:
            return cls(
                side_a=tuple(data["side_a"]),
                side_b=tuple(data["side_b"]),
                alphas=np.array(data["alphas"], dtype=float),
                betas=np.array(data["betas"], dtype=float),
                common_point=np.array(data["common_point"], dtype=float),
                certificate=float(data["certificate"]),
                residual=float(data["residual"]),
            )
        except KeyError as exc:
            raise ValueError(f"certificate dict missing field {exc.args[0]!r}") from None


def radon_partition(points, tol: float = WEIGHT_RESIDUAL_TOL) -> RadonCertificate:
    """Partition n+2 points in R^n into sides with intersecting hulls.

    Splits on the sign of a nonzero affine dependence: positive
    coefficients form side_a, strictly negative form side_b, and zero
    coefficients join side_b with weight 0.  The normalized weights
    place the common point in both convex hulls; `tol` bounds the
    allowed weighted-sum residual relative to the coordinate scale.
    """
    pts = _as_point_matrix(points)
    lam = _null_vector(pts)
    pos = lam > 0
    neg = lam < 0
    pos_sum = float(lam[pos].sum())
    neg_sum = float(-lam[neg].sum())
    if not pos.any() or not neg.any():
        raise NumericalBreakdown(
            "affine dependence vector is one-signed; cannot split",
            diagnostics={
                "lambda": lam.tolist(),
                "positive_mass": pos_sum,
                "negative_mass": neg_sum,
            },
        )
    side_a = tuple(int(i) for i in np.flatnonzero(pos))
    side_b = tuple(int(i) for i in np.flatnonzero(~pos))
    alphas = lam[pos] / pos_sum
    betas = -lam[~pos] / neg_sum  # zero entries stay exactly 0
    sum_a = alphas @ pts[list(side_a)]
    sum_b = betas @ pts[list(side_b)]
    common = 0.5 * (sum_a + sum_b)
    residual = float(
        max(np.max(np.abs(sum_a - common)), np.max(np.abs(sum_b - common)))
    )
    scale = float(np.max(np.abs(pts)))
    if residual > tol * max(1.0, scale):
        raise NumericalBreakdown(
            "weighted sums of the two sides disagree beyond tolerance",
            diagnostics={
                "residual": residual,
                "scale": scale,
                "tol": tol,
                "lambda": lam.tolist(),
            },
        )
    return RadonCertificate(
        side_a=side_a,
        side_b=side_b,
        alphas=alphas,
        betas=betas,
        common_point=common,
        certificate=_certificate_value(alphas, betas),
        residual=residual,
    )


def certificate_bound(cert: RadonCertificate) -> float:
    """Lower bound on ratio^4 implied by the certificate's weights.

    Recomputed from the weights rather than read off the stored field,
    so a hand-edited certificate is re-checked.
    """
    return _certificate_value(cert.alphas, cert.betas)


@dataclass(frozen=True)
class InequalityRecord:
    """One audited inequality: lhs >= rhs up to relative tolerance."""

    name: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def holds(self, tol: float = CHAIN_TOL) -> bool:
        return self.lhs >= self.rhs - tol * max(1.0, abs(self.lhs))

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "margin": self.margin}


@dataclass(frozen=True)
class ChainAudit:
    """Both sides of every inequality in the certificate derivation.

    within_a / within_b: the side-internal fourth-moment inequalities
    (1 - sum w^2) M^4 >= 2 sum_m sum_i w_i c_im^4 + 6 sum_m (sum_i w_i c_im^2)^2.
    cross: the between-sides inequality bounding the fourth moments
    below by mu^4 minus the mixed second-moment term.  ratio: the
    final M^4/mu^4 >= certificate.  square_slack is the nonnegative
    perfect-square term 6 sum_m (sum alpha a^2 - sum beta b^2)^2 that
    the final chain discards; zero slack means the ratio step is tight.
    """

    within_a: InequalityRecord
    within_b: InequalityRecord
    cross: InequalityRecord
    ratio: InequalityRecord
    square_slack: float
    tol: float

    def records(self) -> tuple:
        return (self.within_a, self.within_b, self.cross, self.ratio)

    def all_hold(self) -> bool:
        return all(r.holds(self.tol) for r in self.records()) and self.square_slack >= -self.tol

    def to_dict(self) -> dict:
        return {
            "within_a": self.within_a.to_dict(),
            "within_b": self.within_b.to_dict(),
            "cross": self.cross.to_dict(),
            "ratio": self.ratio.to_dict(),
            "square_slack": self.square_slack,
            "tol": self.tol,
        }


def _weighted_moments(weights: np.ndarray, block: np.ndarray):
    """(sum_i w_i c_im^2 per coordinate, total weighted fourth moment)."""
    sq = block * block
    second = weights @ sq
    fourth = math.fsum((weights @ (sq * sq)).tolist())
    return second, fourth


def audit_chain(
    config: Configuration, cert: RadonCertificate, tol: float = CHAIN_TOL
) -> ChainAudit:
    """Re-derive the certificate on config's points, checking each step.

    All moment arithmetic runs on points translated so the common
    point sits at the origin; M^4 and mu^4 come from raw fourth-power
    sums, never from rooted distances.  A violated inequality raises
    NumericalBreakdown: the chain is a theorem, so a violation means
    degenerate numerics or an implementation bug, not a counterexample.
    """
    if config.p != 4.0:
        raise ValueError(f"the certificate chain is specific to p = 4, got p = {config.p}")
    m, n = config.points.shape
    if m != n + 2:
        raise ValueError(f"need exactly n+2 = {n + 2} points, got {m}")
    if sorted(cert.side_a + cert.side_b) != list(range(m)):
        raise ValueError("certificate sides do not cover the configuration's indices")

    sums, _, dup = _pair_power_scan(config.points, 4.0)
    if dup is not None:
        raise ValueError(f"duplicate points at indices {dup}; ratio undefined")
    m4 = float(np.max(sums))
    mu4 = float(np.min(sums))

    shifted = config.points - cert.common_point
    a_second, a_fourth = _weighted_moments(cert.alphas, shifted[list(cert.side_a)])
    b_second, b_fourth = _weighted_moments(cert.betas, shifted[list(cert.side_b)])
    sum_sq_a = math.fsum((cert.alphas ** 2).tolist())
    sum_sq_b = math.fsum((cert.betas ** 2).tolist())

    within_a = InequalityRecord(
        "within_a",
        (1.0 - sum_sq_a) * m4,
        2.0 * a_fourth + 6.0 * math.fsum((a_second * a_second).tolist()),
    )
    within_b = InequalityRecord(
        "within_b",
        (1.0 - sum_sq_b) * m4,
        2.0 * b_fourth + 6.0 * math.fsum((b_second * b_second).tolist()),
    )
    cross = InequalityRecord(
        "cross",
        a_fourth + b_fourth,
        mu4 - 6.0 * math.fsum((a_second * b_second).tolist()),
    )
    denom = 2.0 - sum_sq_a - sum_sq_b
    if denom <= 0.0:
        raise NumericalBreakdown(
            "weight squares sum to >= 2 in audit",
            diagnostics={"sum_sq": sum_sq_a + sum_sq_b},
        )
    ratio = InequalityRecord("ratio", m4 / mu4, 2.0 / denom)
    diff = a_second - b_second
    slack = 6.0 * math.fsum((diff * diff).tolist())

    audit = ChainAudit(within_a, within_b, cross, ratio, slack, tol)
    for rec in audit.records():
        if not rec.holds(tol):
            raise NumericalBreakdown(
                f"audited inequality {rec.name!r} violated; this indicates a bug "
                "or degenerate numerics, not a counterexample",
                diagnostics={
                    "name": rec.name,
                    "lhs": rec.lhs,
                    "rhs": rec.rhs,
                    "margin": rec.margin,
                    "tol": tol,
                    "weight_residual": cert.residual,
                },
            )
    return audit

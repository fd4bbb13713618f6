"""Closed-form distance-ratio bounds and equilateral-set thresholds.

Any n+2 points in l_p^n (p = 2 or 4) have max/min distance ratio at
least `schuette_bound(n, p)`.  Consequently equilateral sets in l_p^n
cap at n+1 points for p in an interval around 2 and around 4 whose
half-width is `epsilon_threshold`; the interval transfer uses the
norm-equivalence factor n^{|1/4 - 1/p|}.
"""

import math
import operator
from dataclasses import dataclass

__all__ = [
    "schuette_bound",
    "epsilon_threshold",
    "norm_equivalence_factor",
    "BoundRow",
    "BoundTable",
    "bound_sweep",
]


def _check_dimension(n) -> int:
    try:
        n = operator.index(n)
    except TypeError:
        raise ValueError(f"dimension must be an integer, got {n!r}") from None
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return n


def schuette_bound(n, p) -> float:
    """Lower bound on the distance ratio of any n+2 points in l_p^n.

    Parameters
    ----------
    n : int
        Dimension, n >= 1.
    p : {2, 4}
        Norm exponent.  Only these two cases are proven.

    Returns
    -------
    float
        (1 + 2/n)^(1/p) for even n, (1 + 2/(n - 1/(n+2)))^(1/p) for
        odd n.  Strictly decreasing in n, always > 1.
    """
    n = _check_dimension(n)
    if p not in (2, 4):
        raise ValueError(f"bound is proven only for p in {{2, 4}}, got {p!r}")
    if n % 2 == 0:
        d = float(n)
    else:
        d = n - 1.0 / (n + 2)
    # log1p keeps full precision in the bound's excess over 1 at large n
    return math.exp(math.log1p(2.0 / d) / p)


def epsilon_threshold(n, center_p) -> float:
    """Half-width of the exponent interval forcing e(l_p^n) = n+1.

    Any p with |p - center_p| < epsilon_threshold(n, center_p) admits
    no equilateral set of more than n+1 points in dimension n.

    Returns center_p * ln(1 + 2/n) / ln(n + 2); positive, and of order
    2*center_p / (n ln n) as n grows.
    """
    n = _check_dimension(n)
    if center_p not in (2, 4):
        raise ValueError(f"threshold is proven only around p in {{2, 4}}, got {center_p!r}")
    return center_p * math.log1p(2.0 / n) / math.log(n + 2)


def norm_equivalence_factor(n, p) -> float:
    """Two-sided comparison constant between the 4-norm and the p-norm.

    For every v in R^n, each of ||v||_4 and ||v||_p bounds the other
    within a factor n^{|1/4 - 1/p|}.  p = math.inf is accepted here
    (and only here) as the 1/p -> 0 limit.
    """
    n = _check_dimension(n)
    if not (p >= 1):
        raise ValueError(f"exponent must satisfy p >= 1, got {p!r}")
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    return float(n) ** abs(0.25 - inv_p)


@dataclass(frozen=True)
class BoundRow:
    """One sweep row: dimension, exponent, ratio bound, threshold width."""

    n: int
    p: float
    bound: float
    epsilon: float

    def to_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "bound": self.bound, "epsilon": self.epsilon}


@dataclass(frozen=True)
class BoundTable:
    """Sweep of schuette_bound and epsilon_threshold over a dimension range."""

    rows: tuple

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows]}

    def to_csv(self) -> str:
        """CSV with header n,p,bound,epsilon; floats at 17 significant digits."""
        lines = ["n,p,bound,epsilon"]
        for r in self.rows:
            lines.append(
                f"{r.n},{format(r.p, '.17g')},{format(r.bound, '.17g')},"
                f"{format(r.epsilon, '.17g')}"
            )
        return "\n".join(lines) + "\n"


def bound_sweep(n_start, n_end, p) -> BoundTable:
    """BoundTable rows for every dimension in [n_start, n_end]."""
    n_start = _check_dimension(n_start)
    n_end = _check_dimension(n_end)
    if n_end < n_start:
        raise ValueError(f"empty sweep range {n_start}..{n_end}")
    rows = tuple(
        BoundRow(n, float(p), schuette_bound(n, p), epsilon_threshold(n, p))
        for n in range(n_start, n_end + 1)
    )
    return BoundTable(rows)

"""Explicit (n+2)-point sets in the 4-norm with near-minimal distance ratio.

The even-dimensional building block lives in R^k: the k coordinate
permutations of a = (1+x, x, ..., x) together with b = (y, ..., y)
form an equilateral k+1 set once (x, y) solves

    (1+x)^4 + (k-1) x^4 = k y^4,
    (1+x-y)^4 + (k-1) (x-y)^4 = 2.

Two such blocks on orthogonal coordinate axes give n+2 points in R^n
whose distance ratio is 1 + sqrt(2/n) + O(n^{-3/4}).  The solver works
through f(t) = (((1+t)^4 + (k-1)t^4)/k)^{1/4}: with alpha_k the unique
negative solution of f(t) = (2/k)^{1/4}, the branch with y > 0 is
x_k = the unique root of f(t) - t = -alpha_k and y_k = x_k - alpha_k.
The mirror branch (y < 0, through the positive solution beta_k) is
detected for diagnostics but never used.
"""

import math
import operator
from dataclasses import dataclass
from typing import Optional

import numpy as np

from lp_extremal.errors import NumericalBreakdown
from lp_extremal.lpgeom import Configuration

__all__ = [
    "f_eval",
    "solve_alpha",
    "solve_beta",
    "solve_system",
    "ConstructionSolution",
    "BuiltConfiguration",
    "build_configuration",
]

SYSTEM_RESIDUAL_TOL = 1e-10
BISECT_WIDTH = 1e-13
NEWTON_STEPS = 3


def _check_k(k) -> int:
    try:
        k = operator.index(k)
    except TypeError:
        raise ValueError(f"k must be an integer, got {k!r}") from None
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return k


def f_eval(t, k) -> float:
    """(((1+t)^4 + (k-1) t^4) / k)^(1/4); the scaled block norm profile.

    Equals k^{-1/4} ||(1,0,...,0) + t (1,...,1)||_4: strictly convex,
    strictly Lipschitz with constant below 1, minimum between -1/k and 0.
    """
    k = _check_k(k)
    t = float(t)
    s = math.fsum([(1.0 + t) ** 4, (k - 1.0) * t ** 4])
    return (s / k) ** 0.25


def _bisect_newton(poly, dpoly, lo, hi, label, diagnostics):
    """Root of poly on [lo, hi]: bisection to a tight bracket, Newton polish.

    The sign change is mathematically guaranteed; if the initial bracket
    misses it (edge cases sit exactly on an endpoint) the interval is
    widened by doubling to the left.  Bisection cannot diverge, and the
    few Newton steps on the polynomial restore full float precision.
    """
    flo, fhi = poly(lo), poly(hi)
    widenings = 0
    while flo * fhi > 0.0:
        widenings += 1
        if widenings > 60:
            raise NumericalBreakdown(
                f"no sign change found for {label} after doubling the bracket",
                diagnostics={**diagnostics, "lo": lo, "hi": hi, "flo": flo, "fhi": fhi},
            )
        lo -= hi - lo
        flo = poly(lo)
    if flo == 0.0:
        root = lo
    elif fhi == 0.0:
        root = hi
    else:
        a, b, fa = lo, hi, flo
        while b - a > BISECT_WIDTH:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break  # interval at float resolution
            fm = poly(mid)
            if fm == 0.0:
                a = b = mid
                break
            if (fm > 0.0) == (fa > 0.0):
                a, fa = mid, fm
            else:
                b = mid
        root = 0.5 * (a + b)
        for _ in range(NEWTON_STEPS):
            d = dpoly(root)
            if d == 0.0:
                break
            step = poly(root) / d
            candidate = root - step
            if not math.isfinite(candidate) or candidate < lo or candidate > hi:
                break
            root = candidate
    return root


def _root_of_f_equals(k: int, target_fourth: float, lo: float, hi: float, label: str):
    """Root of (1+t)^4 + (k-1) t^4 - target_fourth on [lo, hi]."""

    def poly(t):
        return math.fsum([(1.0 + t) ** 4, (k - 1.0) * t ** 4, -target_fourth])

    def dpoly(t):
        return 4.0 * (1.0 + t) ** 3 + 4.0 * (k - 1.0) * t ** 3

    return _bisect_newton(poly, dpoly, lo, hi, label, {"k": k})


def solve_alpha(k) -> float:
    """Unique negative solution of f(t) = (2/k)^{1/4}.

    Lies strictly below -k^{-1/4}; at k = 1 it is exactly -1 - 2^{1/4}.
    """
    k = _check_k(k)
    alpha = _root_of_f_equals(k, 2.0, -1.0 - 2.0 ** 0.25, -float(k) ** -0.25, "alpha")
    if not alpha < -float(k) ** -0.25:
        raise NumericalBreakdown(
            "negative branch root failed its bracket constraint",
            diagnostics={"k": k, "alpha": alpha},
        )
    return alpha


def solve_beta(k) -> float:
    """Unique positive solution of f(t) = (2/k)^{1/4}.

    This is the gateway to the rejected y < 0 solution branch; exposed
    only as a diagnostic, the construction never uses it.
    """
    k = _check_k(k)
    beta = _root_of_f_equals(k, 2.0, 0.0, 1.0, "beta")
    if not 0.0 < beta < float(k) ** -0.25:
        raise NumericalBreakdown(
            "positive branch root failed its bracket constraint",
            diagnostics={"k": k, "beta": beta},
        )
    return beta


@dataclass(frozen=True)
class ConstructionSolution:
    """Solved block parameters (x, y) for one k, with residual evidence.

    residual1 and residual2 are the absolute residuals of the two
    defining equations; f_at_alpha_residual is |f(alpha) - (2/k)^{1/4}|.
    """

    k: int
    x: float
    y: float
    alpha_root: float
    residual1: float
    residual2: float
    f_at_alpha_residual: float

    def __post_init__(self):
        if not (self.x < 0.0 < self.y):
            raise ValueError(f"branch must satisfy x < 0 < y, got x={self.x}, y={self.y}")
        if not self.alpha_root < -float(self.k) ** -0.25:
            raise ValueError("alpha_root must lie below -k^(-1/4)")
        if abs(self.x - self.y - self.alpha_root) > 1e-12:
            raise ValueError("x - y must equal alpha_root")
        if self.residual1 > SYSTEM_RESIDUAL_TOL or self.residual2 > SYSTEM_RESIDUAL_TOL:
            raise ValueError(
                f"equation residuals {self.residual1}, {self.residual2} exceed "
                f"{SYSTEM_RESIDUAL_TOL}"
            )
        if self.f_at_alpha_residual > 1e-12:
            raise ValueError("f(alpha) misses (2/k)^(1/4) by more than 1e-12")

    def asymptotic_gaps(self) -> dict:
        """Scaled deviations from the three large-k expansions.

        Each entry is |value - expansion| * k, where the expansions are
        x ~ -k^{-1/2} + k^{-3/4}, y ~ k^{-1/4} - k^{-3/4} and
        alpha ~ -k^{-1/4} - k^{-1/2} + 2 k^{-3/4}, all with O(k^{-1})
        error terms; boundedness of the scaled gap certifies the rate.
        """
        k = float(self.k)
        return {
            "x": abs(self.x + k ** -0.5 - k ** -0.75) * k,
            "y": abs(self.y - k ** -0.25 + k ** -0.75) * k,
            "alpha": abs(self.alpha_root + k ** -0.25 + k ** -0.5 - 2.0 * k ** -0.75) * k,
        }

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "x": self.x,
            "y": self.y,
            "alpha_root": self.alpha_root,
            "residual1": self.residual1,
            "residual2": self.residual2,
            "f_at_alpha_residual": self.f_at_alpha_residual,
            "asymptotic_gaps": self.asymptotic_gaps(),
        }


def solve_system(k) -> ConstructionSolution:
    """Solve the two-equation block system on the y > 0 branch.

    x_k is the unique root of f(t) - t = -alpha_k (a cubic after the
    quartic terms cancel), y_k = x_k - alpha_k.  Residuals of both
    original equations are checked against 1e-10.
    """
    k = _check_k(k)
    alpha = solve_alpha(k)

    def poly(t):
        return math.fsum([(1.0 + t) ** 4, (k - 1.0) * t ** 4, -k * (t - alpha) ** 4])

    def dpoly(t):
        return 4.0 * (1.0 + t) ** 3 + 4.0 * (k - 1.0) * t ** 3 - 4.0 * k * (t - alpha) ** 3

    x = _bisect_newton(poly, dpoly, -1.0, 0.0, "x", {"k": k, "alpha": alpha})
    y = x - alpha
    residual1 = abs(math.fsum([(1.0 + x) ** 4, (k - 1.0) * x ** 4, -k * y ** 4]))
    residual2 = abs(
        math.fsum([(1.0 + x - y) ** 4, (k - 1.0) * (x - y) ** 4, -2.0])
    )
    f_gap = abs(f_eval(alpha, k) - (2.0 / k) ** 0.25)
    return ConstructionSolution(
        k=k,
        x=x,
        y=y,
        alpha_root=alpha,
        residual1=residual1,
        residual2=residual2,
        f_at_alpha_residual=f_gap,
    )


def _equilateral_block(sol: ConstructionSolution) -> np.ndarray:
    """The k+1 block vectors in R^k: permutations of a, then b."""
    k = sol.k
    block = np.full((k + 1, k), sol.x)
    np.fill_diagonal(block[:k], 1.0 + sol.x)
    block[k, :] = sol.y
    return block


@dataclass(frozen=True)
class BuiltConfiguration:
    """An assembled n+2 point configuration with its solver provenance.

    solution_even_part always holds the k-block solution; for odd n a
    second, (k+1)-dimensional block is used and solution_odd_part holds
    its solution (None for even n).  expected_ratio is the closed-form
    ratio implied by the block norms; it matches ratio_report on the
    configuration to within accumulation error.
    """

    n: int
    config: Configuration
    expected_ratio: float
    solution_even_part: ConstructionSolution
    solution_odd_part: Optional[ConstructionSolution] = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "config": self.config.to_dict(),
            "expected_ratio": self.expected_ratio,
            "solution_even_part": self.solution_even_part.to_dict(),
            "solution_odd_part": None,
        }
        if self.solution_odd_part is not None:
            out["solution_odd_part"] = self.solution_odd_part.to_dict()
        return out


def build_configuration(n) -> BuiltConfiguration:
    """n+2 points in R^n (4-norm) with only two distinct distances.

    Even n = 2k places the k-block on each of two orthogonal coordinate
    groups; odd n = 2k+1 pairs the k-block with the (k+1)-block.  The
    within-block distance is 2^{1/4}; the cross-block distance is
    smaller, so the ratio is 2^{1/4} / cross = 1 + sqrt(2/n) + O(n^{-3/4}).
    """
    try:
        n = operator.index(n)
    except TypeError:
        raise ValueError(f"n must be an integer, got {n!r}") from None
    if n < 2:
        raise ValueError(f"need dimension n >= 2, got {n}")
    if n % 2 == 0:
        k = n // 2
        sol = solve_system(k)
        block = _equilateral_block(sol)
        m = n + 2
        pts = np.zeros((m, n))
        pts[: k + 1, :k] = block
        pts[k + 1 :, k:] = block
        # cross distance^4 = 2 k y^4, within = 2; ratio = 1 / (k^{1/4} y)
        expected = 1.0 / (float(k) ** 0.25 * sol.y)
        return BuiltConfiguration(
            n=n,
            config=Configuration(pts, 4.0),
            expected_ratio=expected,
            solution_even_part=sol,
        )
    k = (n - 1) // 2
    sol_a = solve_system(k)
    sol_b = solve_system(k + 1)
    block_a = _equilateral_block(sol_a)  # k+1 points in R^k
    block_b = _equilateral_block(sol_b)  # k+2 points in R^{k+1}
    m = n + 2
    pts = np.zeros((m, n))
    pts[: k + 1, :k] = block_a
    pts[k + 1 :, k:] = block_b
    cross4 = math.fsum([k * sol_a.y ** 4, (k + 1) * sol_b.y ** 4])
    expected = 2.0 ** 0.25 / cross4 ** 0.25
    return BuiltConfiguration(
        n=n,
        config=Configuration(pts, 4.0),
        expected_ratio=expected,
        solution_even_part=sol_a,
        solution_odd_part=sol_b,
    )

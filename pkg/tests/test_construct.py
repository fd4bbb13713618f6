import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lp_extremal.bounds import schuette_bound
from lp_extremal.construct import (
    BuiltConfiguration,
    ConstructionSolution,
    build_configuration,
    f_eval,
    solve_alpha,
    solve_beta,
    solve_system,
)
from lp_extremal.lpgeom import Configuration, distance, is_equilateral, ratio_report

# frozen 20-digit evaluations (mpmath, 50 dps)
ALPHA_1 = -2.1892071150027210667  # -1 - 2^{1/4}
X_1 = -1.5946035575013605334  # -1 - 8^{-1/4}
Y_1 = 0.59460355750136053336  # 8^{-1/4}
BETA_1 = 0.18920711500272106671  # 2^{1/4} - 1
F_M1_K2 = 0.84089641525371454303  # (1/2)^{1/4}
RATIO_N2 = 1.6817928305074290861  # 2^{3/4}

K_GRID = [1, 2, 3, 4, 5, 8, 13, 50, 211, 1024, 10_000]


def pairwise_distances(cfg):
    pts = cfg.points
    out = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            out.append(distance(pts[i], pts[j], cfg.p))
    return out


class TestFEval:
    def test_at_zero(self):
        for k in K_GRID:
            assert f_eval(0.0, k) == pytest.approx(k ** -0.25, rel=1e-15)

    def test_k1_collapses_to_abs(self):
        for t in [-3.0, -1.2, -1.0, -0.4, 0.0, 0.7, 5.0]:
            assert f_eval(t, 1) == pytest.approx(abs(1.0 + t), rel=1e-15, abs=1e-15)

    def test_frozen_value(self):
        assert f_eval(-1.0, 2) == pytest.approx(F_M1_K2, abs=1e-15)

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            f_eval(0.0, 0)
        with pytest.raises(ValueError):
            f_eval(0.0, 2.5)

    @given(
        st.floats(-50, 50),
        st.floats(-50, 50),
        st.sampled_from(K_GRID),
    )
    @settings(max_examples=200)
    def test_convexity(self, s, t, k):
        mid = f_eval(0.5 * (s + t), k)
        chord = 0.5 * (f_eval(s, k) + f_eval(t, k))
        assert mid <= chord + 1e-12 * max(1.0, chord)

    @given(
        st.floats(-50, 50),
        st.floats(1e-6, 10.0),
        st.sampled_from([k for k in K_GRID if k >= 2]),
    )
    @settings(max_examples=200)
    def test_strict_lipschitz(self, t, h, k):
        # strict for k >= 2; at k = 1 the profile is |1+t| and the
        # bound is attained with equality on the linear branches
        assert abs(f_eval(t + h, k) - f_eval(t, k)) < h

    @given(st.floats(-50, 50), st.floats(1e-6, 10.0))
    @settings(max_examples=100)
    def test_k1_lipschitz_non_strict(self, t, h):
        # equality is attained on the linear branches, so allow rounding
        assert abs(f_eval(t + h, 1) - f_eval(t, 1)) <= h + 1e-12 * max(1.0, h)

    def test_monotone_frames_and_limits(self):
        grid = np.linspace(-8.0, 8.0, 200)
        for k in [2, 5, 40]:
            g = [f_eval(t, k) - t for t in grid]
            h = [f_eval(t, k) + t for t in grid]
            assert all(a > b for a, b in zip(g, g[1:]))
            assert all(a < b for a, b in zip(h, h[1:]))
        for k in [1, 2, 5, 40]:
            # k = 1 frames are monotone but only weakly (flat branches)
            g = [f_eval(t, k) - t for t in grid]
            h = [f_eval(t, k) + t for t in grid]
            assert all(a >= b for a, b in zip(g, g[1:]))
            assert all(a <= b for a, b in zip(h, h[1:]))
            assert f_eval(1e6, k) - 1e6 == pytest.approx(1.0 / k, abs=1e-4)
            assert f_eval(-1e6, k) + (-1e6) == pytest.approx(-1.0 / k, abs=1e-4)


class TestSolveAlpha:
    def test_k1_closed_form(self):
        assert solve_alpha(1) == pytest.approx(ALPHA_1, abs=1e-12)

    def test_k3_exact_rational_point(self):
        # (1 + (-1))^4 + 2*(-1)^4 = 2 exactly
        assert solve_alpha(3) == pytest.approx(-1.0, abs=1e-13)

    def test_defining_equation(self):
        for k in K_GRID:
            alpha = solve_alpha(k)
            assert abs(f_eval(alpha, k) - (2.0 / k) ** 0.25) < 1e-12
            assert alpha < -float(k) ** -0.25

    def test_beta_side(self):
        assert solve_beta(1) == pytest.approx(BETA_1, abs=1e-12)
        for k in K_GRID:
            beta = solve_beta(k)
            assert 0.0 < beta < float(k) ** -0.25
            assert abs(f_eval(beta, k) - (2.0 / k) ** 0.25) < 1e-12


class TestSolveSystem:
    def test_k1_closed_form(self):
        sol = solve_system(1)
        assert sol.x == pytest.approx(X_1, abs=1e-12)
        assert sol.y == pytest.approx(Y_1, abs=1e-12)
        assert sol.alpha_root == pytest.approx(ALPHA_1, abs=1e-12)

    def test_k3_exact_rational_point(self):
        sol = solve_system(3)
        assert sol.x == pytest.approx(-0.5, abs=1e-13)
        assert sol.y == pytest.approx(0.5, abs=1e-13)

    def test_residuals_and_branch_across_k(self):
        for k in K_GRID:
            sol = solve_system(k)
            assert sol.x < 0.0 < sol.y
            assert sol.residual1 <= 1e-10
            assert sol.residual2 <= 1e-10
            assert sol.f_at_alpha_residual <= 1e-12
            assert abs(sol.x - sol.y - sol.alpha_root) <= 1e-12

    def test_asymptotic_gaps_bounded(self):
        worst = 0.0
        gaps_along_grid = []
        for k in [100, 1000, 10_000, 100_000]:
            gaps = solve_system(k).asymptotic_gaps()
            gaps_along_grid.append(max(gaps.values()))
            worst = max(worst, *gaps.values())
        assert worst <= 10.0
        # non-exploding: the last grid point is no worse than 2x the peak so far
        assert gaps_along_grid[-1] <= 2.0 * max(gaps_along_grid[:-1] + [1.0])

    def test_validation_rejects_wrong_branch(self):
        sol = solve_system(2)
        with pytest.raises(ValueError):
            ConstructionSolution(
                k=2,
                x=sol.x,
                y=-sol.y,
                alpha_root=sol.alpha_root,
                residual1=0.0,
                residual2=0.0,
                f_at_alpha_residual=0.0,
            )
        with pytest.raises(ValueError):
            ConstructionSolution(
                k=2,
                x=sol.x,
                y=sol.y,
                alpha_root=sol.alpha_root,
                residual1=1.0,
                residual2=0.0,
                f_at_alpha_residual=0.0,
            )


class TestBuildConfiguration:
    def test_n2_matches_hand_arithmetic(self):
        built = build_configuration(2)
        assert built.n == 2
        assert built.expected_ratio == pytest.approx(RATIO_N2, abs=1e-12)
        pts = built.config.points
        assert pts.shape == (4, 2)
        np.testing.assert_allclose(
            sorted(pts[:, 0].tolist() + pts[:, 1].tolist()),
            sorted([-Y_1, Y_1, -Y_1, Y_1, 0, 0, 0, 0]),
            atol=1e-12,
        )
        rep = ratio_report(built.config)
        assert rep.ratio == pytest.approx(RATIO_N2, rel=1e-12)
        assert rep.max_dist == pytest.approx(2.0 ** 0.25, rel=1e-12)
        assert rep.min_dist == pytest.approx(2.0 ** -0.5, rel=1e-12)

    def test_even_shape_and_ratio(self):
        for n in [2, 4, 6, 8, 20, 128]:
            built = build_configuration(n)
            k = n // 2
            assert built.config.points.shape == (n + 2, n)
            assert built.solution_odd_part is None
            assert built.expected_ratio == pytest.approx(
                1.0 / (k ** 0.25 * built.solution_even_part.y), rel=1e-15
            )
            rep = ratio_report(built.config)
            assert rep.ratio == pytest.approx(built.expected_ratio, rel=1e-9)
            assert rep.ratio >= schuette_bound(n, 4) - 1e-9

    def test_odd_shape_and_ratio(self):
        for n in [3, 5, 7, 21]:
            built = build_configuration(n)
            k = (n - 1) // 2
            assert built.config.points.shape == (n + 2, n)
            assert built.solution_even_part.k == k
            assert built.solution_odd_part is not None
            assert built.solution_odd_part.k == k + 1
            rep = ratio_report(built.config)
            assert rep.ratio == pytest.approx(built.expected_ratio, rel=1e-9)
            assert rep.ratio >= schuette_bound(n, 4) - 1e-9

    def test_exactly_two_distinct_distances(self):
        for n in [2, 3, 4, 5, 10, 11]:
            built = build_configuration(n)
            dists = pairwise_distances(built.config)
            hi = max(dists)
            lo = min(dists)
            assert hi == pytest.approx(2.0 ** 0.25, rel=1e-9)
            assert lo < hi
            for d in dists:
                assert (
                    abs(d - hi) <= 1e-9 * hi or abs(d - lo) <= 1e-9 * hi
                ), f"third distance value {d} at n={n}"

    def test_within_block_is_equilateral(self):
        for k in [1, 2, 3, 10]:
            sol = solve_system(k)
            block = np.full((k + 1, k), sol.x)
            np.fill_diagonal(block[:k], 1.0 + sol.x)
            block[k] = sol.y
            flag, lam = is_equilateral(Configuration(block, 4.0), 1e-9)
            assert flag
            assert lam == pytest.approx(2.0 ** 0.25, rel=1e-12)

    def test_envelope_moderate_sizes(self):
        for n in [4, 16, 64, 256, 5, 17, 65]:
            r = build_configuration(n).expected_ratio
            gap = abs(r - 1.0 - math.sqrt(2.0 / n)) * n ** 0.75
            assert gap <= 10.0, f"envelope {gap} at n={n}"

    def test_rejects_bad_n(self):
        with pytest.raises(ValueError):
            build_configuration(1)
        with pytest.raises(ValueError):
            build_configuration(2.5)

import numpy as np
import pytest

from lp_extremal.bounds import schuette_bound
from lp_extremal.construct import build_configuration
from lp_extremal.lpgeom import Configuration, ratio_report
from lp_extremal.radon import audit_chain, radon_partition
from lp_extremal.search import minimize_ratio

FOURTH_ROOT_2 = 2.0 ** 0.25


class TestDeterminism:
    def test_identical_inputs_identical_results(self):
        a = minimize_ratio(2, 3000, "auto", 42)
        b = minimize_ratio(2, 3000, "auto", 42)
        assert a.best_ratio == b.best_ratio
        assert np.array_equal(a.best_config.points, b.best_config.points)
        assert a.to_dict() == b.to_dict()

    def test_thread_cap_does_not_change_result(self, monkeypatch):
        monkeypatch.setenv("LP_EXTREMAL_THREADS", "1")
        serial = minimize_ratio(3, 2000, "auto", 5)
        monkeypatch.setenv("LP_EXTREMAL_THREADS", "4")
        parallel = minimize_ratio(3, 2000, "auto", 5)
        assert serial.best_ratio == parallel.best_ratio
        assert np.array_equal(serial.best_config.points, parallel.best_config.points)

    def test_invalid_thread_cap(self, monkeypatch):
        monkeypatch.setenv("LP_EXTREMAL_THREADS", "zero")
        with pytest.raises(ValueError):
            minimize_ratio(2, 10, "auto", 0)
        monkeypatch.setenv("LP_EXTREMAL_THREADS", "0")
        with pytest.raises(ValueError):
            minimize_ratio(2, 10, "auto", 0)


class TestSearchQuality:
    def test_n2_approaches_square(self):
        res = minimize_ratio(2, 10_000, "auto", 0)
        assert res.best_ratio <= FOURTH_ROOT_2 + 1e-3
        assert res.best_ratio >= FOURTH_ROOT_2 - 1e-9

    def test_monotone_in_budget(self):
        for seed in (3, 11):
            ratios = [
                minimize_ratio(2, budget, "auto", seed).best_ratio
                for budget in (500, 2000, 6000)
            ]
            assert ratios[0] >= ratios[1] >= ratios[2]

    def test_never_below_bound(self):
        for n in range(2, 7):
            res = minimize_ratio(n, 800, "auto", n)
            assert res.best_ratio >= schuette_bound(n, 4) - 1e-9
            assert res.bound == schuette_bound(n, 4)

    def test_n4_sandwich(self):
        built = build_configuration(4)
        res = minimize_ratio(4, 2000, "auto", 1)
        # the construction seeds one restart, so it caps the result
        assert res.best_ratio <= built.expected_ratio * (1 + 1e-12)
        assert res.best_ratio >= schuette_bound(4, 4) - 1e-9


class TestResultContract:
    def test_best_ratio_reproducible(self):
        res = minimize_ratio(3, 1500, "auto", 9)
        again = ratio_report(res.best_config).ratio
        assert again == res.best_ratio

    def test_fields_consistent(self):
        res = minimize_ratio(2, 1001, "auto", 13)
        assert res.evaluations == 1001
        assert res.restarts == 4
        assert res.rng_seed == 13
        assert res.gap == res.best_ratio - res.bound

    def test_best_config_passes_audit(self):
        for n, seed in [(2, 0), (3, 2)]:
            res = minimize_ratio(n, 1200, "auto", seed)
            cert = radon_partition(res.best_config.points)
            audit = audit_chain(res.best_config, cert)
            assert audit.all_hold()

    def test_tiny_budget(self):
        res = minimize_ratio(2, 2, "auto", 0)
        assert res.evaluations == 2
        assert res.best_ratio >= schuette_bound(2, 4) - 1e-9


class TestSeeds:
    def test_explicit_seed_list(self):
        built = build_configuration(2)
        res = minimize_ratio(2, 600, [built.config], 4)
        assert res.restarts == 1
        assert res.best_ratio <= built.expected_ratio * (1 + 1e-12)

    def test_seed_validation(self):
        square = Configuration(
            np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]), 4.0
        )
        with pytest.raises(ValueError, match="p = 4"):
            minimize_ratio(2, 10, [Configuration(square.points, 2.0)], 0)
        with pytest.raises(ValueError, match="shape"):
            minimize_ratio(3, 10, [square], 0)
        with pytest.raises(ValueError, match="empty"):
            minimize_ratio(2, 10, [], 0)
        with pytest.raises(ValueError):
            minimize_ratio(2, 10, "car", 0)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            minimize_ratio(1, 10, "auto", 0)
        with pytest.raises(ValueError):
            minimize_ratio(2, 0, "auto", 0)

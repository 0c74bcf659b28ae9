import numpy as np
import pytest
from hypothesis import given, strategies as st

from dgsamp.errors import DimensionMismatchError
from dgsamp.recon import ReconResult, SampleSet, gsv, mse, reconstruct, sampling_operator

from conftest import make_er


class TestSampleSet:
    def test_sorted_unique(self):
        s = SampleSet(np.array([5, 1, 3]))
        assert s.indices.tolist() == [1, 3, 5]
        assert s.k == 3

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            SampleSet(np.array([1, 1, 2]))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            SampleSet(np.array([-1, 2]))

    def test_mask(self):
        a = SampleSet(np.array([0, 2])).mask(4)
        assert a.tolist() == [1.0, 0.0, 1.0, 0.0]
        with pytest.raises(ValueError):
            SampleSet(np.array([9])).mask(4)


class TestGsv:
    def test_constant_is_zero(self):
        _, _, L = make_er(40, 0.2, 0)
        assert gsv(np.full(40, 3.7), L) <= 1e-12

    def test_two_cycle_hand_value(self, two_cycle):
        _, _, L = two_cycle
        assert gsv(np.array([1.0, 0.0]), L) == pytest.approx(2.0)

    @given(st.integers(0, 5000))
    def test_quadratic_form_identity(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(5, 80))
        _, _, L = make_er(n, 0.2, seed)
        x = rng.standard_normal(n)
        Ld = L.matrix.toarray()
        quad = x @ (Ld.T @ Ld) @ x
        assert abs(gsv(x, L) - quad) <= 1e-10 * max(1.0, abs(quad))

    def test_dimension_mismatch(self, two_cycle):
        _, _, L = two_cycle
        with pytest.raises(DimensionMismatchError):
            gsv(np.ones(3), L)


class TestReconstruct:
    def test_fully_observed_vanishing_prior(self):
        rng = np.random.default_rng(1)
        _, _, L = make_er(50, 0.2, 1)
        x_true = rng.standard_normal(50)
        s = SampleSet(np.arange(50))
        res = reconstruct(x_true, s, 1e-8, L, tol=1e-12)
        assert np.abs(res.x - x_true).max() <= 1e-4

    def test_constant_observations_reproduce_constant(self):
        _, _, L = make_er(60, 0.15, 2)
        s = SampleSet(np.arange(0, 60, 6))
        c = -2.25
        res = reconstruct(np.full(s.k, c), s, 0.5, L, tol=1e-12)
        assert np.abs(res.x - c).max() <= 1e-8

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_dense_closed_form(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(20, 201))
        _, _, L = make_er(n, 0.12, seed + 50)
        k = int(rng.integers(3, n // 2))
        s = SampleSet(rng.choice(n, k, replace=False))
        y = rng.standard_normal(k)
        mu = 0.005
        res = reconstruct(y, s, mu, L, tol=1e-12)
        Ld = L.matrix.toarray()
        b = np.zeros(n)
        b[s.indices] = y
        x_dense = np.linalg.solve(np.diag(s.mask(n)) + mu * Ld.T @ Ld, b)
        assert np.linalg.norm(res.x - x_dense) <= 1e-6

    def test_result_is_optimal(self):
        rng = np.random.default_rng(4)
        n = 80
        _, _, L = make_er(n, 0.15, 4)
        s = SampleSet(rng.choice(n, 12, replace=False))
        y = rng.standard_normal(12)
        mu = 0.01
        res = reconstruct(y, s, mu, L, tol=1e-12)

        def objective(x):
            return np.sum((x[s.indices] - y) ** 2) + mu * gsv(x, L)

        base = objective(res.x)
        for _ in range(100):
            perturbed = res.x + 1e-3 * rng.standard_normal(n)
            assert objective(perturbed) >= base

    def test_positive_definiteness_rayleigh(self):
        rng = np.random.default_rng(6)
        _, _, L = make_er(70, 0.15, 6)
        op = sampling_operator(SampleSet(np.array([13])), 0.02, L)
        for _ in range(200):
            v = rng.standard_normal(70)
            v /= np.linalg.norm(v)
            assert v @ op(v) > 0

    def test_dimension_checks(self, two_cycle):
        _, _, L = two_cycle
        s = SampleSet(np.array([0]))
        with pytest.raises(DimensionMismatchError):
            reconstruct(np.ones(2), s, 0.1, L)
        with pytest.raises(ValueError):
            reconstruct(np.ones(1), s, -1.0, L)


class TestMse:
    def test_zero_on_equal(self):
        x = np.arange(5.0)
        assert mse(x, x) == 0.0

    def test_hand_value(self):
        assert mse(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == pytest.approx(2.0)

    @given(st.integers(0, 5000))
    def test_definition(self, seed):
        rng = np.random.default_rng(seed)
        x, xh = rng.standard_normal((2, 17))
        assert mse(x, xh) == pytest.approx(sum((a - b) ** 2 for a, b in zip(x, xh)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            mse(np.ones(3), np.ones(4))

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from distcorr.core import (
    dcor,
    dcov_sq,
    dcov_sq_materialized,
    dcov_sq_streaming,
    double_center,
    pairwise_distances,
    pearson,
)
from distcorr.errors import (
    DataQualityError,
    DegenerateVarianceError,
    DimensionMismatchError,
)


def finite_samples(max_n=20, max_dim=3):
    return st.integers(2, max_n).flatmap(
        lambda n: st.integers(1, max_dim).flatmap(
            lambda d: arrays(
                np.float64,
                (n, d),
                elements=st.floats(-100, 100, allow_nan=False, allow_infinity=False),
            )
        )
    )


class TestPairwiseDistances:
    def test_single_point(self):
        d = pairwise_distances([[0.0]])
        assert d.entries.tolist() == [[0.0]]

    def test_scalar_absolute_difference(self):
        d = pairwise_distances([[0.0], [3.0]])
        assert d.entries.tolist() == [[0.0, 3.0], [3.0, 0.0]]

    def test_3_4_5_triangle(self):
        d = pairwise_distances([[0.0, 0.0], [3.0, 4.0]])
        assert d.entries[0, 1] == 5.0
        assert d.entries[1, 0] == 5.0

    def test_rejects_nan_naming_row(self):
        with pytest.raises(DataQualityError, match="row 1"):
            pairwise_distances([[0.0], [np.nan], [1.0]])

    @given(finite_samples())
    @settings(max_examples=50, deadline=None)
    def test_symmetric_zero_diagonal(self, x):
        d = pairwise_distances(x).entries
        assert np.array_equal(d, d.T)
        assert np.all(np.diag(d) == 0.0)

    @given(finite_samples(max_n=8))
    @settings(max_examples=30, deadline=None)
    def test_triangle_inequality(self, x):
        d = pairwise_distances(x).entries
        n = d.shape[0]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    assert d[i, j] <= d[i, k] + d[k, j] + 1e-9


class TestDoubleCenter:
    def test_zero_matrix(self):
        c = double_center(pairwise_distances([[0.0], [0.0]]))
        assert np.all(c.entries == 0.0)

    def test_hand_two_point(self):
        c = double_center(pairwise_distances([[0.0], [3.0]]))
        assert np.allclose(c.entries, [[-1.5, 1.5], [1.5, -1.5]], atol=1e-15)
        assert c.row_mean.tolist() == [1.5, 1.5]
        assert c.grand_mean == 1.5

    @given(finite_samples())
    @settings(max_examples=50, deadline=None)
    def test_row_and_column_sums_vanish(self, x):
        d = pairwise_distances(x)
        c = double_center(d)
        tol = 1e-9 * d.n * max(d.entries.max(), 1.0)
        assert np.all(np.abs(c.entries.sum(axis=0)) <= tol)
        assert np.all(np.abs(c.entries.sum(axis=1)) <= tol)


class TestDcovSq:
    def test_two_point_hand_value(self):
        assert dcov_sq([[0.0], [1.0]], [[0.0], [1.0]]) == pytest.approx(0.25, abs=1e-15)

    def test_constant_sample_gives_zero(self):
        y = np.random.default_rng(0).normal(size=(6, 2))
        assert dcov_sq(np.ones((6, 1)), y) == 0.0

    def test_mismatched_n(self):
        with pytest.raises(DimensionMismatchError):
            dcov_sq(np.zeros((3, 1)), np.zeros((4, 1)))

    def test_single_observation_is_zero(self):
        assert dcov_sq([[1.0]], [[2.0]]) == 0.0

    def test_symmetry_in_arguments(self):
        rng = np.random.default_rng(5)
        x, y = rng.normal(size=(12, 2)), rng.normal(size=(12, 3))
        a, b = dcov_sq(x, y), dcov_sq(y, x)
        assert abs(a - b) <= 1e-12 * max(a, b)

    def test_streaming_matches_materialized(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            n = int(rng.integers(2, 200))
            x = rng.normal(size=(n, int(rng.integers(1, 4))))
            y = rng.normal(size=(n, int(rng.integers(1, 4))))
            v_mat = dcov_sq_materialized(x, y)
            v_str = dcov_sq_streaming(x, y, block_rows=37)
            assert abs(v_mat - v_str) <= 1e-10 * max(abs(v_mat), 1e-30)

    def test_auto_dispatch_small_budget_uses_streaming(self):
        rng = np.random.default_rng(1)
        x, y = rng.normal(size=(64, 1)), rng.normal(size=(64, 1))
        # budget too small to materialize a 64x64 matrix
        v = dcov_sq(x, y, memory_budget=1024)
        assert v == pytest.approx(dcov_sq_materialized(x, y), rel=1e-10)

    def test_translation_invariance(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            x, y = rng.normal(size=(15, 2)), rng.normal(size=(15, 3))
            v0 = dcov_sq(x, y)
            v1 = dcov_sq(x + rng.normal(size=2), y + rng.normal(size=3))
            assert abs(v0 - v1) <= 1e-10 * max(v0, 1e-30)

    def test_scale_covariance(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            x, y = rng.normal(size=(10, 2)), rng.normal(size=(10, 1))
            a, b = rng.uniform(-3, 3, size=2)
            v0 = dcov_sq(x, y)
            v1 = dcov_sq(a * x, b * y)
            assert abs(v1 - abs(a) * abs(b) * v0) <= 1e-10 * max(v0, 1e-30)


def random_orthogonal(dim, rng):
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q


class TestDcor:
    def test_identical_samples(self):
        x = np.random.default_rng(0).normal(size=(10, 2))
        assert dcor(x, x).dcor == pytest.approx(1.0, abs=1e-12)

    def test_constant_sample_degenerate_convention(self):
        y = np.random.default_rng(0).normal(size=(8, 1))
        stats = dcor(np.full((8, 1), 3.0), y)
        assert stats.dcor == 0.0

    def test_affine_scalar_relationship(self):
        x = np.array([[0.0], [1.0], [4.0], [-2.0]])
        assert dcor(x, 2.0 * x + 3.0).dcor == pytest.approx(1.0, abs=1e-12)

    def test_pearson_only_for_scalar_pairs(self):
        rng = np.random.default_rng(4)
        assert dcor(rng.normal(size=(10, 2)), rng.normal(size=(10, 1))).pearson is None
        assert dcor(rng.normal(size=(10, 1)), rng.normal(size=(10, 1))).pearson is not None

    def test_orthogonal_invariance(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            x, y = rng.normal(size=(12, 3)), rng.normal(size=(12, 2))
            u = random_orthogonal(3, rng)
            v = random_orthogonal(2, rng)
            r0 = dcor(x, y).dcor
            r1 = dcor(x @ u, y @ v).dcor
            assert abs(r0 - r1) <= 1e-10 * max(r0, 1.0)

    def test_scale_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            x, y = rng.normal(size=(12, 2)), rng.normal(size=(12, 1))
            a, b = rng.uniform(0.1, 5, size=2) * rng.choice([-1, 1], size=2)
            r0 = dcor(x, y).dcor
            r1 = dcor(a * x, b * y).dcor
            assert abs(r0 - r1) <= 1e-10 * max(r0, 1.0)

    @given(finite_samples(max_n=10))
    @settings(max_examples=30, deadline=None)
    def test_range(self, x):
        rng = np.random.default_rng(0)
        y = rng.normal(size=(x.shape[0], 1))
        stats = dcor(x, y)
        assert 0.0 <= stats.dcor <= 1.0 + 1e-12


class TestPearson:
    def test_identity(self):
        x = [1.0, 2.0, 5.0]
        assert pearson(x, x) == 1.0

    def test_negation(self):
        x = np.array([1.0, 2.0, 5.0])
        assert pearson(x, -x) == -1.0

    def test_hand_value(self):
        assert pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, abs=1e-12)

    def test_constant_raises(self):
        with pytest.raises(DegenerateVarianceError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_affine_equivariance(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            x, y = rng.normal(size=10), rng.normal(size=10)
            a = rng.uniform(0.1, 4) * rng.choice([-1, 1])
            b = rng.normal()
            r0 = pearson(x, y)
            r1 = pearson(a * x + b, y)
            assert abs(r1 - np.sign(a) * r0) <= 1e-12

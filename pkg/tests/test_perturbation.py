import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import fro
from projpair import errors
from projpair.perturbation import (
    ContourSpec,
    MatrixFamily,
    polynomial_family,
    reduce_family,
    riesz_projection,
    riesz_quadrature,
)


def spectral_oracle(m, center, radius):
    """Σ of eigenprojections inside the circle, from a dense eigendecomposition."""
    w, v = np.linalg.eig(m)
    inside = np.abs(w - center) < radius
    return (v * inside) @ np.linalg.inv(v), int(inside.sum())


def safe_contour(w, rng, gap=0.1):
    """A circle that keeps at least `gap` away from every eigenvalue in `w`."""
    while True:
        center = complex(rng.choice(w)) + complex(*rng.normal(0, 0.3, 2))
        dist = np.sort(np.abs(w - center))
        candidates = [(lo + hi) / 2 for lo, hi in zip(dist, dist[1:]) if hi - lo > 2 * gap]
        if candidates:
            return center, float(rng.choice(candidates))


class TestContourSpec:
    @pytest.mark.parametrize("kw", [dict(radius=0.0), dict(radius=1.0, nodes=12),
                                    dict(radius=1.0, nodes=4)])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            ContourSpec(0, **kw)


class TestRiesz:
    def test_diagonal(self):
        r = riesz_projection(np.diag([1.0, 5.0]), ContourSpec(1, 1))
        np.testing.assert_allclose(r, np.diag([1, 0]), atol=1e-12)

    def test_upper_triangular_residue(self):
        # (λ - m)^{-1}_{12} = 10 / ((λ-1)(λ-5)); residue at λ=1 is 10/(1-5).
        r = riesz_projection(np.array([[1.0, 10.0], [0.0, 5.0]]), ContourSpec(1, 1))
        np.testing.assert_allclose(r, [[1, -2.5], [0, 0]], atol=1e-10)

    def test_jordan_block(self):
        r = riesz_projection(np.array([[1.0, 1.0], [0.0, 1.0]]), ContourSpec(1, 0.5))
        np.testing.assert_allclose(r, np.eye(2), atol=1e-12)

    def test_not_hermitian_in_general(self):
        r = riesz_projection(np.array([[1.0, 10.0], [0.0, 5.0]]), ContourSpec(1, 1))
        assert fro(r - r.conj().T) > 1

    def test_eigenvalue_on_contour(self):
        with pytest.raises(errors.EigenvalueOnContour):
            riesz_projection(np.diag([1.0, 2.0]), ContourSpec(1, 1))

    def test_quadrature_cap(self):
        # Eigenvalue 1.05 just outside radius 1: convergence ratio 1/1.05 is slow.
        with pytest.raises(errors.QuadratureNotConverged):
            riesz_quadrature(np.diag([0.0, 1.05]), ContourSpec(0, 1), max_nodes=64)

    @pytest.mark.parametrize("radius", [2.0, 3.5])
    def test_geometric_convergence(self, radius):
        m = np.array([[1.0, 10.0], [0.0, 5.0]])
        res = riesz_quadrature(m, ContourSpec(1, radius))
        h = res.history
        assert len(h) >= 3
        assert h[-1] <= 1e-10
        floor = 1e-13
        for d0, d1 in zip(h, h[1:]):
            if d1 > floor and d0 < 1:
                # e_{2N} ~ e_N² / C: the exponent at least ~doubles each step.
                assert math.log(d1) <= 1.8 * math.log(d0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 10_000))
    def test_rank_and_oracle(self, n, seed):
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        w = np.linalg.eigvals(m)
        center, radius = safe_contour(w, rng)
        res = riesz_quadrature(m, ContourSpec(center, radius))
        oracle, count = spectral_oracle(m, center, radius)
        r = res.projection
        assert int(round(np.trace(r).real)) == count
        assert np.linalg.matrix_rank(r, tol=1e-6) == count
        assert res.idempotency_residual <= 1e-8 * (1 + fro(r))
        assert res.commutator_residual <= 1e-8 * (1 + fro(m)) * (1 + fro(r))
        assert fro(r - oracle) <= 1e-7 * (1 + fro(oracle))


class TestReduce:
    def test_constant_family(self):
        f = MatrixFamily(lambda z: np.diag([1.0, 5.0]), 2)
        red = reduce_family(f, 0.3, ContourSpec(1, 1))
        np.testing.assert_allclose(red.block, [[1.0]], atol=1e-12)

    @pytest.mark.parametrize("z", [0.05, 0.1, 0.2, 0.3j])
    def test_symmetric_family(self, z):
        f = polynomial_family([np.diag([1.0, 5.0]), np.array([[0.0, 1.0], [1.0, 0.0]])])
        red = reduce_family(f, z, ContourSpec(1, 1))
        expected = 3 - np.sqrt(4 + complex(z) ** 2)
        assert red.block.shape == (1, 1)
        assert abs(red.block[0, 0] - expected) <= 1e-10
        if z == 0.2:
            assert red.block[0, 0].real == pytest.approx(0.9900248757758221, abs=1e-12)

    def test_splitting_group(self):
        f = MatrixFamily(lambda z: np.array([[1.0, 1.0], [z * z, 1.0]]), 2)
        red = reduce_family(f, 0.1, ContourSpec(1, 0.5))
        ev = np.sort(np.linalg.eigvals(red.block).real)
        np.testing.assert_allclose(ev, [0.9, 1.1], atol=1e-10)

    def test_rank_changed(self):
        f = MatrixFamily(lambda z: np.diag([1.0, 1.0 + z]), 2)
        with pytest.raises(errors.RankChanged):
            reduce_family(f, 0.8, ContourSpec(1, 0.5))

    def test_block_lives_on_fixed_range(self):
        f = polynomial_family([np.diag([1.0, 5.0, 9.0]), np.ones((3, 3))])
        for z in (0.1, 0.2):
            red = reduce_family(f, z, ContourSpec(1, 1))
            np.testing.assert_allclose(np.abs(red.frame.mat), [[1], [0], [0]], atol=1e-12)

    def test_family_dimension_checked(self):
        f = MatrixFamily(lambda z: np.eye(3), 2)
        with pytest.raises(errors.DimensionMismatch):
            reduce_family(f, 0.1, ContourSpec(1, 0.5))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 10_000))
    def test_random_family_eigenvalues(self, n, seed):
        rng = np.random.default_rng(seed)
        c0 = np.diag(np.arange(n, dtype=float) * 2.0) + 0.1 * rng.standard_normal((n, n))
        c1 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        c1 /= np.linalg.norm(c1, 2)
        f = polynomial_family([c0, c1])
        z = 0.05
        center, radius = 0.0, 1.0
        red = reduce_family(f, z, ContourSpec(center, radius))
        w = np.linalg.eigvals(f(z))
        inside = np.sort_complex(w[np.abs(w - center) < radius])
        got = np.sort_complex(np.linalg.eigvals(red.block))
        np.testing.assert_allclose(got, inside, atol=1e-6)

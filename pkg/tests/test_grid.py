"""Grid construction, DFT conventions, spectral calculus, interpolation."""

import numpy as np
import pytest

from pauli.grid import (
    InterpolationPlan,
    build_grid,
    forward_dft,
    inverse_dft,
    spectral_curl,
    spectral_divergence,
    spectral_gradient,
    trig_interpolate,
)

from conftest import naive_forward_dft, naive_mode_sum, random_complex


class TestBuildGrid:
    def test_production_grid_spacing(self):
        grid = build_grid((10, 10, 10), (25, 25, 25))
        assert grid.spacings == (0.4, 0.4, 0.4)
        assert grid.total_points == 25**3

    def test_smallest_legal_grid_wavenumbers(self):
        grid = build_grid((1, 1, 1), (2, 2, 2))
        for ax in range(3):
            assert set(grid.wavenumbers[ax].tolist()) == {-1, 0}

    def test_count_below_two_names_axis(self):
        with pytest.raises(ValueError, match="axis 3"):
            build_grid((10, 10, 10), (25, 25, 0))

    def test_nonpositive_length_names_axis(self):
        with pytest.raises(ValueError, match="axis 2"):
            build_grid((10, -1.0, 10), (8, 8, 8))

    def test_symmetric_wavenumber_set(self):
        grid = build_grid((5, 5, 5), (8, 9, 8))
        assert set(grid.wavenumbers[0].tolist()) == set(range(-4, 4))
        assert set(grid.wavenumbers[1].tolist()) == set(range(-4, 5))

    def test_grid_points(self):
        grid = build_grid((10, 10, 10), (25, 25, 25))
        pts = grid.points()
        assert pts.shape == (25, 25, 25, 3)
        assert pts[3, 0, 0, 0] == pytest.approx(1.2)
        assert pts[0, 1, 2, 2] == pytest.approx(0.8)


class TestDFT:
    def test_constant_field_dc_mode(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        c = 2.5 - 1.5j
        coeffs = forward_dft(np.full(grid.shape, c), grid)
        assert abs(coeffs[0, 0, 0] - c) <= 1e-14 * abs(c)
        coeffs[0, 0, 0] = 0
        assert np.max(np.abs(coeffs)) <= 1e-14 * abs(c)

    def test_unit_impulse(self):
        grid = build_grid((1, 1, 1), (4, 4, 4))
        v = np.zeros(grid.shape, dtype=complex)
        v[0, 0, 0] = 1.0
        coeffs = forward_dft(v, grid)
        np.testing.assert_allclose(coeffs, 1.0 / 64, atol=1e-15)

    def test_matches_naive_triple_sum(self):
        grid = build_grid((3, 4, 5), (8, 8, 8))
        v = random_complex(grid.shape, seed=7)
        got = forward_dft(v, grid)
        want = naive_forward_dft(v)
        err = np.linalg.norm(got - want) / np.linalg.norm(want)
        assert err <= 1e-12

    def test_round_trip(self):
        grid = build_grid((10, 10, 10), (16, 16, 16))
        v = random_complex(grid.shape, seed=3)
        back = inverse_dft(forward_dft(v, grid), grid)
        assert np.linalg.norm(back - v) / np.linalg.norm(v) <= 1e-12

    def test_single_mode_inverse(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        coeffs = np.zeros(grid.shape, dtype=complex)
        coeffs[1, 0, 0] = 1.0
        vals = inverse_dft(coeffs, grid)
        j1 = np.arange(8)
        want = np.exp(2j * np.pi * j1 / 8)[:, None, None] * np.ones(grid.shape)
        np.testing.assert_allclose(vals, want, atol=1e-13)

    def test_zero_spectrum(self):
        grid = build_grid((1, 1, 1), (4, 4, 4))
        np.testing.assert_array_equal(
            inverse_dft(np.zeros(grid.shape, dtype=complex), grid), 0.0
        )

    def test_shape_mismatch(self):
        grid = build_grid((1, 1, 1), (4, 4, 4))
        with pytest.raises(ValueError, match="does not match"):
            forward_dft(np.zeros((4, 4, 5)), grid)

    def test_parseval_identity(self):
        # identity behind the norm equalities: sum|v|^2 = N * sum|vhat|^2
        grid = build_grid((10, 7, 10), (8, 12, 9))
        v = random_complex(grid.shape, seed=11)
        coeffs = forward_dft(v, grid)
        lhs = np.sum(np.abs(v) ** 2)
        rhs = grid.total_points * np.sum(np.abs(coeffs) ** 2)
        assert abs(lhs - rhs) / lhs <= 1e-12


class TestDerivatives:
    def test_gradient_of_sine(self):
        grid = build_grid((10, 10, 10), (16, 16, 16))
        x1 = grid.meshes()[0]
        g = spectral_gradient(np.sin(2 * np.pi * x1 / 10), grid)
        want = (2 * np.pi / 10) * np.cos(2 * np.pi * x1 / 10)
        assert np.max(np.abs(g[..., 0] - want)) <= 1e-10
        assert np.max(np.abs(g[..., 1])) <= 1e-10
        assert np.max(np.abs(g[..., 2])) <= 1e-10

    def test_divergence_of_constant(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        vec = np.ones(grid.shape + (3,))
        assert np.max(np.abs(spectral_divergence(vec, grid))) <= 1e-13

    def test_gradient_of_constant_is_zero(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        g = spectral_gradient(np.full(grid.shape, 3.7), grid)
        assert np.max(np.abs(g)) <= 1e-13

    def test_gradient_linearity(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        u = random_complex(grid.shape, seed=5)
        v = random_complex(grid.shape, seed=6)
        lhs = spectral_gradient(2.0 * u + 3.0j * v, grid)
        rhs = 2.0 * spectral_gradient(u, grid) + 3.0j * spectral_gradient(v, grid)
        assert np.max(np.abs(lhs - rhs)) <= 1e-11

    def test_curl_of_gradient_vanishes(self):
        grid = build_grid((10, 10, 10), (12, 12, 12))
        x1, x2, x3 = grid.meshes()
        f = np.sin(2 * np.pi * x1 / 10) * np.cos(4 * np.pi * x2 / 10) + np.cos(
            2 * np.pi * x3 / 10
        )
        c = spectral_curl(spectral_gradient(f, grid), grid)
        assert np.max(np.abs(c)) <= 1e-10

    def test_rank_mismatch(self):
        grid = build_grid((1, 1, 1), (4, 4, 4))
        with pytest.raises(ValueError, match="vector field"):
            spectral_divergence(np.zeros(grid.shape), grid)


class TestInterpolation:
    def test_reproduces_grid_values(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        v = random_complex(grid.shape, seed=9)
        coeffs = forward_dft(v, grid)
        vals = trig_interpolate(coeffs, grid.points(), grid)
        assert np.max(np.abs(vals - v)) / np.max(np.abs(v)) <= 1e-12

    def test_single_mode_half_period(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        coeffs = np.zeros(grid.shape, dtype=complex)
        coeffs[1, 0, 0] = 1.0
        val = trig_interpolate(coeffs, np.array([5.0, 0.0, 0.0]), grid)
        assert abs(val - (-1.0)) <= 1e-13

    def test_matches_direct_mode_sum(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        coeffs = random_complex(grid.shape, seed=21)
        # band-limit: zero the upper half of the spectrum per axis
        for ax in range(3):
            k = grid.wavenumbers[ax]
            mask = np.abs(k) > 2
            sl = [slice(None)] * 3
            sl[ax] = mask
            coeffs[tuple(sl)] = 0.0
        rng = np.random.default_rng(4)
        pts = rng.uniform(-10.0, 20.0, size=(100, 3))
        got = trig_interpolate(coeffs, pts, grid)
        for i in range(100):
            wrapped = np.mod(pts[i], 10.0)
            want = naive_mode_sum(coeffs, grid.wavenumbers, grid.lengths, wrapped)
            assert abs(got[i] - want) <= 1e-12 * max(1.0, abs(want))

    def test_real_data_gives_real_interpolant(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        rng = np.random.default_rng(13)
        v = rng.standard_normal(grid.shape)
        coeffs = forward_dft(v, grid)
        pts = rng.uniform(0, 10, size=(50, 3))
        vals = trig_interpolate(coeffs, pts, grid)
        assert np.max(np.abs(vals.imag)) <= 1e-12

    def test_points_wrapped_periodically(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        coeffs = forward_dft(random_complex(grid.shape, seed=2), grid)
        p = np.array([1.25, 2.5, 3.75])
        inside = trig_interpolate(coeffs, p, grid)
        outside = trig_interpolate(coeffs, p + np.array([10.0, -20.0, 30.0]), grid)
        assert abs(inside - outside) <= 1e-12

    def test_nonfinite_points_rejected(self):
        grid = build_grid((1, 1, 1), (4, 4, 4))
        coeffs = np.zeros(grid.shape, dtype=complex)
        with pytest.raises(ValueError, match="finite"):
            trig_interpolate(coeffs, np.array([np.nan, 0.0, 0.0]), grid)

    def test_plan_reuse_matches_one_shot(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        rng = np.random.default_rng(31)
        pts = rng.uniform(0, 10, size=(40, 3))
        plan = InterpolationPlan(pts, grid)
        for seed in (1, 2):
            coeffs = random_complex(grid.shape, seed=seed)
            np.testing.assert_allclose(
                plan.evaluate(coeffs), trig_interpolate(coeffs, pts, grid), atol=1e-13
            )

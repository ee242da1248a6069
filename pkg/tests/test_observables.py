"""Diagnostics: density, current, mass, energy, error metrics, continuity."""

import numpy as np
import pytest

from pauli.fields import preset_experiment2, preset_zero, sample_fields
from pauli.grid import build_grid, spectral_curl
from pauli.observables import (
    continuity_residual,
    current_density,
    density,
    make_record,
    spin_vector,
    state_error,
    total_energy,
    total_mass,
)
from pauli.splitting import SolverConfig, evolve, kinetic_step, precompute_propagators
from pauli.state import (
    SpinorField,
    initial_state_gaussian_pair,
    initial_state_spin_up,
    to_physical,
)

from conftest import random_complex


@pytest.fixture(scope="module")
def grid20():
    return build_grid((10, 10, 10), (20, 20, 20))


class TestDensity:
    def test_spin_up_peak(self, grid20):
        state = initial_state_spin_up(grid20)
        assert density(state)[9, 9, 10] == pytest.approx(1.0)

    def test_zero_state(self, grid20):
        z = np.zeros(grid20.shape, dtype=complex)
        assert not density(SpinorField(z, z)).any()

    def test_phase_invariance(self, grid20):
        state = initial_state_gaussian_pair(grid20)
        phased = SpinorField(
            u1=np.exp(0.9j) * state.u1, u2=np.exp(0.9j) * state.u2
        )
        np.testing.assert_allclose(density(phased), density(state), rtol=1e-14)


class TestCurrentDensity:
    def test_real_single_component_state(self, grid20):
        samples = sample_fields(preset_zero(), grid20)
        state = initial_state_spin_up(grid20)
        j = current_density(state, samples, grid20, epsilon=0.5)
        s = np.zeros(grid20.shape + (3,))
        s[..., 2] = np.abs(state.u1) ** 2
        want = -0.25 * spectral_curl(s, grid20)
        assert np.max(np.abs(j - want)) <= 1e-12

    def test_zero_state(self, grid20):
        samples = sample_fields(preset_experiment2(), grid20)
        z = np.zeros(grid20.shape, dtype=complex)
        j = current_density(SpinorField(z, z), samples, grid20, epsilon=0.5)
        assert not j.any()

    def test_spin_vector_components(self, grid20):
        u1 = random_complex(grid20.shape, seed=1)
        u2 = random_complex(grid20.shape, seed=2)
        s = spin_vector(SpinorField(u1, u2))
        np.testing.assert_allclose(s[..., 0], 2 * (np.conj(u1) * u2).real, atol=1e-14)
        np.testing.assert_allclose(s[..., 1], 2 * (np.conj(u1) * u2).imag, atol=1e-14)
        np.testing.assert_allclose(
            s[..., 2], np.abs(u1) ** 2 - np.abs(u2) ** 2, atol=1e-14
        )


class TestTotalMass:
    def test_constant_state(self, grid20):
        ones = np.ones(grid20.shape, dtype=complex)
        state = SpinorField(u1=ones, u2=np.zeros_like(ones))
        assert total_mass(state, grid20) == pytest.approx(1000.0, rel=1e-13)

    def test_invariant_under_kinetic_step(self, grid20):
        cfg = SolverConfig(epsilon=0.5, dt=0.1, t_final=0.1)
        fields = preset_zero()
        prop = precompute_propagators(fields, sample_fields(fields, grid20), grid20, cfg)
        state = initial_state_gaussian_pair(grid20)
        stepped = to_physical(kinetic_step(state, prop, grid20), grid20)
        assert total_mass(stepped, grid20) == pytest.approx(
            total_mass(state, grid20), rel=1e-12
        )

    def test_matches_refined_quadrature(self):
        # oracle: the same Gaussian formulas summed on a twice-finer grid
        coarse = build_grid((10, 10, 10), (25, 25, 25))
        fine = build_grid((10, 10, 10), (50, 50, 50))
        got = total_mass(initial_state_gaussian_pair(coarse), coarse)
        want = total_mass(initial_state_gaussian_pair(fine), fine)
        assert got == pytest.approx(want, rel=1e-6)


class TestTotalEnergy:
    def test_plane_wave_kinetic_energy(self):
        grid = build_grid((10, 10, 10), (8, 8, 8))
        samples = sample_fields(preset_zero(), grid)
        x1 = grid.meshes()[0]
        u1 = np.exp(2j * np.pi * x1 / 10.0)
        state = SpinorField(u1, np.zeros_like(u1))
        eps = 0.5
        want = 0.5 * eps**2 * (2 * np.pi / 10.0) ** 2 * 1000.0
        assert total_energy(state, samples, grid, eps) == pytest.approx(want, rel=1e-12)

    def test_zero_state(self, grid20):
        samples = sample_fields(preset_experiment2(), grid20)
        z = np.zeros(grid20.shape, dtype=complex)
        assert total_energy(SpinorField(z, z), samples, grid20, 0.5) == 0.0

    def test_phase_invariance(self, grid20):
        samples = sample_fields(preset_experiment2(), grid20)
        state = initial_state_gaussian_pair(grid20)
        phased = SpinorField(np.exp(1.3j) * state.u1, np.exp(1.3j) * state.u2)
        assert total_energy(phased, samples, grid20, 0.5) == pytest.approx(
            total_energy(state, samples, grid20, 0.5), rel=1e-12
        )

    def test_drift_shrinks_with_dt(self):
        # splitting converges to the energy-conserving flow, so the drift over
        # a fixed horizon shrinks roughly linearly in dt
        grid = build_grid((10, 10, 10), (16, 16, 16))
        fields = preset_experiment2()
        samples = sample_fields(fields, grid)
        state = initial_state_gaussian_pair(grid)
        e0 = total_energy(state, samples, grid, 0.5)
        drifts = []
        for dt in (0.1, 0.05):
            cfg = SolverConfig(epsilon=0.5, dt=dt, t_final=0.5)
            final = evolve(state, fields, grid, cfg, samples=samples)
            drifts.append(abs(total_energy(final, samples, grid, 0.5) - e0))
        assert drifts[1] < drifts[0]
        assert drifts[0] / drifts[1] == pytest.approx(2.0, abs=0.7)


class TestStateError:
    def test_identical_states(self, grid20):
        state = initial_state_gaussian_pair(grid20)
        err = state_error(state, state, grid20)
        assert err.max_abs == 0.0
        assert err.rel == 0.0
        assert err.alpha_diff == 0.0

    def test_constant_offset_in_first_component(self, grid20):
        b = initial_state_gaussian_pair(grid20)
        delta = 1e-3
        a = SpinorField(u1=b.u1 + delta, u2=b.u2.copy())
        err = state_error(a, b, grid20)
        assert err.max_abs == pytest.approx(delta, rel=1e-12)
        assert err.rel == pytest.approx(delta / np.max(np.abs(b.u1)), rel=1e-12)

    def test_alpha_diff_matches_component_norms(self, grid20):
        from pauli.state import component_l2

        a = SpinorField(
            u1=random_complex(grid20.shape, seed=3),
            u2=random_complex(grid20.shape, seed=4),
        )
        b = SpinorField(
            u1=random_complex(grid20.shape, seed=5),
            u2=random_complex(grid20.shape, seed=6),
        )
        err = state_error(a, b, grid20)
        diff = SpinorField(u1=a.u1 - b.u1, u2=a.u2 - b.u2)
        n1, n2 = component_l2(diff, grid20)
        assert err.alpha_diff == pytest.approx(n1 + n2, abs=1e-13)

    def test_shape_mismatch(self, grid20):
        small = build_grid((10, 10, 10), (4, 4, 4))
        with pytest.raises(ValueError, match="shapes"):
            state_error(
                initial_state_gaussian_pair(grid20),
                initial_state_gaussian_pair(small),
                grid20,
            )


class TestContinuity:
    def test_residual_shrinks_with_dt(self):
        grid = build_grid((10, 10, 10), (16, 16, 16))
        fields = preset_experiment2()
        samples = sample_fields(fields, grid)
        state = initial_state_gaussian_pair(grid)
        residuals = []
        for dt in (0.1, 0.05):
            cfg = SolverConfig(epsilon=0.5, dt=dt, t_final=dt)
            after = evolve(state, fields, grid, cfg, samples=samples)
            residuals.append(
                continuity_residual(state, after, samples, grid, 0.5, dt)
            )
        assert residuals[1] < residuals[0]


class TestSeriesRecord:
    def test_record_consistency(self, grid20):
        samples = sample_fields(preset_experiment2(), grid20)
        state = initial_state_gaussian_pair(grid20)
        rec = make_record(0.25, state, samples, grid20, 0.5)
        assert rec.time == 0.25
        assert rec.mass >= 0
        assert rec.alpha == pytest.approx(rec.l2_u1 + rec.l2_u2, abs=1e-13)
        assert rec.mass == pytest.approx(rec.l2_u1**2 + rec.l2_u2**2, rel=1e-12)

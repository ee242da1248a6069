"""
Physical diagnostics: position density, current density, total mass, total
energy, continuity-equation residual, and error metrics between states.

The current density and energy are evaluated in the non-dimensionalized
variables, where the momentum carries a factor of the scale parameter and
the spin term a factor of half of it:

    J = -(i*eps/2) (conj(u).grad u - u.grad conj(u)) - n A
        - (eps/2) curl(conj(u) sigma u)
    E = 1/2 int |(-i*eps*grad - A) u|^2 + int phi n
        - (eps/2) int (sigma.B) u . conj(u)

The continuity residual (d_t n + div J = 0 discretized with the midpoint
current) doubles as a numerical check on these forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import FieldSamples
from .grid import Grid, spectral_curl, spectral_divergence, spectral_gradient
from .state import PHYSICAL, SpinorField, alpha_norm, component_l2

__all__ = [
    "SeriesRecord",
    "StateError",
    "density",
    "spin_vector",
    "current_density",
    "total_mass",
    "total_energy",
    "state_error",
    "continuity_residual",
    "make_record",
]


@dataclass(frozen=True)
class SeriesRecord:
    """One diagnostics row of the per-step time series."""

    time: float
    mass: float
    l2_u1: float
    l2_u2: float
    alpha: float
    energy: float


@dataclass(frozen=True)
class StateError:
    max_abs: float
    rel: float
    alpha_diff: float


def _require_physical(state: SpinorField) -> None:
    if state.representation != PHYSICAL:
        raise ValueError("physical representation required")


def density(state: SpinorField) -> np.ndarray:
    """Position density n = |u1|^2 + |u2|^2."""
    _require_physical(state)
    return np.abs(state.u1) ** 2 + np.abs(state.u2) ** 2


def spin_vector(state: SpinorField) -> np.ndarray:
    """The real 3-vector with components conj(u) sigma_j u."""
    _require_physical(state)
    cross = np.conj(state.u1) * state.u2
    s1 = 2.0 * cross.real
    s2 = 2.0 * cross.imag
    s3 = np.abs(state.u1) ** 2 - np.abs(state.u2) ** 2
    return np.stack([s1, s2, s3], axis=-1)


def current_density(
    state: SpinorField, samples: FieldSamples, grid: Grid, epsilon: float
) -> np.ndarray:
    """Pauli current density including the divergence-free spin term."""
    _require_physical(state)
    grad1 = spectral_gradient(state.u1, grid)
    grad2 = spectral_gradient(state.u2, grid)
    convective = (
        np.conj(state.u1)[..., None] * grad1 + np.conj(state.u2)[..., None] * grad2
    )
    j = epsilon * convective.imag
    j -= density(state)[..., None] * samples.a_grid
    j -= 0.5 * epsilon * spectral_curl(spin_vector(state), grid)
    return j


def total_mass(state: SpinorField, grid: Grid) -> float:
    """Grid quadrature of the density; equals the sum of squared component norms."""
    _require_physical(state)
    return float(grid.cell_volume * np.sum(density(state)))


def total_energy(
    state: SpinorField, samples: FieldSamples, grid: Grid, epsilon: float
) -> float:
    _require_physical(state)
    kinetic = 0.0
    for u in (state.u1, state.u2):
        g = -1j * epsilon * spectral_gradient(u, grid) - samples.a_grid * u[..., None]
        kinetic += 0.5 * np.sum(np.abs(g) ** 2)
    potential = np.sum(samples.phi_grid * density(state))
    zeeman = -0.5 * epsilon * np.sum(samples.b_grid * spin_vector(state))
    return float(grid.cell_volume * (kinetic + potential + zeeman))


def state_error(a: SpinorField, b: SpinorField, grid: Grid) -> StateError:
    """Max-norm and relative errors of a against b, plus the alpha-norm of
    the difference."""
    if a.u1.shape != b.u1.shape:
        raise ValueError("state shapes do not match")
    if a.representation != b.representation:
        raise ValueError("state representations do not match")
    diff_max = max(
        float(np.max(np.abs(a.u1 - b.u1))), float(np.max(np.abs(a.u2 - b.u2)))
    )
    ref_max = max(float(np.max(np.abs(b.u1))), float(np.max(np.abs(b.u2))))
    diff = SpinorField(
        u1=a.u1 - b.u1, u2=a.u2 - b.u2, representation=a.representation
    )
    return StateError(
        max_abs=diff_max,
        rel=diff_max / ref_max if ref_max > 0 else 0.0,
        alpha_diff=alpha_norm(diff, grid),
    )


def continuity_residual(
    before: SpinorField,
    after: SpinorField,
    samples: FieldSamples,
    grid: Grid,
    epsilon: float,
    dt: float,
) -> float:
    """Discrete L2 norm of (n^{n+1} - n^n)/dt + div J, with J evaluated from
    the averaged state so the residual is centered in time."""
    mid = SpinorField(
        u1=0.5 * (before.u1 + after.u1),
        u2=0.5 * (before.u2 + after.u2),
        representation=PHYSICAL,
    )
    j_mid = current_density(mid, samples, grid, epsilon)
    r = (density(after) - density(before)) / dt + spectral_divergence(j_mid, grid)
    return float(np.sqrt(grid.cell_volume * np.sum(r**2)))


def make_record(
    time: float,
    state: SpinorField,
    samples: FieldSamples,
    grid: Grid,
    epsilon: float,
) -> SeriesRecord:
    n1, n2 = component_l2(state, grid)
    return SeriesRecord(
        time=time,
        mass=total_mass(state, grid),
        l2_u1=n1,
        l2_u2=n2,
        alpha=n1 + n2,
        energy=total_energy(state, samples, grid, epsilon),
    )

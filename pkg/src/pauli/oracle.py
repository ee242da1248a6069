"""
Brute-force reference solver on tiny grids.

Assembles the full discrete generator of the evolution (kinetic + potential +
advection + coupling) as one dense matrix over all grid points and both spin
components, evolves states by scaling-and-squaring matrix exponentiation, and
measures the splitting scheme's error and convergence order against it.

The differentiation matrices are built explicitly from the DFT definition
(not via FFT), so the oracle shares no numerical path with the scheme other
than the spectral discretization both are defined on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .fields import EMFields, FieldSamples, sample_fields
from .grid import Grid
from .observables import state_error
from .splitting import SolverConfig, evolve
from .state import PHYSICAL, SpinorField

__all__ = [
    "DenseGenerator",
    "ConvergenceRow",
    "ConvergenceResult",
    "MAX_DENSE_DIMENSION",
    "assemble_generator",
    "exact_evolve",
    "convergence_study",
]

# Keeps the matrix exponential tractable in seconds at desk scale.
MAX_DENSE_DIMENSION = 4096


@dataclass(frozen=True)
class DenseGenerator:
    """Dense generator matrix of dimension 2*N1*N2*N3, plus its context."""

    matrix: np.ndarray
    grid: Grid
    epsilon: float


@dataclass(frozen=True)
class ConvergenceRow:
    dt: float
    alpha_error: float


@dataclass(frozen=True)
class ConvergenceResult:
    rows: tuple[ConvergenceRow, ...]
    slope: float | None


def _dft_matrix_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Forward (1/n-normalized) and inverse DFT matrices from the definition."""
    j = np.arange(n)
    phase = np.exp(-2j * np.pi * np.outer(j, j) / n)
    return phase / n, np.conj(phase)


def _axis_operator(grid: Grid, axis: int, multiplier: np.ndarray) -> np.ndarray:
    """Dense 1D operator inv_dft @ diag(multiplier) @ dft for one axis."""
    fwd, inv = _dft_matrix_pair(grid.counts[axis])
    return inv @ (multiplier[:, None] * fwd)


def _kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.kron(np.kron(a, b), c)


def assemble_generator(
    samples: FieldSamples, grid: Grid, epsilon: float
) -> DenseGenerator:
    """Assemble the dense generator.  Refuses grids whose stacked dimension
    2*N1*N2*N3 exceeds MAX_DENSE_DIMENSION."""
    m = grid.total_points
    dim = 2 * m
    if dim > MAX_DENSE_DIMENSION:
        raise ValueError(
            f"dense generator dimension {dim} exceeds the limit {MAX_DENSE_DIMENSION}"
        )
    eyes = [np.eye(grid.counts[ax]) for ax in range(3)]

    laplacian = np.zeros((m, m), dtype=np.complex128)
    advection = np.zeros((m, m), dtype=np.complex128)
    for ax in range(3):
        w = grid.angular_wavenumbers[ax]
        lap_1d = _axis_operator(grid, ax, -(w**2) + 0j)
        d_1d = _axis_operator(grid, ax, grid.deriv_multipliers[ax])
        ops_lap = [eyes[0], eyes[1], eyes[2]]
        ops_d = [eyes[0], eyes[1], eyes[2]]
        ops_lap[ax] = lap_1d
        ops_d[ax] = d_1d
        laplacian += _kron3(*ops_lap)
        advection += samples.a_grid[..., ax].ravel()[:, None] * _kron3(*ops_d)

    kinetic = 0.5j * epsilon * laplacian
    scalar = 0.5 * np.sum(samples.a_grid**2, axis=-1) + samples.phi_grid
    b1 = samples.b_grid[..., 0].ravel()
    b2 = samples.b_grid[..., 1].ravel()
    b3 = samples.b_grid[..., 2].ravel()
    pot1 = (-1j / epsilon) * (scalar.ravel() - 0.5 * epsilon * b3)
    pot2 = (-1j / epsilon) * (scalar.ravel() + 0.5 * epsilon * b3)
    d1 = 0.5 * (1j * b1 + b2)
    d2 = 0.5 * (1j * b1 - b2)

    gen = np.zeros((dim, dim), dtype=np.complex128)
    block = kinetic + advection
    gen[:m, :m] = block + np.diag(pot1)
    gen[m:, m:] = block + np.diag(pot2)
    gen[:m, m:] = np.diag(d1)
    gen[m:, :m] = np.diag(d2)
    return DenseGenerator(matrix=gen, grid=grid, epsilon=epsilon)


def _stack(state: SpinorField) -> np.ndarray:
    return np.concatenate([state.u1.ravel(), state.u2.ravel()])


def _unstack(vec: np.ndarray, grid: Grid) -> SpinorField:
    m = grid.total_points
    return SpinorField(
        u1=vec[:m].reshape(grid.shape),
        u2=vec[m:].reshape(grid.shape),
        representation=PHYSICAL,
    )


def exact_evolve(state: SpinorField, gen: DenseGenerator, t: float) -> SpinorField:
    """Apply exp(t * G) to the stacked state via scaling-and-squaring."""
    if state.u1.shape != gen.grid.shape:
        raise ValueError(
            f"state shape {state.u1.shape} does not match generator grid {gen.grid.shape}"
        )
    if t == 0.0:
        return SpinorField(
            u1=state.u1.copy(), u2=state.u2.copy(), representation=PHYSICAL
        )
    return _unstack(expm(t * gen.matrix) @ _stack(state), gen.grid)


def convergence_study(
    state0: SpinorField,
    fields: EMFields,
    grid: Grid,
    epsilon: float,
    dt_list: Sequence[float],
    t_final: float,
    order: str = "lie",
) -> ConvergenceResult:
    """For each dt, run the splitting scheme to t_final and report the
    alpha-norm error against the matrix-exponential reference, plus the
    fitted log-log slope (None with fewer than two step sizes)."""
    samples = sample_fields(fields, grid)
    gen = assemble_generator(samples, grid, epsilon)
    reference = exact_evolve(state0, gen, t_final)
    rows = []
    for dt in dt_list:
        config = SolverConfig(epsilon=epsilon, dt=dt, t_final=t_final, order=order)
        final = evolve(state0, fields, grid, config, samples=samples)
        err = state_error(final, reference, grid)
        rows.append(ConvergenceRow(dt=float(dt), alpha_error=err.alpha_diff))
    slope = None
    if len(rows) >= 2:
        log_dt = np.log([r.dt for r in rows])
        log_err = np.log([r.alpha_error for r in rows])
        slope = float(np.polyfit(log_dt, log_err, 1)[0])
    return ConvergenceResult(rows=tuple(rows), slope=slope)

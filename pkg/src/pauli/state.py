"""
The discrete 2-spinor state, initial-condition presets, and the norms used
throughout the stability and convergence checks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .grid import Grid, forward_dft, inverse_dft

__all__ = [
    "SpinorField",
    "initial_state_gaussian_pair",
    "initial_state_spin_up",
    "initial_preset",
    "INITIAL_PRESETS",
    "to_spectral",
    "to_physical",
    "component_l2",
    "alpha_norm",
]

PHYSICAL = "physical"
SPECTRAL = "spectral"


@dataclass(frozen=True)
class SpinorField:
    """Spin-up and spin-down amplitudes on the grid, both in the same
    representation (physical grid values or spectral coefficients)."""

    u1: np.ndarray
    u2: np.ndarray
    representation: str = PHYSICAL

    def __post_init__(self):
        if self.u1.shape != self.u2.shape:
            raise ValueError(
                f"component shapes differ: {self.u1.shape} vs {self.u2.shape}"
            )
        if self.representation not in (PHYSICAL, SPECTRAL):
            raise ValueError(f"unknown representation {self.representation!r}")


def _require(state: SpinorField, representation: str) -> None:
    if state.representation != representation:
        raise ValueError(
            f"state is {state.representation}, expected {representation}"
        )


def to_spectral(state: SpinorField, grid: Grid) -> SpinorField:
    if state.representation == SPECTRAL:
        return state
    return replace(
        state,
        u1=forward_dft(state.u1, grid),
        u2=forward_dft(state.u2, grid),
        representation=SPECTRAL,
    )


def to_physical(state: SpinorField, grid: Grid) -> SpinorField:
    if state.representation == PHYSICAL:
        return state
    return replace(
        state,
        u1=inverse_dft(state.u1, grid),
        u2=inverse_dft(state.u2, grid),
        representation=PHYSICAL,
    )


def _gaussian(grid: Grid, center) -> np.ndarray:
    x1, x2, x3 = grid.meshes()
    c1, c2, c3 = center
    return np.exp(-((x1 - c1) ** 2) - (x2 - c2) ** 2 - (x3 - c3) ** 2)


def initial_state_gaussian_pair(grid: Grid) -> SpinorField:
    """Two offset Gaussians, one per spin component."""
    u1 = _gaussian(grid, (4.5, 4.5, 5.0)).astype(np.complex128)
    u2 = _gaussian(grid, (5.5, 5.5, 5.0)).astype(np.complex128)
    return SpinorField(u1=u1, u2=u2)


def initial_state_spin_up(grid: Grid) -> SpinorField:
    """A single Gaussian in the spin-up component; spin-down identically zero."""
    u1 = _gaussian(grid, (4.5, 4.5, 5.0)).astype(np.complex128)
    return SpinorField(u1=u1, u2=np.zeros_like(u1))


INITIAL_PRESETS = {
    "gaussian-pair": initial_state_gaussian_pair,
    "spin-up": initial_state_spin_up,
}


def initial_preset(name: str, grid: Grid) -> SpinorField:
    try:
        factory = INITIAL_PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; known presets: {sorted(INITIAL_PRESETS)}"
        ) from None
    return factory(grid)


def component_l2(state: SpinorField, grid: Grid) -> tuple[float, float]:
    """Discrete L2 norm of each component: sqrt(prod(L/N) * sum |U|^2).
    Evaluates in either representation via the Plancherel identity."""
    if state.representation == PHYSICAL:
        scale = grid.cell_volume
    else:
        scale = grid.volume
    n1 = np.sqrt(scale * np.sum(np.abs(state.u1) ** 2))
    n2 = np.sqrt(scale * np.sum(np.abs(state.u2) ** 2))
    return float(n1), float(n2)


def alpha_norm(state: SpinorField, grid: Grid) -> float:
    """Sum of the two component norms; the quantity the stability bound controls."""
    n1, n2 = component_l2(state, grid)
    return n1 + n2

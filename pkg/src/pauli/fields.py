"""
Electromagnetic data: analytic vector/scalar potentials and magnetic field,
their grid samples, and Coulomb-gauge / curl consistency validation.

The built-in presets are time-independent, periodic on [0,10]^3, and satisfy
B = curl A and div A = 0 identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import Grid, spectral_curl, spectral_divergence

__all__ = [
    "EMFields",
    "FieldSamples",
    "FieldValidation",
    "preset_experiment1",
    "preset_experiment2",
    "preset_zero",
    "field_preset",
    "FIELD_PRESETS",
    "sample_fields",
    "validate_fields",
]


@dataclass(frozen=True)
class EMFields:
    """Analytic field data.  Each callable takes a (..., 3) coordinate array;
    the potentials return (...,) and the vector quantities (..., 3)."""

    vector_potential: Callable[[np.ndarray], np.ndarray]
    scalar_potential: Callable[[np.ndarray], np.ndarray]
    magnetic_field: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"
    periods: tuple[float, float, float] = (10.0, 10.0, 10.0)


@dataclass(frozen=True)
class FieldSamples:
    """Pointwise grid samples: a_grid/b_grid are counts+(3,), phi_grid counts."""

    a_grid: np.ndarray
    phi_grid: np.ndarray
    b_grid: np.ndarray


@dataclass(frozen=True)
class FieldValidation:
    div_a_max: float
    curl_mismatch_max: float
    tol: float

    @property
    def coulomb_ok(self) -> bool:
        return self.div_a_max <= self.tol

    @property
    def curl_ok(self) -> bool:
        return self.curl_mismatch_max <= self.tol

    @property
    def ok(self) -> bool:
        return self.coulomb_ok and self.curl_ok


def _theta(x):
    return (np.pi / 5.0) * (x - 5.0)


def _vortex_a12(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t1 = _theta(x[..., 0])
    t2 = _theta(x[..., 1])
    a1 = -np.pi * np.cos(t2) * np.sin(t2)
    a2 = np.pi * np.cos(t1) * np.sin(t1)
    return a1, a2


def _b3_shared(x: np.ndarray) -> np.ndarray:
    t1 = _theta(x[..., 0])
    t2 = _theta(x[..., 1])
    return (np.pi**2 / 5.0) * (
        np.cos(t1) ** 2 - np.sin(t1) ** 2 + np.cos(t2) ** 2 - np.sin(t2) ** 2
    )


def _zero_scalar(x: np.ndarray) -> np.ndarray:
    return np.zeros(x.shape[:-1])


def preset_experiment1() -> EMFields:
    """In-plane vortex potential with a purely axial magnetic field; the two
    spin components stay uncoupled (B1 = B2 = 0)."""

    def a(x):
        a1, a2 = _vortex_a12(x)
        return np.stack([a1, a2, np.zeros_like(a1)], axis=-1)

    def b(x):
        b3 = _b3_shared(x)
        zero = np.zeros_like(b3)
        return np.stack([zero, zero, b3], axis=-1)

    return EMFields(a, _zero_scalar, b, name="experiment1")


def preset_experiment2() -> EMFields:
    """Vortex potential plus an axial component that switches on transverse
    magnetic field components, coupling the spin states."""

    def a(x):
        a1, a2 = _vortex_a12(x)
        a3 = np.cos(_theta(x[..., 0])) * np.sin(_theta(x[..., 1]))
        return np.stack([a1, a2, a3], axis=-1)

    def b(x):
        t1 = _theta(x[..., 0])
        t2 = _theta(x[..., 1])
        b1 = (np.pi / 5.0) * np.cos(t1) * np.cos(t2)
        b2 = (np.pi / 5.0) * np.sin(t1) * np.sin(t2)
        return np.stack([b1, b2, _b3_shared(x)], axis=-1)

    return EMFields(a, _zero_scalar, b, name="experiment2")


def preset_zero() -> EMFields:
    """Free evolution: A = 0, phi = 0, B = 0."""

    def vec(x):
        return np.zeros(x.shape[:-1] + (3,))

    return EMFields(vec, _zero_scalar, vec, name="zero")


FIELD_PRESETS = {
    "experiment1": preset_experiment1,
    "experiment2": preset_experiment2,
    "zero": preset_zero,
}


def field_preset(name: str) -> EMFields:
    try:
        factory = FIELD_PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; known presets: {sorted(FIELD_PRESETS)}"
        ) from None
    return factory()


def sample_fields(fields: EMFields, grid: Grid) -> FieldSamples:
    """Evaluate A, phi, B at every grid point."""
    pts = grid.points()
    a = np.asarray(fields.vector_potential(pts), dtype=np.float64)
    phi = np.asarray(fields.scalar_potential(pts), dtype=np.float64)
    b = np.asarray(fields.magnetic_field(pts), dtype=np.float64)
    for name, arr, shape in (
        ("vector potential", a, grid.shape + (3,)),
        ("scalar potential", phi, grid.shape),
        ("magnetic field", b, grid.shape + (3,)),
    ):
        if arr.shape != shape:
            raise ValueError(f"{name} samples have shape {arr.shape}, expected {shape}")
        if not np.all(np.isfinite(arr)):
            bad = np.argwhere(~np.isfinite(arr))[0]
            point = pts[tuple(bad[:3])]
            raise ValueError(f"{name} evaluated non-finite at point {tuple(point)}")
    return FieldSamples(a_grid=a, phi_grid=phi, b_grid=b)


def validate_fields(samples: FieldSamples, grid: Grid, tol: float = 1e-6) -> FieldValidation:
    """Check the Coulomb gauge div A = 0 and the consistency B = curl A,
    both evaluated spectrally.  Failures are reported, not raised."""
    div_a = spectral_divergence(samples.a_grid, grid)
    curl_a = spectral_curl(samples.a_grid, grid)
    return FieldValidation(
        div_a_max=float(np.max(np.abs(div_a))),
        curl_mismatch_max=float(np.max(np.abs(curl_a - samples.b_grid))),
        tol=float(tol),
    )

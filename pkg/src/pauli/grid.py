"""
Periodic box geometry, DFT conventions, and spectral calculus kernels.

All transforms use the 1/(N1*N2*N3)-on-forward normalization, so a constant
field c has the single coefficient c at k = (0,0,0).  Wavenumbers live on the
symmetric (minimally oscillatory) integer set {-floor(N/2), ..., ceil(N/2)-1}
per axis, stored in standard FFT ordering.  For even N the Nyquist mode
k = -N/2 is zeroed in first-derivative multipliers and split symmetrically
between +-N/2 in off-grid interpolation, which keeps real data real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid",
    "build_grid",
    "forward_dft",
    "inverse_dft",
    "spectral_gradient",
    "spectral_divergence",
    "spectral_curl",
    "trig_interpolate",
    "InterpolationPlan",
]

# Points processed per block in scattered-point interpolation; bounds the
# (block, N2*N3) work arrays to a few tens of MB on production grids.
_INTERP_BLOCK = 2048


@dataclass(frozen=True)
class Grid:
    """
    Uniform periodic grid on the box [0,L1) x [0,L2) x [0,L3).

    Derived arrays (set in __post_init__):
      spacings            Lℓ/Nℓ per axis
      axes                1D coordinate arrays (0, Δx, ..., (N-1)Δx)
      wavenumbers         1D integer wavenumbers per axis, FFT ordering,
                          values on the symmetric set
      angular_wavenumbers 2*pi*k/L per axis, FFT ordering
      deriv_multipliers   i*2*pi*k/L with the Nyquist entry zeroed
    """

    lengths: tuple[float, float, float]
    counts: tuple[int, int, int]

    def __post_init__(self) -> None:
        lengths = tuple(float(v) for v in self.lengths)
        counts = tuple(int(v) for v in self.counts)
        for ax in range(3):
            if not np.isfinite(lengths[ax]) or lengths[ax] <= 0:
                raise ValueError(f"box length must be positive on axis {ax + 1}")
            if counts[ax] < 2:
                raise ValueError(f"grid count must be >= 2 on axis {ax + 1}")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "counts", counts)

        spacings = tuple(lengths[ax] / counts[ax] for ax in range(3))
        axes = tuple(
            spacings[ax] * np.arange(counts[ax], dtype=np.float64) for ax in range(3)
        )
        wavenumbers = []
        angular = []
        deriv = []
        for ax in range(3):
            n = counts[ax]
            k = np.rint(np.fft.fftfreq(n) * n).astype(np.int64)
            w = 2.0 * np.pi * k / lengths[ax]
            d = 1j * w
            if n % 2 == 0:
                d = d.copy()
                d[n // 2] = 0.0  # odd multiplier has no consistent Nyquist sign
            wavenumbers.append(k)
            angular.append(w)
            deriv.append(d)
        object.__setattr__(self, "spacings", spacings)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "wavenumbers", tuple(wavenumbers))
        object.__setattr__(self, "angular_wavenumbers", tuple(angular))
        object.__setattr__(self, "deriv_multipliers", tuple(deriv))

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.counts

    @property
    def total_points(self) -> int:
        n1, n2, n3 = self.counts
        return n1 * n2 * n3

    @property
    def cell_volume(self) -> float:
        return self.spacings[0] * self.spacings[1] * self.spacings[2]

    @property
    def volume(self) -> float:
        return self.lengths[0] * self.lengths[1] * self.lengths[2]

    def meshes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinate meshes x1, x2, x3 with shape ``counts``."""
        return tuple(np.meshgrid(*self.axes, indexing="ij"))

    def points(self) -> np.ndarray:
        """All grid points as an array of shape ``counts + (3,)``."""
        return np.stack(self.meshes(), axis=-1)

    def angular_k_squared(self) -> np.ndarray:
        """|2*pi*k/L|^2 mesh in FFT ordering (Nyquist included)."""
        w1, w2, w3 = self.angular_wavenumbers
        return (
            w1[:, None, None] ** 2 + w2[None, :, None] ** 2 + w3[None, None, :] ** 2
        )


def build_grid(lengths, counts) -> Grid:
    """Validate box edges and point counts and construct the Grid."""
    lengths = tuple(lengths)
    counts = tuple(counts)
    if len(lengths) != 3 or len(counts) != 3:
        raise ValueError("lengths and counts must each have 3 entries")
    return Grid(lengths, counts)


def _check_shape(values: np.ndarray, grid: Grid) -> None:
    if values.shape != grid.shape:
        raise ValueError(
            f"field shape {values.shape} does not match grid shape {grid.shape}"
        )


def forward_dft(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Physical grid values -> spectral coefficients (1/(N1*N2*N3) normalized)."""
    values = np.asarray(values)
    _check_shape(values, grid)
    return np.fft.fftn(values) / grid.total_points


def inverse_dft(coefficients: np.ndarray, grid: Grid) -> np.ndarray:
    """Spectral coefficients -> physical grid values; exact inverse of forward_dft."""
    coefficients = np.asarray(coefficients)
    _check_shape(coefficients, grid)
    return np.fft.ifftn(coefficients) * grid.total_points


def _apply_multiplier(spectral: np.ndarray, mult: np.ndarray, axis: int) -> np.ndarray:
    shape = [1, 1, 1]
    shape[axis] = mult.size
    return spectral * mult.reshape(shape)


def _partial(values: np.ndarray, grid: Grid, axis: int) -> np.ndarray:
    spectral = forward_dft(values, grid)
    out = inverse_dft(_apply_multiplier(spectral, grid.deriv_multipliers[axis], axis), grid)
    if np.isrealobj(values):
        return out.real
    return out


def spectral_gradient(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Gradient of a scalar field; returns shape ``counts + (3,)``."""
    values = np.asarray(values)
    _check_shape(values, grid)
    return np.stack([_partial(values, grid, ax) for ax in range(3)], axis=-1)


def _check_vector(vec: np.ndarray, grid: Grid) -> None:
    if vec.shape != grid.shape + (3,):
        raise ValueError(
            f"vector field shape {vec.shape} does not match {grid.shape + (3,)}"
        )


def spectral_divergence(vec: np.ndarray, grid: Grid) -> np.ndarray:
    """Divergence of a 3-vector field sampled on the grid."""
    vec = np.asarray(vec)
    _check_vector(vec, grid)
    return sum(_partial(vec[..., ax], grid, ax) for ax in range(3))


def spectral_curl(vec: np.ndarray, grid: Grid) -> np.ndarray:
    """Curl of a 3-vector field sampled on the grid."""
    vec = np.asarray(vec)
    _check_vector(vec, grid)
    d = {
        (i, j): _partial(vec[..., j], grid, i)
        for i in range(3)
        for j in range(3)
        if i != j
    }
    return np.stack(
        [
            d[(1, 2)] - d[(2, 1)],
            d[(2, 0)] - d[(0, 2)],
            d[(0, 1)] - d[(1, 0)],
        ],
        axis=-1,
    )


def _split_axis_modes(grid: Grid, axis: int) -> np.ndarray:
    """Angular frequencies for interpolation with the even-N Nyquist mode
    duplicated at +N/2 (the coefficient is halved onto both copies)."""
    w = grid.angular_wavenumbers[axis]
    n = grid.counts[axis]
    if n % 2 == 0:
        return np.concatenate([w, [-w[n // 2]]])
    return w


def _split_nyquist(coefficients: np.ndarray, grid: Grid) -> np.ndarray:
    """Pad the coefficient tensor so every even axis carries half the Nyquist
    coefficient at -N/2 and half at an appended +N/2 entry."""
    c = np.asarray(coefficients, dtype=np.complex128)
    for ax in range(3):
        n = grid.counts[ax]
        if n % 2 != 0:
            continue
        half = 0.5 * np.take(c, [n // 2], axis=ax)
        c = np.concatenate([c, half], axis=ax)
        idx = [slice(None)] * 3
        idx[ax] = slice(n // 2, n // 2 + 1)
        c[tuple(idx)] = half
    return c


class InterpolationPlan:
    """
    Trigonometric interpolation of spectral data at a fixed set of points.

    Precomputes the per-axis phase matrices exp(i*w*x) once, so repeated
    evaluation against new coefficient tensors (the inner loop of the
    semi-Lagrangian step) reduces to blocked tensor contractions.
    """

    def __init__(self, points: np.ndarray, grid: Grid):
        points = np.asarray(points, dtype=np.float64)
        if points.ndim < 1 or points.shape[-1] != 3:
            raise ValueError("points must have trailing dimension 3")
        if not np.all(np.isfinite(points)):
            raise ValueError("interpolation points must be finite")
        self.grid = grid
        self._lead_shape = points.shape[:-1]
        flat = points.reshape(-1, 3)
        self._phases = []
        self._padded_shape = []
        for ax in range(3):
            x = np.mod(flat[:, ax], grid.lengths[ax])
            w = _split_axis_modes(grid, ax)
            self._phases.append(np.exp(1j * np.outer(x, w)))
            self._padded_shape.append(w.size)

    def evaluate(self, coefficients: np.ndarray) -> np.ndarray:
        """Evaluate the interpolant of ``coefficients`` (FFT ordering) at the
        plan's points; returns values with the points' leading shape."""
        coefficients = np.asarray(coefficients)
        _check_shape(coefficients, self.grid)
        npts = self._phases[0].shape[0]
        out = np.zeros(npts, dtype=np.complex128)
        if coefficients.any():
            k1, k2, k3 = self._padded_shape
            c = _split_nyquist(coefficients, self.grid).reshape(k1, k2 * k3)
            e1, e2, e3 = self._phases
            for start in range(0, npts, _INTERP_BLOCK):
                sl = slice(start, min(start + _INTERP_BLOCK, npts))
                t = (e1[sl] @ c).reshape(-1, k2, k3)
                t = (t * e2[sl][:, :, None]).sum(axis=1)
                out[sl] = (t * e3[sl]).sum(axis=1)
        return out.reshape(self._lead_shape)


def trig_interpolate(coefficients: np.ndarray, points: np.ndarray, grid: Grid) -> np.ndarray:
    """Evaluate the symmetric-wavenumber trigonometric interpolant at points
    anywhere in R^3 (coordinates are wrapped into the box)."""
    return InterpolationPlan(points, grid).evaluate(coefficients)

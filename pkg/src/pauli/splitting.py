"""
The four sub-step propagators of the exponential splitting scheme, their
precomputation for time-independent fields, backward characteristic tracing
for the semi-Lagrangian advection step, and the composition into first-order
(Lie) and second-order (Strang) time steps plus the time loop.

One Lie step advances the state through

    potential (pointwise phases, physical space)
    kinetic   (mode phases, spectral space)
    advection (interpolation at backward-traced departure points)
    coupling  (pointwise 2x2 unitaries mixing the spin components)

in exactly that order.  The kinetic step hands its spectral coefficients
directly to the advection step, which needs them for off-grid interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .fields import EMFields, FieldSamples
from .grid import Grid, InterpolationPlan
from .observables import SeriesRecord, make_record
from .state import PHYSICAL, SPECTRAL, SpinorField, to_physical, to_spectral

__all__ = [
    "SolverConfig",
    "Propagators",
    "DivergenceError",
    "coupling_matrix_closed_form",
    "trace_characteristics",
    "precompute_propagators",
    "potential_step",
    "kinetic_step",
    "advection_step",
    "coupling_step",
    "lie_step",
    "strang_step",
    "evolve",
]


class DivergenceError(RuntimeError):
    """Raised when the state stops being finite during time stepping."""

    def __init__(self, step: int):
        super().__init__(f"state became non-finite after step {step}")
        self.step = step


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping parameters.  t_final must be an integer multiple of dt
    (rejected otherwise; silently adjusting dt would corrupt convergence
    studies)."""

    epsilon: float
    dt: float
    t_final: float
    order: str = "lie"
    characteristic_substeps: int = 4
    snapshot_stride: int = 1

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise ValueError("epsilon must be positive")
        if not (self.dt > 0):
            raise ValueError("dt must be positive")
        if self.t_final < 0:
            raise ValueError("t_final must be non-negative")
        if self.order not in ("lie", "strang"):
            raise ValueError(f"unknown splitting order {self.order!r}")
        if self.characteristic_substeps < 1:
            raise ValueError("characteristic_substeps must be >= 1")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be >= 1")
        ratio = self.t_final / self.dt
        steps = round(ratio)
        if self.t_final > 0 and (steps == 0 or abs(ratio - steps) > 1e-9 * max(steps, 1)):
            raise ValueError(
                f"t_final/dt = {ratio} is not an integer number of steps"
            )

    @property
    def n_steps(self) -> int:
        return round(self.t_final / self.dt)


@dataclass(frozen=True)
class Propagators:
    """Per-point step operators, precomputed once for time-independent fields.

    potential_phase1/2   exp of the diagonal potential generator per component
    kinetic_phase        exp of the mode-wise kinetic generator (FFT ordering)
    coupling_matrix      2x2 unitary per grid point, shape counts + (2, 2)
    departure_points     backward-traced characteristic feet, counts + (3,)
    """

    potential_phase1: np.ndarray
    potential_phase2: np.ndarray
    kinetic_phase: np.ndarray
    coupling_matrix: np.ndarray
    departure_points: np.ndarray
    dt: float
    epsilon: float
    interpolation: Optional[InterpolationPlan] = field(
        repr=False, compare=False, default=None
    )
    departure_is_grid: bool = False


def coupling_matrix_closed_form(b1, b2, dt: float) -> np.ndarray:
    """exp(dt*M) for M = [[0, d1], [d2, 0]] with d1 = (i b1 + b2)/2 and
    d2 = (i b1 - b2)/2.  Since d1*d2 = -rho^2 for rho = sqrt(b1^2+b2^2)/2 the
    exponential series collapses to cos(rho dt) I + sin(rho dt)/rho M.

    Accepts scalars or broadcasting arrays; returns shape broadcast + (2, 2).
    """
    b1 = np.asarray(b1, dtype=np.float64)
    b2 = np.asarray(b2, dtype=np.float64)
    if not (np.all(np.isfinite(b1)) and np.all(np.isfinite(b2))):
        raise ValueError("magnetic field values must be finite")
    rho = 0.5 * np.hypot(b1, b2)
    cos = np.cos(rho * dt)
    safe = np.where(rho > 0, rho, 1.0)
    sinc = np.where(rho > 0, np.sin(rho * dt) / safe, dt)
    d1 = 0.5 * (1j * b1 + b2)
    d2 = 0.5 * (1j * b1 - b2)
    out = np.zeros(np.broadcast(b1, b2).shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = cos
    out[..., 0, 1] = sinc * d1
    out[..., 1, 0] = sinc * d2
    out[..., 1, 1] = cos
    return out


def trace_characteristics(
    fields: EMFields,
    grid: Grid,
    config: SolverConfig,
    dt: Optional[float] = None,
    substeps: Optional[int] = None,
) -> np.ndarray:
    """Backward-trace the advection characteristics dz/dt = -A(z) from each
    grid point at the end of a step back over ``dt``, with classical RK4 on
    uniform substeps.  Reversing time turns this into dz/ds = +A(z) from the
    grid point, which is what is integrated here."""
    dt = config.dt if dt is None else dt
    substeps = config.characteristic_substeps if substeps is None else substeps
    h = dt / substeps
    z = grid.points().reshape(-1, 3).copy()

    def a(p):
        return np.asarray(fields.vector_potential(p), dtype=np.float64)

    for _ in range(substeps):
        k1 = a(z)
        k2 = a(z + 0.5 * h * k1)
        k3 = a(z + 0.5 * h * k2)
        k4 = a(z + h * k3)
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(z)):
        bad = np.argwhere(~np.isfinite(z).all(axis=1))[0, 0]
        start = grid.points().reshape(-1, 3)[bad]
        raise ValueError(
            f"characteristic from grid point {tuple(start)} became non-finite"
        )
    return z.reshape(grid.shape + (3,))


def precompute_propagators(
    fields: EMFields,
    samples: FieldSamples,
    grid: Grid,
    config: SolverConfig,
    dt: Optional[float] = None,
) -> Propagators:
    """Build all per-point step operators for a step of size ``dt``
    (defaults to config.dt)."""
    dt = config.dt if dt is None else dt
    eps = config.epsilon
    if samples.phi_grid.shape != grid.shape:
        raise ValueError(
            f"samples shape {samples.phi_grid.shape} does not match grid {grid.shape}"
        )
    scalar = 0.5 * np.sum(samples.a_grid**2, axis=-1) + samples.phi_grid
    b3 = samples.b_grid[..., 2]
    phase1 = np.exp(-1j * (dt / eps) * (scalar - 0.5 * eps * b3))
    phase2 = np.exp(-1j * (dt / eps) * (scalar + 0.5 * eps * b3))
    kinetic = np.exp(-0.5j * eps * dt * grid.angular_k_squared())
    coupling = coupling_matrix_closed_form(
        samples.b_grid[..., 0], samples.b_grid[..., 1], dt
    )
    departure = trace_characteristics(fields, grid, config, dt=dt)
    identity = np.array_equal(departure, grid.points())
    plan = None if identity else InterpolationPlan(departure, grid)
    return Propagators(
        potential_phase1=phase1,
        potential_phase2=phase2,
        kinetic_phase=kinetic,
        coupling_matrix=coupling,
        departure_points=departure,
        dt=dt,
        epsilon=eps,
        interpolation=plan,
        departure_is_grid=identity,
    )


def potential_step(state: SpinorField, prop: Propagators) -> SpinorField:
    """Pointwise multiplication by the potential phases (physical space)."""
    if state.representation != PHYSICAL:
        raise ValueError("potential step requires a physical-space state")
    return SpinorField(
        u1=prop.potential_phase1 * state.u1,
        u2=prop.potential_phase2 * state.u2,
        representation=PHYSICAL,
    )


def kinetic_step(state: SpinorField, prop: Propagators, grid: Grid) -> SpinorField:
    """Mode-wise multiplication by the free-flight phases; output stays
    spectral for the advection step."""
    spectral = to_spectral(state, grid)
    return SpinorField(
        u1=prop.kinetic_phase * spectral.u1,
        u2=prop.kinetic_phase * spectral.u2,
        representation=SPECTRAL,
    )


def advection_step(state: SpinorField, prop: Propagators, grid: Grid) -> SpinorField:
    """Evaluate the trigonometric interpolant of the spectral data at the
    departure points; output is physical."""
    spectral = to_spectral(state, grid)
    if prop.departure_is_grid:
        return to_physical(spectral, grid)
    return SpinorField(
        u1=prop.interpolation.evaluate(spectral.u1),
        u2=prop.interpolation.evaluate(spectral.u2),
        representation=PHYSICAL,
    )


def coupling_step(state: SpinorField, prop: Propagators) -> SpinorField:
    """Apply the per-point 2x2 coupling unitary (physical space)."""
    if state.representation != PHYSICAL:
        raise ValueError("coupling step requires a physical-space state")
    m = prop.coupling_matrix
    return SpinorField(
        u1=m[..., 0, 0] * state.u1 + m[..., 0, 1] * state.u2,
        u2=m[..., 1, 0] * state.u1 + m[..., 1, 1] * state.u2,
        representation=PHYSICAL,
    )


def lie_step(state: SpinorField, prop: Propagators, grid: Grid) -> SpinorField:
    """First-order step: potential, kinetic, advection, coupling."""
    state = potential_step(state, prop)
    state = kinetic_step(state, prop, grid)
    state = advection_step(state, prop, grid)
    return coupling_step(state, prop)


def strang_step(
    state: SpinorField, half: Propagators, full: Propagators, grid: Grid
) -> SpinorField:
    """Symmetric second-order step: the palindrome of half-steps of the
    potential, kinetic and advection factors around a full coupling step."""
    state = potential_step(state, half)
    state = kinetic_step(state, half, grid)
    state = advection_step(state, half, grid)
    state = coupling_step(state, full)
    state = advection_step(state, half, grid)
    state = kinetic_step(state, half, grid)
    state = to_physical(state, grid)
    return potential_step(state, half)


def evolve(
    state0: SpinorField,
    fields: EMFields,
    grid: Grid,
    config: SolverConfig,
    samples: Optional[FieldSamples] = None,
    on_record: Optional[Callable[[SeriesRecord], None]] = None,
    on_snapshot: Optional[Callable[[int, float, SpinorField], None]] = None,
) -> SpinorField:
    """Run the configured number of steps, emitting one SeriesRecord per step
    and a snapshot every ``snapshot_stride`` steps (including step 0)."""
    from .fields import sample_fields

    if samples is None:
        samples = sample_fields(fields, grid)
    state = to_physical(state0, grid)
    if config.order == "strang":
        half = precompute_propagators(fields, samples, grid, config, dt=config.dt / 2)
        full = precompute_propagators(fields, samples, grid, config, dt=config.dt)

        def step(s):
            return strang_step(s, half, full, grid)

    else:
        prop = precompute_propagators(fields, samples, grid, config)

        def step(s):
            return lie_step(s, prop, grid)

    if on_snapshot is not None:
        on_snapshot(0, 0.0, state)
    for n in range(config.n_steps):
        state = step(state)
        if not (np.all(np.isfinite(state.u1)) and np.all(np.isfinite(state.u2))):
            raise DivergenceError(n + 1)
        t = (n + 1) * config.dt
        if on_record is not None:
            on_record(make_record(t, state, samples, grid, config.epsilon))
        if on_snapshot is not None and (n + 1) % config.snapshot_stride == 0:
            on_snapshot(n + 1, t, state)
    return state

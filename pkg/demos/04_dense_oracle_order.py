"""
Convergence order against a brute-force reference: on a tiny grid the full
generator (kinetic + potential + advection + coupling) fits in a dense matrix,
so the numerical scheme can be compared against a matrix-exponential solve of
the very same spatial discretization.

The Lie composition converges at first order.  The measured Strang order is
limited by the semi-Lagrangian advection step, whose interpolation at traced
departure points agrees with the exponential of the dense advection block
only to O(dt^2) per step on data with spectral content near the grid's
Nyquist boundary; that O(dt) aggregate keeps the observed slope near one on
a grid this coarse even though the pure splitting error is second order.
"""

import numpy as np

from pauli import (
    SpinorField,
    build_grid,
    convergence_study,
    forward_dft,
    initial_state_gaussian_pair,
    inverse_dft,
    preset_experiment2,
)

grid = build_grid(lengths=(10.0, 10.0, 10.0), counts=(8, 8, 8))
fields = preset_experiment2()

# band-limit the Gaussian pair so the 8^3 representation starts well resolved
k1, k2, k3 = np.meshgrid(*grid.wavenumbers, indexing="ij")
mask = (np.abs(k1) <= 2) & (np.abs(k2) <= 2) & (np.abs(k3) <= 2)
raw = initial_state_gaussian_pair(grid)
comps = []
for u in (raw.u1, raw.u2):
    c = forward_dft(u, grid)
    c[~mask] = 0.0
    comps.append(inverse_dft(c, grid))
state = SpinorField(u1=comps[0], u2=comps[1])

dt_list = [0.1, 0.05, 0.025, 0.0125]
for order in ("lie", "strang"):
    result = convergence_study(
        state, fields, grid, epsilon=0.5, dt_list=dt_list, t_final=0.5, order=order
    )
    print(f"\n{order} splitting:")
    for row in result.rows:
        print(f"  dt={row.dt:<7g} alpha error = {row.alpha_error:.6e}")
    print(f"  fitted slope: {result.slope:.3f}")

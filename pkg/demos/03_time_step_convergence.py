"""
Self-convergence in the time step: re-run the same problem with coarser and
coarser steps and compare everything against the finest run, mirroring how
convergence is assessed when no closed-form solution exists.

For a first-order splitting the error against a dt_ref reference behaves like
C*(dt - dt_ref), so the expected successive ratios for dt halving are
(0.4-0.05)/(0.2-0.05) = 2.33 and (0.2-0.05)/(0.1-0.05) = 3.0.
"""

import numpy as np

from pauli import (
    SolverConfig,
    build_grid,
    evolve,
    initial_state_gaussian_pair,
    preset_experiment2,
    sample_fields,
    state_error,
)

grid = build_grid(lengths=(10.0, 10.0, 10.0), counts=(16, 16, 16))
fields = preset_experiment2()
samples = sample_fields(fields, grid)
state = initial_state_gaussian_pair(grid)

T = 0.8
dt_ref = 0.05
coarse = [0.4, 0.2, 0.1]

reference = evolve(
    state, fields, grid, SolverConfig(epsilon=0.5, dt=dt_ref, t_final=T), samples=samples
)

print(f"reference: dt={dt_ref}, T={T}\n")
print(f"{'dt':>6} {'max abs error':>15} {'relative':>12}")
errors = []
for dt in coarse:
    final = evolve(
        state, fields, grid, SolverConfig(epsilon=0.5, dt=dt, t_final=T), samples=samples
    )
    err = state_error(final, reference, grid)
    errors.append(err.max_abs)
    print(f"{dt:6.2f} {err.max_abs:15.6e} {err.rel:12.6e}")

slope = np.polyfit(np.log(coarse), np.log(errors), 1)[0]
print(f"\nfitted log-log slope: {slope:.3f} (first-order splitting)")
for (da, ea), (db, eb) in zip(zip(coarse, errors), zip(coarse[1:], errors[1:])):
    print(f"error ratio {da} -> {db}: {ea / eb:.2f} "
          f"(prediction {(da - dt_ref) / (db - dt_ref):.2f})")

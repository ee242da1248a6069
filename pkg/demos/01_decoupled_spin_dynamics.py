"""
Decoupled spin dynamics: the vortex field whose magnetic field points purely
along the third axis, so the two spinor components never exchange mass.

Walks through the full library workflow: build the grid, validate the fields,
evolve, and watch the per-component norms stay independently (almost exactly)
constant.  Uses a 16^3 grid so the whole script runs in a few seconds; bump
`counts` to 25 for the production resolution.
"""

from pauli import (
    SolverConfig,
    alpha_norm,
    build_grid,
    evolve,
    initial_state_gaussian_pair,
    preset_experiment1,
    sample_fields,
    validate_fields,
)

grid = build_grid(lengths=(10.0, 10.0, 10.0), counts=(16, 16, 16))
fields = preset_experiment1()
samples = sample_fields(fields, grid)

report = validate_fields(samples, grid, tol=1e-6)
print(f"Coulomb gauge:     max|div A|      = {report.div_a_max:.3e}")
print(f"Field consistency: max|curl A - B| = {report.curl_mismatch_max:.3e}")
assert report.ok

state = initial_state_gaussian_pair(grid)
config = SolverConfig(epsilon=0.5, dt=0.05, t_final=1.0)

print(f"\nevolving {config.n_steps} steps of dt={config.dt} "
      f"(alpha(0) = {alpha_norm(state, grid):.6f})")
print(f"{'t':>5} {'|u1|':>10} {'|u2|':>10} {'mass':>12} {'energy':>12}")

records = []
final = evolve(state, fields, grid, config, samples=samples, on_record=records.append)
for rec in records[::4]:
    print(f"{rec.time:5.2f} {rec.l2_u1:10.6f} {rec.l2_u2:10.6f} "
          f"{rec.mass:12.8f} {rec.energy:12.6f}")

print("\nWith B1 = B2 = 0 the components evolve independently: each norm is")
print("conserved up to the interpolation error of the advection step, and a")
print("state starting with u2 = 0 keeps u2 = 0 exactly (see demo 02 for the")
print("coupled case).")
peak_u2_change = abs(records[-1].l2_u2 - records[0].l2_u2)
print(f"u2-norm change over the run: {peak_u2_change:.2e}")

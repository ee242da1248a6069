"""
Coupled spin dynamics: adding an axial component to the vector potential
switches on transverse magnetic field components, and a state prepared purely
spin-up gradually acquires a spin-down part.

Prints the mass exchange between the components; the total mass stays put
(the coupling matrices are pointwise unitary) while the individual component
norms oscillate.
"""

from pauli import (
    SolverConfig,
    build_grid,
    evolve,
    initial_state_spin_up,
    preset_experiment2,
    sample_fields,
)

grid = build_grid(lengths=(10.0, 10.0, 10.0), counts=(16, 16, 16))
fields = preset_experiment2()
samples = sample_fields(fields, grid)

state = initial_state_spin_up(grid)
config = SolverConfig(epsilon=0.5, dt=0.05, t_final=1.0)

print("spin-up initial state under a field with transverse components:\n")
print(f"{'t':>5} {'|u1|^2':>12} {'|u2|^2':>12} {'down fraction':>14}")
records = []
evolve(state, fields, grid, config, samples=samples, on_record=records.append)
for rec in records[1::2]:
    m1, m2 = rec.l2_u1**2, rec.l2_u2**2
    print(f"{rec.time:5.2f} {m1:12.8f} {m2:12.8f} {m2 / (m1 + m2):14.6f}")

print("\nThe spin-down fraction grows from zero: the off-diagonal part of the")
print("magnetic coupling rotates amplitude between the components at each")
print("point, while their combined mass is preserved by unitarity.")

"""Duality rotation of a random smooth field: L flips sign, H and S do not move.

Run: python3 demos/02_duality.py
"""
import math

import numpy as np

from gaproca.fields import (
    GridSpec, assemble_faraday, duality_rotate, hamiltonian_density, lagrangian_density, poynting,
    random_state,
)

grid = GridSpec.cube(32, 2 * math.pi)
F = assemble_faraday(random_state(grid, 2024, with_rates=False))

print(f"{'alpha':>8} {'int L':>14} {'int H':>14} {'max |dS|':>10}")
S0 = poynting(F)
for alpha in (0.0, math.pi / 6, math.pi / 4, math.pi / 2, math.pi):
    Fr = duality_rotate(F, alpha)
    L = grid.integrate(lagrangian_density(Fr))
    H = grid.integrate(hamiltonian_density(Fr))
    dS = float(np.max(np.abs(poynting(Fr) - S0)))
    print(f"{alpha:8.4f} {L:14.6f} {H:14.6f} {dS:10.1e}")

Fr = duality_rotate(F, math.pi / 2)
print("\nL' == -L bit for bit at pi/2:", np.array_equal(lagrangian_density(Fr), -lagrangian_density(F)))

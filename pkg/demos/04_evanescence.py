"""Euclidean signature: a driven slab decays as exp(-omega x / c) instead of propagating.

Run: python3 demos/04_evanescence.py
"""
import math

from gaproca.simulator import euclidean_evanescence, solve_profile

for omega in (math.pi, 2 * math.pi, 4 * math.pi):
    rep = euclidean_evanescence(omega)
    print(f"omega = {omega:7.4f}: kappa = {rep.kappa_fit:8.4f} (expected {rep.kappa_expected:8.4f}), "
          f"amplitude past 10 decay lengths {rep.far_amplitude:.1e}")

print("\nSame drive, Minkowski signature (a standing wave fills the slab):")
x, E = solve_profile(2 * math.pi, 128, 3.0, signature="minkowski")
xe, Ee = solve_profile(2 * math.pi, 128, 3.0, signature="euclidean")
for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
    j = int(frac * (len(x) - 1))
    print(f"  x = {x[j]:4.2f}:  |E| Minkowski {abs(E[j]):8.4f}   |E| Euclidean {abs(Ee[j]):.2e}")

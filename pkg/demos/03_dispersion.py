"""A massive photon is slower: measure omega(k) and the group speed on the lattice.

Run: python3 demos/03_dispersion.py   (about 20 s)
"""
import math

from gaproca.simulator import group_speed, measure_dispersion

k = 2 * math.pi
print(f"{'m/k':>5} {'omega measured':>15} {'c sqrt(k^2+m^2)':>16} {'rel err':>9}")
for frac in (0.0, 0.5, 1.0, 2.0):
    r = measure_dispersion(128, frac * k)
    print(f"{frac:5.1f} {r.omega_measured:15.8f} {r.omega_predicted:16.8f} {r.rel_error:9.1e}")

print("\nSecond-order convergence at m = k/2:")
coarse, fine = measure_dispersion(64, k / 2), measure_dispersion(128, k / 2)
print(f"  error N=64 / N=128 = {coarse.rel_error / fine.rel_error:.3f}")

print("\nGroup speed from modes 1 and 2 (c = 1):")
for frac in (0.0, 1.0):
    print(f"  m = {frac:.0f} k: v_g = {group_speed(128, frac * k):.4f}")

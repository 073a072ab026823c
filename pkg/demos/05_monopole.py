"""Gauss's law for a magnetic monopole: the flux through any enclosing box is 4 pi e_m.

Run: python3 demos/05_monopole.py   (a few seconds)
"""
from gaproca.simulator import monopole_gauss_check

for charge in (1.0, -2.5):
    rep = monopole_gauss_check(charge, n_cells=64, boxes=(20, 24, 28, 31))
    print(f"e_m = {charge:+.1f}  ({rep.iterations} SOR sweeps, residual {rep.residual:.1e})")
    for half, ratio in rep.ratio.items():
        print(f"  box half-width {half:2d} cells: flux / 4 pi e_m = {ratio:.9f}")

"""
N spins, each with its own clock: brute-force contraction against the closed form.
"""
import time

from weakclock import clock, weakval
from weakclock.grid import UniformGrid

packets = clock.packets_for_tau(0.5, UniformGrid(-20.0, 20.0, 4096), 1.0)
closed = weakval.weak_velocity_closed_form(0.6, 0.8, weakval.pair_tau(
    weakval.build_pre_post(0.6, 0.8, *packets)))
for n in range(1, 9):
    t0 = time.perf_counter()
    pair = weakval.build_pre_post(0.6, 0.8, *packets, n_spins=n)
    w = weakval.weak_velocity_full(pair)
    print(f"N = {n}  dim {pair.pre.dim:6d}  v_w = {w.value.real:.15f}  "
          f"|diff| = {abs(w.value - closed):.1e}  ({time.perf_counter() - t0:.3f} s)")

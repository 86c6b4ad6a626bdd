"""
The weak velocity of a spin whose z-velocity can only be +c or -c.
"""
import math

from weakclock import clock, weakval
from weakclock.grid import UniformGrid

grid = UniformGrid(-20.0, 20.0, 4096)

# Identical in/fin time packets give tau = 1.
p = clock.make_packet(0.0, 1.0, grid)
pair = weakval.build_pre_post(0.6, 0.8, p, p, p, p)
w = weakval.weak_velocity_full(pair, c=1.0)
print("tau = 1        v_w =", w.value.real, " (closed form", (0.6 - 0.8) / (0.6 + 0.8), ")")
print("post-selection probability:", w.post_selection_probability)

# Move the final packets apart to realize other values of tau.
for target in (0.1, 0.5, 2.0, 0.4 + 0.3j):
    packets = clock.packets_for_tau(target, grid, 1.0)
    pair = weakval.build_pre_post(0.6, 0.8, *packets)
    tau = weakval.pair_tau(pair)
    print(f"tau = {complex(tau):.4f}  v_w = {complex(weakval.weak_velocity_full(pair).value):.6f}")

# Post-selecting on spin up alone recovers the speed of light.
pair = weakval.build_pre_post(1.0, 0.0, p, p, p, p)
print("beta = 0:      v_w =", weakval.weak_velocity_full(pair, c=1.0).value.real)

# Balanced post-selection cancels the two branches.
r = 1 / math.sqrt(2)
print("alpha = beta:  v_w =", weakval.weak_velocity_full(weakval.build_pre_post(r, r, p, p, p, p)).value.real)

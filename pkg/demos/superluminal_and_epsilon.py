"""
Faster-than-c weak velocities, and the synchronization parameter they imply.
"""
import numpy as np

from weakclock import oneway, weakval

alpha, beta, tau = 0.8, -0.6, 1.0
v = weakval.weak_velocity_closed_form(alpha, beta, tau, c=1.0)
print("v_w =", v, "->", oneway.causality_class(v).regime)
print(oneway.causality_class(v).note)

# Reading v_w as a one-way speed fixes the Reichenbach epsilon.
m = oneway.epsilon_from_weak(alpha, beta, tau)
conv = oneway.SynchronizationConvention(m.epsilon)
fwd, bwd = oneway.directional_speeds(conv)
print(f"epsilon = {m.epsilon:.6f}  forward = {fwd:.6f}  backward = {bwd:.6f}")
print("round trip speed:", oneway.roundtrip_check(conv, 1.0).c_effective)

# Scan tau: the two validity flags are reported side by side.
print("\n   tau      v_w   epsilon  in_range  tau<alpha/3beta")
for row in weakval.epsilon_tau_scan(0.6, 0.8, (-1.0, 0.4), 8):
    print(f"{row.tau:6.2f} {row.weak_velocity:8.4f} {row.epsilon:9.4f}  {row.in_range!s:8}  {row.paper_constraint}")

# Superluminal exactly when alpha*tau*beta < 0.
rng = np.random.default_rng(0)
a, b, t = rng.uniform(-2, 2, (3, 10000))
v = (a - t * b) / (a + t * b)
print("\nsign rule holds on 10^4 random draws:", bool(np.all((abs(v) > 1) == (a * t * b < 0))))

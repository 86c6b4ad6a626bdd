"""
The exact post-selected pointer against the rigid weak-value shift.

The exact field is a Phi(z - c t_B) + b Phi(z + c t_B); for c t_B << eps it
looks like a single Gaussian displaced by v_w t_B.
"""
from weakclock import clock, pointer, weakval
from weakclock.grid import UniformGrid

zgrid = UniformGrid(-12.0, 12.0, 2048)
phi = pointer.gaussian_pointer(1.0, zgrid)
pair = weakval.build_pre_post(0.6, 0.8, *clock.packets_for_tau(0.5, UniformGrid(-20, 20, 4096), 1.0))
g = clock.DesyncProfile.zero()

import math

print("  c t_B/eps   mean/t_B      v_w       deviation   order    fidelity")
prev = None
for t_b in (0.1, 0.05, 0.025, 0.0125, 0.001):
    field, rep = pointer.evolve_exact(phi, pair, g, 1.0, t_b)
    dev = abs(rep.measured_weak_velocity - rep.predicted_weak_velocity.real)
    # local order of convergence between consecutive rows
    ratio = f"{math.log(prev[1] / dev) / math.log(prev[0] / t_b):6.3f}" if prev else "      "
    print(f"  {t_b:9.4f}  {rep.measured_weak_velocity:9.6f}  {rep.predicted_weak_velocity.real:9.6f}"
          f"  {dev:10.3e}  {ratio}  {rep.fidelity_to_weak_prediction:.12f}")
    prev = (t_b, dev)

# Well outside the weak regime the field splits into two peaks.
field, rep = pointer.evolve_exact(phi, pair, g, 1.0, 3.0)
print("\nc t_B = 3 eps: variance", field.variance(), "vs", phi.variance(), "unshifted")

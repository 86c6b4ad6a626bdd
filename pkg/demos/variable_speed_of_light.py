"""
A position-dependent speed of light: hbar(z) = Lambda / c(z)^2.
"""
import numpy as np

from weakclock import pointer, vsl
from weakclock.grid import UniformGrid

zgrid = UniformGrid(-12.0, 12.0, 2048)
profile = vsl.tanh_speed(1.0, 0.2, 2.0, zgrid)
hbar = vsl.hbar_from_speed(profile, vsl.default_lambda(1.0, 1.0))
print("hbar range:", hbar.samples.min(), hbar.samples.max())
print("max |sqrt(hbar) c - sqrt(Lambda)|:", hbar.constancy_deviation(profile))

# [z, Pi] = i hbar(z), checked at fourth order in the spacing.
for n in (1024, 2048, 4096):
    g = UniformGrid(-20.0, 20.0, n)
    hb = vsl.hbar_from_speed(vsl.tanh_speed(1.0, 0.2, 2.0, g), 1.0)
    tests = [pointer.PointerField(g, np.exp(-(g.points - s) ** 2 / 2), 1.0) for s in (-1, 0, 1)]
    print(f"n = {n:5d}  commutator residual {vsl.commutator_check(hb, tests):.3e}")

# The pointer moves faster where light is faster.
phi = pointer.gaussian_pointer(1.0, zgrid)
for t_b in (0.4, 0.2, 0.1):
    out = vsl.vsl_pointer_shift(phi, 1.0, 0.0, 1.0, 1.0, 1.0, profile, t_b)
    print(f"t_B = {t_b}: mean {out.field.mean():.6f}  norm defect {out.norm_defect:.3e}")

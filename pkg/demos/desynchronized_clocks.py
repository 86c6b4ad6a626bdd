"""
Clock A running fast relative to clock B, and what that does to tau.
"""
from weakclock import clock, pointer, weakval
from weakclock.grid import UniformGrid

grid = UniformGrid(-20.0, 20.0, 4096)
start = clock.make_packet(-5.0, 1.0, grid)

profiles = {
    "g = 0": clock.DesyncProfile.zero(),
    "g = 0.5": clock.DesyncProfile.constant(0.5),
    "g(u) = u": clock.DesyncProfile.named("linear", slope=1.0),
    "g(u) = 0.3 exp(-u)": clock.DesyncProfile.named("exponential", amplitude=0.3, scale=1.0),
}
for name, g in profiles.items():
    t_b = 2.0
    moved = clock.evolve_packet(start, t_b, g)
    expected = t_b + clock.desync_integral(g, t_b)
    print(f"{name:20s} advance {moved.mean() - start.mean():.6f}  expected {expected:.6f}")

# The evolved in-packets no longer match the final packets the same way,
# so the realized tau (and the weak velocity) depend on g.
zgrid = UniformGrid(-12.0, 12.0, 2048)
phi = pointer.gaussian_pointer(1.0, zgrid)
pair = weakval.build_pre_post(0.6, 0.8, *clock.packets_for_tau(0.5, grid, 1.0))
for name, g in profiles.items():
    _, rep = pointer.evolve_exact(phi, pair, g, 1.0, 0.05)
    margin = clock.weak_regime_margin(g, 0.05)
    print(f"{name:20s} tau_eff {rep.tau_effective.real:.6f}  v_w {rep.predicted_weak_velocity.real:.6f}"
          f"  g(t_B) t_B = {margin:.4f}")

"""Experiment and scan drivers behind the command line.

Each ``run_*`` function maps a validated :class:`ExperimentConfig` to a plain
results dictionary; each ``scan_*`` function returns a CSV header and rows.
Nothing here draws random numbers, so identical configs give identical output.
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np

from . import clock, oneway, pointer, vsl, weakval
from .clock import DesyncProfile
from .config import ExperimentConfig, GridSpec
from .errors import ConfigError, DomainError, PoleError
from .grid import UniformGrid


def _grid(spec: GridSpec) -> UniformGrid:
    try:
        return UniformGrid(spec.start, spec.stop, spec.n_points)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _cx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def desync_profile(cfg: ExperimentConfig) -> DesyncProfile:
    d = cfg.desync
    try:
        if d.kind == "zero":
            return DesyncProfile.zero()
        if d.kind == "constant":
            return DesyncProfile.constant(d.value)
        if d.kind == "table":
            return DesyncProfile.from_table(d.table)
        if d.kind == "named":
            return DesyncProfile.named(d.name, **d.params)
    except DomainError as exc:
        raise ConfigError(f"desync: {exc}") from exc
    raise ConfigError(f"desync.kind {d.kind!r} is not one of zero/constant/table/named")


def clock_packets(cfg: ExperimentConfig):
    """``(T_in^+, T_in^-, T_fin^+, T_fin^-)`` from a tau override or explicit centres."""
    c = cfg.clock
    grid = _grid(c.grid)
    if cfg.physics.tau is not None:
        return clock.packets_for_tau(cfg.physics.tau, grid, c.width)
    return tuple(clock.make_packet(center, c.width, grid)
                 for center in (c.in_plus, c.in_minus, c.fin_plus, c.fin_minus))


def build_pair(cfg: ExperimentConfig, n_spins: int | None = None) -> weakval.PrePostPair:
    p = cfg.physics
    return weakval.build_pre_post(p.alpha, p.beta, *clock_packets(cfg),
                                  n_spins=p.n_spins if n_spins is None else n_spins)


def _epsilon_block(alpha, beta, tau, c0) -> dict:
    try:
        emap = oneway.epsilon_from_weak(alpha, beta, tau)
    except PoleError:
        return {"pole": True}
    out = {"epsilon": emap.epsilon, "in_range": emap.in_range,
           "paper_constraint": emap.paper_constraint}
    if emap.in_range:
        fwd, bwd = oneway.directional_speeds(oneway.SynchronizationConvention(emap.epsilon, c0))
        out["c_forward"] = fwd
        out["c_backward"] = bwd
    return out


def _verdict(v, c0) -> dict:
    verdict = oneway.causality_class(v, c0)
    return {"regime": verdict.regime,
            "information_transmitted": verdict.information_transmitted,
            "note": verdict.note}


# -- experiments ------------------------------------------------------------

def run_weak_velocity(cfg: ExperimentConfig) -> dict:
    p, tol = cfg.physics, cfg.tolerances
    pair = build_pair(cfg)
    tau = clock.tau(*pair.clock_packets, threshold=tol.orthogonality)
    full = weakval.weak_velocity_full(pair, p.c0, tol.orthogonality)
    closed = weakval.weak_velocity_closed_form(p.alpha, p.beta, tau, p.c0, tol.orthogonality)
    out = {
        "tau": _cx(tau),
        "tau_is_real": clock.is_real(tau, tol.real_tau),
        "weak_velocity": _cx(full.value),
        "closed_form": _cx(closed),
        "closed_form_deviation": abs(full.value - closed),
        "post_selection_probability": full.post_selection_probability,
        "causality": _verdict(full.value, p.c0),
    }
    if clock.is_real(tau, tol.real_tau):
        out["synchronization"] = _epsilon_block(p.alpha, p.beta, tau.real, p.c0)
    return out


def run_nspin_oracle(cfg: ExperimentConfig) -> dict:
    p, tol = cfg.physics, cfg.tolerances
    rows = []
    worst = 0.0
    for n in range(1, p.n_spins + 1):
        pair = build_pair(cfg, n)
        tau = clock.tau(*pair.clock_packets, threshold=tol.orthogonality)
        brute = weakval.weak_velocity_full(pair, p.c0, tol.orthogonality).value
        closed = weakval.weak_velocity_closed_form(p.alpha, p.beta, tau, p.c0, tol.orthogonality)
        dev = abs(brute - closed)
        worst = max(worst, dev)
        rows.append({"n_spins": n, "dimension": 4 ** n, "brute_force": _cx(brute),
                     "closed_form": _cx(closed), "deviation": dev})
    return {"per_n": rows, "max_deviation": worst, "tolerance": tol.oracle,
            "passed": worst <= tol.oracle}


def _pointer_setup(cfg: ExperimentConfig):
    ps = cfg.pointer
    field = pointer.gaussian_pointer(ps.epsilon_width, _grid(ps.grid))
    return field, build_pair(cfg, 1), desync_profile(cfg)


def run_pointer(cfg: ExperimentConfig, out_dir: str | None = None) -> dict:
    p, ps = cfg.physics, cfg.pointer
    phi, pair, g = _pointer_setup(cfg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", clock.WeakRegimeWarning)
        margin = clock.warn_if_not_weak(g, ps.t_b, cfg.tolerances.weak_margin)
    exact, report = pointer.evolve_exact(phi, pair, g, p.c0, ps.t_b)
    weak = pointer.evolve_weak(phi, report.predicted_weak_velocity, ps.t_b)
    cmp = pointer.compare(exact, weak)
    if cfg.output.field and out_dir is not None:
        pointer.write_field_csv(exact, os.path.join(out_dir, cfg.output.field))
    return {
        "pointer": {
            "mean_z": report.mean_z,
            "variance": exact.variance(),
            "measured_weak_velocity": report.measured_weak_velocity,
            "predicted_weak_velocity": _cx(report.predicted_weak_velocity),
            "tau_effective": _cx(report.tau_effective),
            "post_selection_probability": report.post_selection_probability,
            "fidelity_to_weak_prediction": report.fidelity_to_weak_prediction,
            "delta_mean": cmp.delta_mean,
            "delta_variance": cmp.delta_variance,
            "scaled_displacement": p.c0 * ps.t_b / ps.epsilon_width,
        },
        "weak_regime_margin": margin,
        "weak_regime_ok": not caught,
    }


def run_clock_desync(cfg: ExperimentConfig) -> dict:
    c = cfg.clock
    g = desync_profile(cfg)
    packet = clock.make_packet(c.in_plus, c.width, _grid(c.grid))
    start = packet.mean()
    rows = []
    for t in c.t_b_schedule:
        moved = clock.evolve_packet(packet, t, g)
        expected = t + clock.desync_integral(g, t)
        advance = moved.mean() - start
        rows.append({"t_b": t, "advance": advance, "expected_advance": expected,
                     "deviation": abs(advance - expected),
                     "norm_change": abs(moved.norm2() - packet.norm2()),
                     "weak_regime_margin": clock.weak_regime_margin(g, t) if t > 0 else 0.0})
    return {"grid_spacing": packet.grid.spacing, "profile": g.as_dict(), "schedule": rows}


def run_oneway_map(cfg: ExperimentConfig) -> dict:
    p, o = cfg.physics, cfg.oneway
    try:
        conv = oneway.SynchronizationConvention(o.epsilon, p.c0)
    except DomainError as exc:
        raise ConfigError(f"oneway: {exc}") from exc
    fwd, bwd = oneway.directional_speeds(conv)
    trip = oneway.roundtrip_check(conv, o.length)
    out = {"epsilon": o.epsilon, "c_forward": fwd, "c_backward": bwd,
           "t_forward": trip.t_forward, "t_backward": trip.t_backward,
           "c_effective": trip.c_effective}
    if p.tau is not None:
        out["from_weak"] = _epsilon_block(p.alpha, p.beta, p.tau, p.c0)
        out["weak_velocity"] = weakval.weak_velocity_closed_form(p.alpha, p.beta, p.tau, p.c0)
    return out


def speed_profile(cfg: ExperimentConfig, grid: UniformGrid, base_dir: str | None) -> vsl.SpeedProfile:
    v, c0 = cfg.vsl, cfg.physics.c0
    try:
        if v.profile == "constant":
            return vsl.constant_speed(c0, grid)
        if v.profile == "tanh":
            return vsl.tanh_speed(c0, v.amplitude, v.length_scale, grid)
        if v.profile == "table":
            if v.table_path is None:
                raise ConfigError("vsl.table_path is required for a table profile")
            path = v.table_path
            if base_dir is not None and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            return vsl.read_profile_csv(path, grid)
    except (DomainError, OSError) as exc:
        raise ConfigError(f"vsl: {exc}") from exc
    raise ConfigError(f"vsl.profile {v.profile!r} is not one of constant/tanh/table")


def run_vsl(cfg: ExperimentConfig, base_dir: str | None = None) -> dict:
    p, v = cfg.physics, cfg.vsl
    grid = _grid(cfg.pointer.grid)
    profile = speed_profile(cfg, grid, base_dir)
    lam = v.lambda_const if v.lambda_const is not None else vsl.default_lambda(p.hbar0, p.c0)
    hbar = vsl.hbar_from_speed(profile, lam)
    tests = [pointer.gaussian_pointer(w, grid) for w in v.test_widths]
    dev = vsl.commutator_check(hbar, tests)
    dev_fine = vsl.commutator_check(vsl.hbar_from_speed(
        speed_profile(cfg, grid.refined(), base_dir), lam),
        [pointer.gaussian_pointer(w, grid.refined()) for w in v.test_widths])
    tau = p.tau if p.tau is not None else 1.0
    phi = pointer.gaussian_pointer(cfg.pointer.epsilon_width, grid)
    shifted = vsl.vsl_pointer_shift(phi, p.alpha, p.beta, tau, p.c0, p.hbar0, profile,
                                    v.t_b, lam)
    flat = pointer.evolve_weak(phi, weakval.weak_velocity_closed_form(p.alpha, p.beta, tau, p.c0),
                               v.t_b)
    return {
        "lambda": lam,
        "constancy_deviation": hbar.constancy_deviation(profile),
        "hbar_min": float(np.min(hbar.samples)),
        "hbar_max": float(np.max(hbar.samples)),
        "commutator_deviation": dev,
        "commutator_deviation_refined": dev_fine,
        "refinement_ratio": dev / dev_fine if dev_fine > 0 else None,
        "shift": {"tau": tau, "mean_z": shifted.field.mean(),
                  "flat_space_mean_z": flat.mean(),
                  "norm_defect": shifted.norm_defect,
                  "shift_speed_min": float(np.min(shifted.shift_speed)),
                  "shift_speed_max": float(np.max(shifted.shift_speed))},
    }


def run_causality(cfg: ExperimentConfig) -> dict:
    p = cfg.physics
    if cfg.causality.v_w is not None:
        v = cfg.causality.v_w
        source = "given"
    else:
        tau = p.tau if p.tau is not None else 1.0
        v = weakval.weak_velocity_closed_form(p.alpha, p.beta, tau, p.c0)
        source = f"closed form at tau={tau!r}"
    sign = None if p.tau is None else p.alpha * p.tau * p.beta
    return {"weak_velocity": v, "source": source, "c": p.c0,
            "alpha_tau_beta": sign, "verdict": _verdict(v, p.c0)}


def run_experiment(cfg: ExperimentConfig, out_dir: str | None = None,
                   base_dir: str | None = None) -> dict:
    kind = cfg.experiment
    if kind == "weak-velocity":
        return run_weak_velocity(cfg)
    if kind == "nspin-oracle":
        return run_nspin_oracle(cfg)
    if kind == "pointer":
        return run_pointer(cfg, out_dir)
    if kind == "clock-desync":
        return run_clock_desync(cfg)
    if kind == "oneway-map":
        return run_oneway_map(cfg)
    if kind == "vsl":
        return run_vsl(cfg, base_dir)
    return run_causality(cfg)


# -- scans ------------------------------------------------------------------

def scan_tau(cfg: ExperimentConfig):
    p, s = cfg.physics, cfg.scan
    rows = weakval.epsilon_tau_scan(p.alpha, p.beta, (s.start, s.stop), s.steps, p.c0)
    header = ("tau", "weak_velocity", "epsilon", "in_range", "paper_constraint", "pole")
    return header, [(r.tau, r.weak_velocity, r.epsilon, r.in_range, r.paper_constraint, r.pole)
                    for r in rows]


def scan_epsilon(cfg: ExperimentConfig):
    s, c0 = cfg.scan, cfg.physics.c0
    header = ("epsilon", "c_forward", "c_backward", "harmonic_mean", "c_effective")
    rows = []
    for eps in np.linspace(s.start, s.stop, s.steps) if s.steps > 1 else [s.start]:
        try:
            conv = oneway.SynchronizationConvention(float(eps), c0)
        except DomainError as exc:
            raise ConfigError(f"scan: {exc}") from exc
        fwd, bwd = oneway.directional_speeds(conv)
        trip = oneway.roundtrip_check(conv, cfg.oneway.length)
        rows.append((float(eps), fwd, bwd, 2.0 / (1.0 / fwd + 1.0 / bwd), trip.c_effective))
    return header, rows


def scan_t_b(cfg: ExperimentConfig):
    """Weak-limit convergence: deviation of ``mean_z / t_B`` from the weak velocity.

    ``ratio`` is the deviation of the previous row divided by this row's; for
    a halving schedule it approaches 4 (second order in ``c t_B / eps``).
    """
    p, ps = cfg.physics, cfg.pointer
    phi, pair, g = _pointer_setup(cfg)
    header = ("t_b", "scaled_displacement", "mean_z", "measured_velocity",
              "predicted_velocity", "velocity_deviation", "delta_mean", "ratio", "fidelity")
    rows = []
    prev = None
    for t in sorted(ps.t_b_schedule, reverse=True):
        _, rep = pointer.evolve_exact(phi, pair, g, p.c0, t)
        dev = abs(rep.measured_weak_velocity - rep.predicted_weak_velocity.real)
        ratio = prev / dev if prev is not None and dev > 0 else math.nan
        rows.append((t, p.c0 * t / ps.epsilon_width, rep.mean_z, rep.measured_weak_velocity,
                     rep.predicted_weak_velocity.real, dev, dev * t, ratio,
                     rep.fidelity_to_weak_prediction))
        prev = dev
    return header, rows


def run_scan(cfg: ExperimentConfig):
    kind = cfg.scan.kind
    if kind == "tau":
        return scan_tau(cfg)
    if kind == "epsilon":
        return scan_epsilon(cfg)
    return scan_t_b(cfg)

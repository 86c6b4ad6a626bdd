import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakclock.clock import (DesyncProfile, WeakRegimeWarning, desync_integral, evolve_packet,
                             gaussian_overlap, make_packet, overlap, packets_for_tau, tau,
                             warn_if_not_weak, weak_regime_margin)
from weakclock.errors import BoundaryError, DomainError, IllConditionedError
from weakclock.grid import UniformGrid

GRID = UniformGrid(-20.0, 20.0, 4096)


def test_make_packet_centered():
    p = make_packet(0.0, 1.0, GRID)
    assert p.mean() == pytest.approx(0.0, abs=1e-9)
    assert p.norm2() == pytest.approx(1.0, abs=1e-9)


def test_make_packet_offset():
    p = make_packet(5.0, 2.0, UniformGrid(-30.0, 30.0, 4096))
    assert p.mean() == pytest.approx(5.0, abs=1e-9)
    assert p.norm2() == pytest.approx(1.0, abs=1e-9)


def test_packet_width_is_probability_std():
    p = make_packet(1.0, 1.5, GRID)
    t = GRID.points
    prob = np.abs(p.amplitudes) ** 2 * GRID.spacing
    var = np.sum(prob * (t - 1.0) ** 2)
    assert math.sqrt(var) == pytest.approx(1.5, rel=1e-9)


def test_make_packet_coverage():
    with pytest.raises(BoundaryError):
        make_packet(15.0, 1.0, GRID)
    with pytest.raises(DomainError):
        make_packet(0.0, 0.0, GRID)


def test_desync_integral_examples():
    assert desync_integral(DesyncProfile.zero(), 2.0) == 0.0
    assert desync_integral(DesyncProfile.constant(0.5), 2.0) == 1.0
    # closed form int_0^1 u du = 1/2
    ramp = DesyncProfile.from_table([(0.0, 0.0), (1.0, 1.0)])
    assert desync_integral(ramp, 1.0) == pytest.approx(0.5, abs=1e-12)
    assert desync_integral(DesyncProfile.named("linear", slope=1.0), 1.0) == pytest.approx(0.5, abs=1e-12)


def test_desync_integral_exponential_closed_form():
    g = DesyncProfile.named("exponential", amplitude=0.3, scale=2.0)
    assert desync_integral(g, 1.5) == pytest.approx(0.3 * 2.0 * (1 - math.exp(-0.75)), abs=1e-12)


def test_desync_profile_rejects_negative():
    with pytest.raises(DomainError):
        DesyncProfile.from_table([(0.0, 1.0), (1.0, -0.1)])
    with pytest.raises(DomainError):
        DesyncProfile.named("linear", slope=-1.0)
    with pytest.raises(DomainError):
        DesyncProfile("constant", value=-0.5)


def test_weak_regime_margin_examples():
    assert weak_regime_margin(DesyncProfile.zero(), 3.0) == 0.0
    assert weak_regime_margin(DesyncProfile.constant(0.5), 0.01) == pytest.approx(0.005, abs=1e-15)
    assert weak_regime_margin(DesyncProfile.named("linear"), 0.2) == pytest.approx(0.04, abs=1e-15)


def test_weak_regime_warning():
    with pytest.warns(WeakRegimeWarning):
        warn_if_not_weak(DesyncProfile.constant(0.5), 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        warn_if_not_weak(DesyncProfile.constant(0.5), 0.01)


def test_evolve_packet_examples():
    p = make_packet(0.0, 1.0, GRID)
    q = evolve_packet(p, 3.0, DesyncProfile.zero())
    assert abs(q.mean() - 3.0) <= GRID.spacing
    r = evolve_packet(p, 2.0, DesyncProfile.constant(0.5))
    assert abs(r.mean() - 3.0) <= GRID.spacing
    assert r.center == 3.0


def test_evolve_packet_boundary():
    p = make_packet(0.0, 1.0, GRID)
    with pytest.raises(BoundaryError):
        evolve_packet(p, 18.0, DesyncProfile.zero())


def test_overlap_examples():
    p = make_packet(0.0, 1.0, GRID)
    assert abs(overlap(p, p)) == pytest.approx(1.0, abs=1e-9)
    for delta in (0.5, 1.0, 2.0, 4.0):
        q = make_packet(delta, 1.0, GRID)
        # independent oracle: direct Gaussian integral formula
        assert abs(overlap(p, q)) == pytest.approx(math.exp(-delta ** 2 / 8.0), abs=1e-6)
    far = make_packet(12.0, 1.0, UniformGrid(-20.0, 30.0, 4096))
    near = make_packet(0.0, 1.0, far.grid)
    assert abs(overlap(near, far)) < 1e-7


def test_gaussian_overlap_formula():
    assert gaussian_overlap(2.0, 0.5) == pytest.approx(math.exp(-4.0 / 2.0))


def test_tau_examples():
    p = make_packet(0.0, 1.0, GRID)
    assert tau(p, p, p, p) == pytest.approx(1.0, abs=1e-9)
    a, b = make_packet(1.0, 1.0, GRID), make_packet(-1.0, 1.0, GRID)
    assert tau(p, p, a, b) == pytest.approx(1.0, abs=1e-9)
    fin_p, fin_m = make_packet(1.0, 1.0, GRID), make_packet(2.0, 1.0, GRID)
    assert tau(p, p, fin_p, fin_m) == pytest.approx(math.exp(-3.0 / 8.0), abs=1e-6)


def test_tau_ill_conditioned():
    g = UniformGrid(-20.0, 40.0, 4096)
    p, far = make_packet(0.0, 1.0, g), make_packet(14.0, 1.0, g)
    with pytest.raises(IllConditionedError) as info:
        tau(p, p, far, p)
    assert info.value.quantity < 1e-8


@pytest.mark.parametrize("target", [0.1, 0.5, 1.0, 2.0, 0.3 - 0.4j])
def test_packets_for_tau(target):
    assert tau(*packets_for_tau(target, GRID, 1.0)) == pytest.approx(target, abs=1e-10)


@pytest.mark.parametrize("g", [DesyncProfile.zero(), DesyncProfile.constant(0.5),
                               DesyncProfile.named("linear", slope=1.0),
                               DesyncProfile.from_table([(0.0, 0.2), (1.0, 0.6), (3.0, 0.0)])])
@pytest.mark.parametrize("t_b", [0.3, 1.0, 2.0])
def test_tick_rate_law(g, t_b):
    p = make_packet(-5.0, 1.0, GRID)
    q = evolve_packet(p, t_b, g)
    assert abs(q.mean() - p.mean() - (t_b + desync_integral(g, t_b))) <= GRID.spacing


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 6.0), st.floats(0.0, 1.0))
def test_evolve_preserves_norm(duration, rate):
    p = make_packet(-3.0, 1.0, GRID)
    q = evolve_packet(p, duration, DesyncProfile.constant(rate))
    assert q.norm2() == pytest.approx(p.norm2(), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-4.0, 4.0), st.floats(-4.0, 4.0))
def test_translations_commute(s1, s2):
    p = make_packet(0.0, 1.0, GRID)
    z = DesyncProfile.zero()
    a = evolve_packet(evolve_packet(p, abs(s1), z), abs(s2), z)
    b = evolve_packet(evolve_packet(p, abs(s2), z), abs(s1), z)
    np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3.0, 3.0), st.floats(0.5, 1.5))
def test_overlap_cauchy_schwarz(center, width):
    p = make_packet(0.0, 1.0, GRID)
    q = make_packet(center, width, GRID)
    assert abs(overlap(p, q)) <= 1.0 + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 2 * math.pi))
def test_tau_global_phase_invariance(theta):
    packets = packets_for_tau(0.4 + 0.2j, GRID, 1.0)
    base = tau(*packets)
    rotated = tau(*(p.with_phase(theta) for p in packets))
    assert abs(rotated - base) <= 1e-12

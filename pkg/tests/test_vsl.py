import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakclock.errors import DomainError
from weakclock.grid import UniformGrid
from weakclock.pointer import PointerField, evolve_weak, gaussian_pointer
from weakclock.vsl import (SpeedProfile, commutator_check, constant_hbar, constant_speed,
                           default_lambda, deformed_momentum_apply, derivative, hbar_from_speed,
                           read_profile_csv, shift_speed, table_speed, tanh_speed,
                           vsl_pointer_shift)
from weakclock.weakval import weak_velocity_closed_form

Z = UniformGrid(-12.0, 12.0, 2048)


def _field(grid, values, eps=1.0):
    return PointerField(grid, values, eps)


def test_hbar_constant_reduction():
    hb = hbar_from_speed(constant_speed(2.0, Z), default_lambda(0.7, 2.0))
    np.testing.assert_allclose(hb.samples, 0.7, rtol=0, atol=1e-15)


def test_hbar_double_speed():
    c = np.full(Z.n_points, 1.5)
    c[100] = 3.0
    hb = hbar_from_speed(SpeedProfile("table", Z, c), default_lambda(1.0, 1.5))
    assert hb.samples[100] == pytest.approx(0.25, abs=1e-15)


def test_hbar_table_values():
    grid = UniformGrid(0.0, 8.0, 9)
    lam = 2.0
    hb = hbar_from_speed(table_speed([0.0, 4.0, 8.0], [1.0, 1.1, 0.9], grid), lam)
    np.testing.assert_allclose(hb.samples[[0, 4, 8]], [lam, lam / 1.21, lam / 0.81], rtol=1e-15)


def test_nonpositive_speed_rejected():
    with pytest.raises(DomainError):
        SpeedProfile("table", Z, np.zeros(Z.n_points))
    with pytest.raises(DomainError):
        table_speed([0.0, 1.0], [1.0, -1.0], Z)
    with pytest.raises(DomainError):
        hbar_from_speed(constant_speed(1.0, Z), 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 10.0), st.floats(-0.9, 0.9), st.floats(0.1, 5.0), st.floats(0.1, 10.0))
def test_constancy_law(c0, amp, length, hbar0):
    prof = tanh_speed(c0, amp, length, Z)
    hb = hbar_from_speed(prof, default_lambda(hbar0, c0))
    assert np.all(hb.samples > 0)
    assert hb.constancy_deviation(prof) <= 1e-12 * max(1.0, math.sqrt(hb.lambda_const))


def test_read_profile_csv(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("z,c\n-12,1.0\n0,1.2\n12,0.8\n")
    prof = read_profile_csv(path, Z)
    assert prof.samples[0] == 1.0 and prof.samples[-1] == 0.8
    assert np.interp(0.0, Z.points, prof.samples) == pytest.approx(1.2, abs=1e-3)
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n0,1\n1,1\n")
    with pytest.raises(DomainError):
        read_profile_csv(bad, Z)


def test_derivative_exact_on_quartics():
    grid = UniformGrid(-1.0, 2.0, 31)
    z = grid.points
    np.testing.assert_allclose(derivative(z ** 4 - 3 * z ** 2 + z, grid.spacing),
                               4 * z ** 3 - 6 * z + 1, atol=1e-11)


def test_plane_wave_eigenrelation():
    k, hbar0 = 3.0, 0.8
    n = int(24.0 / (1e-2 / k)) + 1
    grid = UniformGrid(-12.0, 12.0, n)
    psi = _field(grid, np.exp(1j * k * grid.points))
    out = deformed_momentum_apply(psi, constant_hbar(hbar0, grid)).amplitudes
    rel = np.abs(out - hbar0 * k * psi.amplitudes)[2:-2] / np.abs(psi.amplitudes[2:-2])
    assert rel.max() <= 1e-6


def test_gaussian_derivative_fourth_order():
    errs = []
    for n in (1025, 2049):
        grid = UniformGrid(-12.0, 12.0, n)
        z = grid.points
        g = np.exp(-z ** 2 / 2)
        out = deformed_momentum_apply(_field(grid, g), constant_hbar(1.0, grid)).amplitudes
        errs.append(np.max(np.abs(out - (-1j) * (-z * g))))
    assert errs[0] / errs[1] == pytest.approx(16.0, rel=0.2)


def _test_functions(grid):
    z = grid.points
    return [_field(grid, np.exp(-z ** 2 / 2)),
            _field(grid, np.exp(-(z - 1.0) ** 2 / 1.5)),
            _field(grid, z * np.exp(-z ** 2 / 2)),
            _field(grid, np.exp(-z ** 2 / 2 + 2j * z)),
            _field(grid, (1 + z ** 2) * np.exp(-z ** 2 / 1.8))]


def test_commutator_constant_hbar():
    grid = UniformGrid(-20.0, 20.0, 4096)
    assert commutator_check(constant_hbar(1.0, grid), _test_functions(grid)[:1]) <= 1e-8


def test_commutator_zero_function():
    assert commutator_check(constant_hbar(1.0, Z), [_field(Z, np.zeros(Z.n_points))]) == 0.0


def test_commutator_fourth_order_varying_hbar():
    devs = []
    for n in (2048, 4095):
        grid = UniformGrid(-20.0, 20.0, n)
        hb = hbar_from_speed(tanh_speed(1.0, 0.3, 2.0, grid), 1.0)
        devs.append(commutator_check(hb, _test_functions(grid)))
    assert devs[1] <= 1e-7
    assert devs[0] / devs[1] == pytest.approx(16.0, rel=0.2)


def test_vsl_constant_reduction():
    p = gaussian_pointer(1.0, Z)
    shifted = vsl_pointer_shift(p, 0.6, 0.8, 0.5, 1.0, 1.0, constant_speed(1.0, Z), 0.7)
    weak = evolve_weak(p, weak_velocity_closed_form(0.6, 0.8, 0.5, 1.0), 0.7)
    np.testing.assert_allclose(shifted.field.amplitudes, weak.amplitudes, rtol=0, atol=1e-12)
    assert abs(shifted.norm_defect) <= 1e-12


def test_vsl_beta_zero_shift_speed():
    c0, hbar0, lam = 1.3, 0.9, 2.0
    prof = tanh_speed(c0, 0.1, 1.5, Z)
    s = shift_speed(1.0, 0.0, 0.4, c0, hbar0, hbar_from_speed(prof, lam))
    np.testing.assert_allclose(s, c0 * prof.samples * math.sqrt(hbar0 / lam), rtol=1e-14)


def test_vsl_field_matches_analytic_remap():
    p = gaussian_pointer(1.0, Z)
    prof = tanh_speed(1.0, 0.1, 1.0, Z)
    t_b = 0.5
    out = vsl_pointer_shift(p, 1.0, 0.0, 1.0, 1.0, 1.0, prof, t_b)
    z = Z.points
    ref = (math.pi) ** -0.25 * np.exp(-(z - out.shift_speed * t_b) ** 2 / 2)
    ref_norm = np.sum(np.abs(ref) ** 2) * Z.spacing
    np.testing.assert_allclose(out.field.amplitudes, ref / math.sqrt(ref_norm), atol=1e-10)
    assert out.norm_defect == pytest.approx(ref_norm - 1.0, abs=1e-10)


def test_vsl_symmetric_no_shift():
    p = gaussian_pointer(1.0, Z)
    out = vsl_pointer_shift(p, 1 / math.sqrt(2), 1 / math.sqrt(2), 1.0, 1.0, 1.0,
                            tanh_speed(1.0, 0.1, 1.0, Z), 0.5)
    assert np.all(out.shift_speed == 0)
    np.testing.assert_allclose(out.field.amplitudes, p.amplitudes, atol=1e-12)


def test_norm_defect_halves_with_t_b():
    p = gaussian_pointer(1.0, Z)
    prof = tanh_speed(1.0, 0.3, 1.0, Z)
    d = [abs(vsl_pointer_shift(p, 1.0, 0.0, 1.0, 1.0, 1.0, prof, t).norm_defect)
         for t in (0.04, 0.02, 0.01)]
    assert d[0] / d[1] == pytest.approx(2.0, rel=0.05)
    assert d[1] / d[2] == pytest.approx(2.0, rel=0.05)

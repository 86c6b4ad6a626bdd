"""Gaussian test-particle pointer along z.

``H_S = p_z v_z`` leaves x and y untouched, so the pointer is simulated on
the z axis only; the spectator factors of the 3-D Gaussian cancel from every
reported quantity. The global clock phase ``kappa`` is set to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clock as _clock
from . import grid as _grid
from .clock import DesyncProfile
from ._io import atomic_write_text, csv_text
from .errors import BoundaryError, DomainError, IllConditionedError
from .grid import UniformGrid
from .weakval import PrePostPair, weak_velocity_closed_form

COVERAGE_WIDTHS = 8.0


@dataclass(frozen=True, eq=False)
class PointerField:
    """Complex pointer wavefunction sampled on a uniform z grid.

    ``epsilon_width`` is the Gaussian dispersion: ``Phi ~ exp(-z**2 / (2 eps**2))``.
    """

    grid: UniformGrid
    amplitudes: np.ndarray
    epsilon_width: float

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.n_points,):
            raise DomainError(f"{amps.shape} samples on a {self.grid.n_points}-point grid")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def replace(self, amplitudes) -> PointerField:
        return PointerField(self.grid, amplitudes, self.epsilon_width)

    def norm2(self) -> float:
        return _grid.quad_norm2(self.amplitudes, self.grid.spacing)

    def mean(self) -> float:
        return _grid.moments(self.amplitudes, self.grid)[1]

    def variance(self) -> float:
        return _grid.moments(self.amplitudes, self.grid)[2]

    def normalized(self) -> PointerField:
        return self.replace(self.amplitudes / math.sqrt(self.norm2()))


@dataclass(frozen=True)
class PointerReport:
    """Outcome of a conditional pointer evolution.

    ``predicted_weak_velocity`` uses the time-state ratio ``tau_effective``
    of the evolved clock packets, i.e. the tau actually realized at ``t_B``.
    """

    mean_z: float
    measured_weak_velocity: float
    post_selection_probability: float
    fidelity_to_weak_prediction: float
    predicted_weak_velocity: complex
    tau_effective: complex
    t_b: float


@dataclass(frozen=True)
class Comparison:
    fidelity: float
    delta_mean: float
    delta_variance: float


def gaussian_pointer(epsilon_width: float, grid: UniformGrid, reach: float = 0.0) -> PointerField:
    """Normalized 1-D Gaussian ``(eps^2 pi)^(-1/4) exp(-z^2 / (2 eps^2))``.

    ``reach`` is the largest displacement the caller intends to apply; the
    grid must cover ``+-(8 eps + reach)``.
    """
    if not epsilon_width > 0:
        raise DomainError(f"pointer width must be positive, got {epsilon_width}")
    span = COVERAGE_WIDTHS * epsilon_width + abs(reach)
    if not grid.covers(-span, span):
        raise BoundaryError(
            f"grid [{grid.start}, {grid.stop}] does not cover +-{span:.6g}", span)
    z = grid.points
    amps = np.exp(-z ** 2 / (2.0 * epsilon_width ** 2)).astype(complex)
    amps /= math.sqrt(_grid.quad_norm2(amps, grid.spacing))
    _grid.check_decay(amps, grid)
    return PointerField(grid, amps, epsilon_width)


def branch_fields(pointer: PointerField, c: float, t_b: float) -> tuple[np.ndarray, np.ndarray]:
    """Pointer conditioned on spin up / spin down: translated by ``+c t_B`` / ``-c t_B``."""
    d = c * t_b
    return (_grid.translate(pointer.amplitudes, d, pointer.grid),
            _grid.translate(pointer.amplitudes, -d, pointer.grid))


def branch_amplitudes(pair: PrePostPair, g: DesyncProfile, t_b: float) -> tuple[complex, complex, complex]:
    """Post-selection amplitudes of the up and down branches after ``t_B``.

    Clock A packets are advanced by ``t_B + int g``; returns ``(a, b, tau_eff)``
    where ``a + b`` is ``<post|U|pre>`` for the spin/clock part alone.
    """
    if pair.n_spins != 1 or pair.clock_packets is None or pair.alpha is None:
        raise DomainError("pointer evolution needs a single-spin pair built from clock packets")
    t_in_p, t_in_m, t_fin_p, t_fin_m = pair.clock_packets
    ev_p = _clock.evolve_packet(t_in_p, t_b, g)
    ev_m = _clock.evolve_packet(t_in_m, t_b, g)
    pre_norm = math.sqrt(t_in_p.norm2() + t_in_m.norm2())
    post_norm = math.sqrt(pair.alpha ** 2 * t_fin_p.norm2() + pair.beta ** 2 * t_fin_m.norm2())
    scale = 1.0 / (pre_norm * post_norm)
    over_p = _clock.overlap(t_fin_p, ev_p)
    over_m = _clock.overlap(t_fin_m, ev_m)
    a = pair.alpha * over_p * scale
    b = pair.beta * over_m * scale
    if abs(over_p) < _clock.ORTHOGONALITY_THRESHOLD:
        raise IllConditionedError(
            f"|<T_fin^+|U T_in^+>| = {abs(over_p):.3g} below threshold", abs(over_p))
    return a, b, over_m / over_p


def evolve_exact(pointer: PointerField, pair: PrePostPair, g: DesyncProfile, c: float,
                 t_b: float) -> tuple[PointerField, PointerReport]:
    """Exact conditional pointer after time ``t_B`` of clock B.

    The spin-up branch moves the pointer by ``+c t_B``, the spin-down branch by
    ``-c t_B``; projecting on the post-selected state leaves
    ``a Phi(z - c t_B) + b Phi(z + c t_B)``. The returned field is normalized,
    its squared norm before normalization is the post-selection probability.
    """
    if not t_b > 0:
        raise DomainError(f"t_B must be positive, got {t_b}")
    a, b, tau_eff = branch_amplitudes(pair, g, t_b)
    up, down = branch_fields(pointer, c, t_b)
    raw = pointer.replace(a * up + b * down)
    prob = raw.norm2() / pointer.norm2()
    if math.sqrt(prob) < _clock.ORTHOGONALITY_THRESHOLD:
        raise IllConditionedError(f"post-selection amplitude {math.sqrt(prob):.3g} vanishes",
                                  math.sqrt(prob))
    field = raw.normalized()
    v_pred = weak_velocity_closed_form(pair.alpha, pair.beta, tau_eff, c)
    weak = evolve_weak(pointer.normalized(), v_pred, t_b)
    fid = compare(field, weak).fidelity
    mean = field.mean()
    report = PointerReport(mean, mean / t_b, prob, fid, complex(v_pred), complex(tau_eff), t_b)
    return field, report


def evolve_weak(pointer: PointerField, v_w, t_b: float,
                g: DesyncProfile | None = None) -> PointerField:
    """First-order prediction: rigid shift by ``Re(v_w) t_B``.

    The imaginary part of ``v_w`` is not converted into a displacement. When
    ``g`` is given, a :class:`~weakclock.clock.WeakRegimeWarning` is emitted
    if ``g(t_B) t_B`` is not small.
    """
    if g is not None and t_b > 0:
        _clock.warn_if_not_weak(g, t_b)
    shift = complex(v_w).real * t_b
    return pointer.replace(_grid.translate(pointer.amplitudes, shift, pointer.grid))


def compare(exact: PointerField, weak: PointerField) -> Comparison:
    """Fidelity ``|<weak|exact>|^2`` of normalized fields and moment differences."""
    _grid.require_same_grid(exact.grid, weak.grid)
    h = exact.grid.spacing
    ov = _grid.quad_inner(weak.amplitudes, exact.amplitudes, h)
    fid = abs(ov) ** 2 / (exact.norm2() * weak.norm2())
    _, m_e, v_e = _grid.moments(exact.amplitudes, exact.grid)
    _, m_w, v_w = _grid.moments(weak.amplitudes, weak.grid)
    return Comparison(fid, m_e - m_w, v_e - v_w)


# -- field dump -------------------------------------------------------------

FIELD_COLUMNS = ("z", "re", "im", "prob_density")


def write_field_csv(field: PointerField, path) -> None:
    """Write ``z, re, im, prob_density`` rows with 17 significant digits (atomic)."""
    amps = field.amplitudes
    rows = zip(field.grid.points, amps.real, amps.imag, np.abs(amps) ** 2)
    atomic_write_text(path, csv_text(FIELD_COLUMNS, rows))


def read_field_csv(path, epsilon_width: float = 1.0) -> PointerField:
    """Inverse of :func:`write_field_csv` (the grid is rebuilt from the z column)."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    z = np.atleast_1d(data["z"])
    grid = UniformGrid(float(z[0]), float(z[-1]), z.size)
    return PointerField(grid, data["re"] + 1j * data["im"], epsilon_width)

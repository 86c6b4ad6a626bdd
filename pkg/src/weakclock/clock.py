"""Quantum-clock time states as Gaussian wavepackets on a time grid.

Clock A runs at rate ``1 + g(t_B)`` relative to clock B, so over an interval
``t_B`` of clock B its packets are translated by ``t_B + int_0^t_B g(u) du``.
Clock B itself and the clock interaction only contribute a global phase and
are not simulated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from . import grid as _grid
from .errors import BoundaryError, DomainError, IllConditionedError
from .grid import UniformGrid

#: Magnitude below which an overlap is treated as orthogonal.
ORTHOGONALITY_THRESHOLD = 1e-8
#: Imaginary part below which tau is reported as real.
REAL_TOL = 1e-10
#: ``g(t_B) * t_B`` above which the first-order (weak) treatment is flagged.
WEAK_MARGIN_LIMIT = 0.01
#: Packet centres must lie at least this many widths away from the grid ends.
COVERAGE_WIDTHS = 8.0


class WeakRegimeWarning(UserWarning):
    """The desynchronization is too strong for the first-order expansion."""


@dataclass(frozen=True, eq=False)
class ClockPacket:
    """Grid-sampled clock wavepacket.

    ``width`` is the standard deviation of ``|psi|**2``; ``center`` is the
    nominal centre, tracked exactly through translations.
    """

    grid: UniformGrid
    amplitudes: np.ndarray
    center: float
    width: float

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.n_points,):
            raise DomainError(f"{amps.shape} samples on a {self.grid.n_points}-point grid")
        if not self.width > 0:
            raise DomainError(f"packet width must be positive, got {self.width}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm2(self) -> float:
        return _grid.quad_norm2(self.amplitudes, self.grid.spacing)

    def mean(self) -> float:
        """Expectation value of the time observable."""
        return _grid.moments(self.amplitudes, self.grid)[1]

    def with_phase(self, phase: float) -> ClockPacket:
        """Multiply by ``exp(1j * phase)``."""
        return ClockPacket(self.grid, self.amplitudes * np.exp(1j * phase),
                           self.center, self.width)


def make_packet(center: float, width: float, grid: UniformGrid) -> ClockPacket:
    """Normalized Gaussian packet ``~ exp(-(t - center)**2 / (4 width**2))``."""
    if not width > 0:
        raise DomainError(f"packet width must be positive, got {width}")
    reach = COVERAGE_WIDTHS * width
    if not grid.covers(center - reach, center + reach):
        raise BoundaryError(
            f"grid [{grid.start}, {grid.stop}] does not cover {center} +- {reach}", reach)
    t = grid.points
    amps = np.exp(-((t - center) ** 2) / (4.0 * width ** 2)).astype(complex)
    amps /= math.sqrt(_grid.quad_norm2(amps, grid.spacing))
    _grid.check_decay(amps, grid)
    return ClockPacket(grid, amps, center, width)


# -- desynchronization ------------------------------------------------------

def _linear(u, slope=1.0):
    return slope * u


def _exponential(u, amplitude=1.0, scale=1.0):
    return amplitude * np.exp(-u / scale)


#: Named analytic profiles; every parameter must be non-negative.
NAMED_PROFILES: dict[str, Callable] = {
    "linear": _linear,
    "exponential": _exponential,
}


@dataclass(frozen=True)
class DesyncProfile:
    """Non-negative rate excess ``g(u)`` of clock A over clock B.

    Parameters
    ----------
    kind : {"zero", "constant", "table", "named"}
    value : float
        Level of a ``"constant"`` profile.
    table : tuple of (u, g) pairs
        Knots of a ``"table"`` profile, linearly interpolated and held
        constant beyond the last knot.
    name, params :
        Key into :data:`NAMED_PROFILES` and its keyword arguments.
    """

    kind: str = "zero"
    value: float = 0.0
    table: tuple = ()
    name: str | None = None
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.kind == "zero":
            return
        if self.kind == "constant":
            if not self.value > 0:
                raise DomainError("constant profile needs value > 0 (use kind='zero')")
        elif self.kind == "table":
            knots = tuple((float(u), float(gv)) for u, gv in self.table)
            if len(knots) < 2:
                raise DomainError("table profile needs at least two knots")
            us = [u for u, _ in knots]
            if us[0] != 0.0 or any(b <= a for a, b in zip(us, us[1:])):
                raise DomainError("table knots must start at u=0 and increase strictly")
            if any(gv < 0 for _, gv in knots) or all(gv == 0 for _, gv in knots):
                raise DomainError("table values must be >= 0 and not all zero")
            object.__setattr__(self, "table", knots)
        elif self.kind == "named":
            if self.name not in NAMED_PROFILES:
                raise DomainError(f"unknown named profile {self.name!r}; "
                                  f"choose from {sorted(NAMED_PROFILES)}")
            if any(v < 0 for v in self.params.values()):
                raise DomainError("named profile parameters must be >= 0")
        else:
            raise DomainError(f"unknown desync profile kind {self.kind!r}")

    @classmethod
    def zero(cls) -> DesyncProfile:
        return cls("zero")

    @classmethod
    def constant(cls, value: float) -> DesyncProfile:
        return cls("constant", value=value) if value else cls("zero")

    @classmethod
    def from_table(cls, knots) -> DesyncProfile:
        return cls("table", table=tuple(knots))

    @classmethod
    def named(cls, name: str, **params) -> DesyncProfile:
        return cls("named", name=name, params=params)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == "zero":
            out = np.zeros_like(u)
        elif self.kind == "constant":
            out = np.full_like(u, self.value)
        elif self.kind == "table":
            us, gs = zip(*self.table)
            out = np.interp(u, us, gs)
        else:
            out = np.asarray(NAMED_PROFILES[self.name](u, **self.params), dtype=float)
        return float(out) if out.ndim == 0 else out

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "constant":
            out["value"] = self.value
        elif self.kind == "table":
            out["table"] = [list(k) for k in self.table]
        elif self.kind == "named":
            out["name"] = self.name
            out["params"] = dict(self.params)
        return out


def desync_integral(g: DesyncProfile, t_b: float) -> float:
    """``int_0^t_b g(u) du``; clock A advances by ``t_b`` plus this amount."""
    if t_b < 0:
        raise DomainError(f"t_B must be >= 0, got {t_b}")
    if g.kind == "zero" or t_b == 0:
        return 0.0
    if g.kind == "constant":
        return g.value * t_b
    points = None
    if g.kind == "table":
        points = [u for u, _ in g.table if 0 < u < t_b] or None
    value, _ = integrate.quad(g, 0.0, t_b, epsabs=1e-10 * t_b, epsrel=1e-12,
                              points=points, limit=200)
    return float(value)


def weak_regime_margin(g: DesyncProfile, t_b: float) -> float:
    """``g(t_B) * t_B``; the weak treatment needs this to be small."""
    if not t_b > 0:
        raise DomainError(f"t_B must be > 0, got {t_b}")
    return float(g(t_b)) * t_b


def warn_if_not_weak(g: DesyncProfile, t_b: float, limit: float = WEAK_MARGIN_LIMIT) -> float:
    margin = weak_regime_margin(g, t_b)
    if margin > limit:
        warnings.warn(f"g(t_B)*t_B = {margin:.3g} exceeds {limit}; first-order "
                      "treatment of the clock desynchronization is unreliable",
                      WeakRegimeWarning, stacklevel=3)
    return margin


def evolve_packet(p: ClockPacket, duration: float, g: DesyncProfile) -> ClockPacket:
    """Advance clock A by ``duration`` ticks of clock B.

    The packet is translated by ``duration + desync_integral(g, duration)``
    with an exact spectral shift.
    """
    shift = duration + desync_integral(g, duration)
    amps = _grid.translate(p.amplitudes, shift, p.grid)
    return ClockPacket(p.grid, amps, p.center + shift, p.width)


def overlap(a: ClockPacket, b: ClockPacket) -> complex:
    """``<a|b>`` by grid quadrature."""
    _grid.require_same_grid(a.grid, b.grid)
    return _grid.quad_inner(a.amplitudes, b.amplitudes, a.grid.spacing)


def gaussian_overlap(separation: float, width: float) -> float:
    """Analytic overlap magnitude of two equal-width normalized Gaussian packets."""
    return math.exp(-separation ** 2 / (8.0 * width ** 2))


def tau(t_in_plus: ClockPacket, t_in_minus: ClockPacket,
        t_fin_plus: ClockPacket, t_fin_minus: ClockPacket,
        threshold: float = ORTHOGONALITY_THRESHOLD) -> complex:
    """Ratio ``<T_fin^-|T_in^-> / <T_fin^+|T_in^+>`` of branch time amplitudes."""
    plus = overlap(t_fin_plus, t_in_plus)
    minus = overlap(t_fin_minus, t_in_minus)
    if abs(plus) < threshold:
        raise IllConditionedError(
            f"|<T_fin^+|T_in^+>| = {abs(plus):.3g} below threshold {threshold:g}", abs(plus))
    return minus / plus


def is_real(value: complex, tol: float = REAL_TOL) -> bool:
    return abs(complex(value).imag) <= tol


def separation_for_overlap(magnitude: float, width: float) -> float:
    """Centre separation giving an overlap of ``magnitude`` (inverse of :func:`gaussian_overlap`)."""
    if not 0 < magnitude <= 1:
        raise DomainError(f"overlap magnitude must be in (0, 1], got {magnitude}")
    return width * math.sqrt(8.0 * math.log(1.0 / magnitude))


def packets_for_tau(tau_value: complex, grid: UniformGrid, width: float,
                    center: float = 0.0) -> tuple[ClockPacket, ClockPacket, ClockPacket, ClockPacket]:
    """Build ``(T_in^+, T_in^-, T_fin^+, T_fin^-)`` realizing a prescribed tau.

    Both in-packets sit at ``center``. The branch with the larger overlap keeps
    ``T_fin = T_in``; the other final packet is displaced so that the overlap
    magnitude ratio equals ``|tau|``, and ``T_fin^-`` carries the phase of tau.
    """
    tau_value = complex(tau_value)
    mag = abs(tau_value)
    if mag == 0:
        raise DomainError("tau = 0 needs orthogonal minus-branch packets")
    plus_mag, minus_mag = (1.0, mag) if mag <= 1 else (1.0 / mag, 1.0)
    t_in = make_packet(center, width, grid)
    t_fin_plus = make_packet(center + separation_for_overlap(plus_mag, width), width, grid)
    t_fin_minus = make_packet(center + separation_for_overlap(minus_mag, width), width, grid)
    # <e^{i phi} f | i> = e^{-i phi} <f|i>
    t_fin_minus = t_fin_minus.with_phase(-math.atan2(tau_value.imag, tau_value.real))
    return t_in, t_in, t_fin_plus, t_fin_minus

"""Position-dependent speed of light.

A speed profile ``c(z)`` induces ``hbar(z) = Lambda / c(z)**2`` so that
``sqrt(hbar) c`` stays constant; momentum becomes the symmetric deformed
operator ``Pi = sqrt(hbar) (-i d/dz) sqrt(hbar)`` with ``[z, Pi] = i hbar(z)``.

``Lambda`` defaults to ``hbar0 * c0**2`` so that a constant profile gives back
``hbar0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import grid as _grid
from .errors import BoundaryError, DomainError
from .grid import UniformGrid
from .pointer import PointerField
from .weakval import weak_velocity_closed_form

CONSTANCY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpeedProfile:
    """Speed of light sampled on a z grid.

    ``kind`` is ``"constant"``, ``"table"`` or ``"tanh"``; ``params`` records
    how the samples were produced.
    """

    kind: str
    grid: UniformGrid
    samples: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.shape != (self.grid.n_points,):
            raise DomainError(f"{s.shape} speed samples on a {self.grid.n_points}-point grid")
        if not np.all(s > 0):
            raise DomainError(f"speed must be positive everywhere (min {s.min():.3g})")
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)


def constant_speed(c0: float, grid: UniformGrid) -> SpeedProfile:
    return SpeedProfile("constant", grid, np.full(grid.n_points, float(c0)), {"c0": c0})


def tanh_speed(c0: float, amplitude: float, length: float, grid: UniformGrid) -> SpeedProfile:
    """``c(z) = c0 (1 + amplitude tanh(z / length))``."""
    if not length > 0:
        raise DomainError(f"length scale must be positive, got {length}")
    if abs(amplitude) >= 1:
        raise DomainError("|amplitude| >= 1 makes the speed vanish somewhere")
    c = c0 * (1.0 + amplitude * np.tanh(grid.points / length))
    return SpeedProfile("tanh", grid, c, {"c0": c0, "amplitude": amplitude, "length": length})


def table_speed(z_knots, c_knots, grid: UniformGrid) -> SpeedProfile:
    """Piecewise-linear profile through ``(z, c)`` knots, held constant outside them."""
    z_knots = np.asarray(z_knots, dtype=float)
    c_knots = np.asarray(c_knots, dtype=float)
    if z_knots.shape != c_knots.shape or z_knots.size < 1:
        raise DomainError("z and c knot arrays must be non-empty and of equal length")
    if np.any(np.diff(z_knots) <= 0):
        raise DomainError("z knots must increase strictly")
    if np.any(c_knots <= 0):
        raise DomainError("tabulated speeds must be positive")
    samples = np.interp(grid.points, z_knots, c_knots)
    return SpeedProfile("table", grid, samples, {"knots": len(z_knots)})


def read_profile_csv(path, grid: UniformGrid) -> SpeedProfile:
    """Load a ``z, c`` table (header row required)."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    names = data.dtype.names
    if names is None or tuple(n.strip() for n in names) != ("z", "c"):
        raise DomainError(f"profile file {path} must have columns 'z, c', got {names}")
    return table_speed(np.atleast_1d(data[names[0]]), np.atleast_1d(data[names[1]]), grid)


@dataclass(frozen=True, eq=False)
class HbarProfile:
    lambda_const: float
    grid: UniformGrid
    samples: np.ndarray

    def constancy_deviation(self, speed: SpeedProfile) -> float:
        """``max |sqrt(hbar) c - sqrt(Lambda)|`` over the grid."""
        return float(np.max(np.abs(np.sqrt(self.samples) * speed.samples
                                    - math.sqrt(self.lambda_const))))


def default_lambda(hbar0: float, c0: float) -> float:
    return hbar0 * c0 ** 2


def hbar_from_speed(profile: SpeedProfile, lambda_const: float) -> HbarProfile:
    """Pointwise ``hbar(z) = Lambda / c(z)**2``."""
    if not lambda_const > 0:
        raise DomainError(f"Lambda must be positive, got {lambda_const}")
    if not np.all(profile.samples > 0):
        raise DomainError("speed samples must be positive")
    hb = lambda_const / profile.samples ** 2
    hb.flags.writeable = False
    return HbarProfile(float(lambda_const), profile.grid, hb)


def constant_hbar(hbar0: float, grid: UniformGrid) -> HbarProfile:
    return HbarProfile(float(hbar0), grid, np.full(grid.n_points, float(hbar0)))


# -- deformed momentum ------------------------------------------------------

def derivative(f: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite-difference derivative.

    Centred five-point stencil inside, one-sided fourth-order stencils on the
    two outermost rows at each end.
    """
    f = np.asarray(f)
    if f.size < 5:
        raise DomainError("need at least 5 samples for the fourth-order stencil")
    d = np.empty_like(f, dtype=np.result_type(f, float))
    d[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    d[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    d[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    return d


def _deformed_momentum(values: np.ndarray, hbar: HbarProfile) -> np.ndarray:
    root = np.sqrt(hbar.samples)
    return root * (-1j) * derivative(root * values, hbar.grid.spacing)


def deformed_momentum_apply(psi: PointerField, hbar: HbarProfile) -> PointerField:
    """``sqrt(hbar) (-i D) (sqrt(hbar) psi)`` with ``D`` from :func:`derivative`."""
    _grid.require_same_grid(psi.grid, hbar.grid)
    return psi.replace(_deformed_momentum(psi.amplitudes, hbar))


def commutator_residual(psi: PointerField, hbar: HbarProfile) -> np.ndarray:
    """``z Pi psi - Pi (z psi) - i hbar psi`` on every grid point."""
    _grid.require_same_grid(psi.grid, hbar.grid)
    z = hbar.grid.points
    a = psi.amplitudes
    return (z * _deformed_momentum(a, hbar) - _deformed_momentum(z * a, hbar)
            - 1j * hbar.samples * a)


def commutator_check(hbar: HbarProfile, test_functions) -> float:
    """Largest interior residual of ``[z, Pi] = i hbar`` over ``test_functions``.

    Rows touched by the one-sided boundary stencils are excluded.
    """
    worst = 0.0
    for psi in test_functions:
        _grid.check_decay(psi.amplitudes, psi.grid)
        r = commutator_residual(psi, hbar)[2:-2]
        worst = max(worst, float(np.max(np.abs(r))) if r.size else 0.0)
    return worst


# -- pointer shift ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VslShift:
    """Remapped pointer, the local shift speed ``s(z)`` and the norm defect.

    ``norm_defect`` is ``|remapped|^2 / |input|^2 - 1`` before renormalization.
    """

    field: PointerField
    shift_speed: np.ndarray
    norm_defect: float


def shift_speed(alpha: float, beta: float, tau: float, c0: float, hbar0: float,
                hbar: HbarProfile) -> np.ndarray:
    """``s(z) = sqrt(hbar0 / hbar(z)) * (alpha - tau beta)/(alpha + tau beta) * c0``."""
    v0 = weak_velocity_closed_form(alpha, beta, tau, c0)
    if isinstance(v0, complex):
        v0 = v0.real
    return np.sqrt(hbar0 / hbar.samples) * v0


def vsl_pointer_shift(pointer: PointerField, alpha: float, beta: float, tau: float,
                      c0: float, hbar0: float, profile: SpeedProfile, t_b: float,
                      lambda_const: float | None = None) -> VslShift:
    """Pointer ``Phi(z - s(z) t_B)`` for a position-dependent speed of light.

    The argument substitution is evaluated with the band-limited interpolant
    of the sampled pointer and is not unitary when ``s`` varies; the result is
    rescaled to the input norm and the defect is reported.
    """
    _grid.require_same_grid(pointer.grid, profile.grid)
    if lambda_const is None:
        lambda_const = default_lambda(hbar0, c0)
    hbar = hbar_from_speed(profile, lambda_const)
    s = shift_speed(alpha, beta, tau, c0, hbar0, hbar)
    z = pointer.grid.points
    source = z - s * t_b
    supp = _grid.support(pointer.amplitudes, pointer.grid)
    if supp is not None:
        # every point whose pre-image lies inside the support must itself be on the grid
        lo, hi = supp
        inside = (source >= lo) & (source <= hi)
        if np.any(inside[[0, -1]]):
            raise BoundaryError("VSL displacement pushes the pointer off the grid",
                                float(np.max(np.abs(s)) * t_b))
    raw = _grid.interpolate(pointer.amplitudes, pointer.grid, source)
    n_in = pointer.norm2()
    n_out = _grid.quad_norm2(raw, pointer.grid.spacing)
    field = pointer.replace(raw * math.sqrt(n_in / n_out))
    return VslShift(field, s, n_out / n_in - 1.0)

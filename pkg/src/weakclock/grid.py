"""Uniform 1-D grids, grid quadrature and exact spectral translation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BoundaryError, DomainError, GridMismatchError

#: Amplitude magnitude below which a sample counts as outside the support.
DECAY_TOL = 1e-12


@dataclass(frozen=True)
class UniformGrid:
    """Closed uniform grid ``start, start + h, ..., stop`` with ``n_points`` samples."""

    start: float
    stop: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 8:
            raise DomainError(f"grid needs at least 8 points, got {self.n_points}")
        if not self.stop > self.start:
            raise DomainError(f"grid stop {self.stop} must exceed start {self.start}")

    @property
    def spacing(self) -> float:
        return (self.stop - self.start) / (self.n_points - 1)

    @cached_property
    def points(self) -> np.ndarray:
        pts = np.linspace(self.start, self.stop, self.n_points)
        pts.flags.writeable = False
        return pts

    def covers(self, lo: float, hi: float) -> bool:
        return self.start <= lo and hi <= self.stop

    def refined(self, factor: int = 2) -> UniformGrid:
        """Same interval with the spacing divided by ``factor``."""
        return UniformGrid(self.start, self.stop, factor * (self.n_points - 1) + 1)

    def as_dict(self) -> dict:
        return {"start": self.start, "stop": self.stop, "n_points": self.n_points}


def require_same_grid(a: UniformGrid, b: UniformGrid) -> None:
    if a != b:
        raise GridMismatchError(f"grid mismatch: {a} vs {b}")


def quad_inner(a: np.ndarray, b: np.ndarray, spacing: float) -> complex:
    """Grid quadrature of ``conj(a) * b``."""
    return complex(np.vdot(a, b) * spacing)


def quad_norm2(a: np.ndarray, spacing: float) -> float:
    return float(np.vdot(a, a).real * spacing)


def moments(amplitudes: np.ndarray, grid: UniformGrid) -> tuple[float, float, float]:
    """Return ``(norm, mean, variance)`` of the density ``|amplitudes|**2``."""
    density = np.abs(amplitudes) ** 2
    x = grid.points
    norm = float(density.sum() * grid.spacing)
    mean = float((x * density).sum() * grid.spacing / norm)
    var = float(((x - mean) ** 2 * density).sum() * grid.spacing / norm)
    return norm, mean, var


def support(amplitudes: np.ndarray, grid: UniformGrid, tol: float = DECAY_TOL):
    """Smallest ``(lo, hi)`` interval outside which ``|amplitudes| < tol``.

    Returns ``None`` for a field that is below ``tol`` everywhere.
    """
    idx = np.flatnonzero(np.abs(amplitudes) >= tol)
    if idx.size == 0:
        return None
    x = grid.points
    return float(x[idx[0]]), float(x[idx[-1]])


def check_decay(amplitudes: np.ndarray, grid: UniformGrid, tol: float = DECAY_TOL) -> None:
    """Raise :class:`BoundaryError` unless both boundary samples are below ``tol``."""
    edge = max(abs(amplitudes[0]), abs(amplitudes[-1]))
    if edge >= tol:
        raise BoundaryError(f"field does not decay at the grid boundary (|psi|={edge:.3g})", edge)


def wavenumbers(grid: UniformGrid) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.spacing)


def translate(amplitudes: np.ndarray, shift: float, grid: UniformGrid,
              tol: float = DECAY_TOL) -> np.ndarray:
    """Translate samples by ``shift`` (towards larger coordinates).

    The translation is a phase multiplication in Fourier space, hence exactly
    unitary. The decayed support of the field must stay inside the grid after
    the shift, otherwise the periodic extension would wrap it around and a
    :class:`BoundaryError` is raised.
    """
    supp = support(amplitudes, grid, tol)
    if supp is not None and not grid.covers(supp[0] + shift, supp[1] + shift):
        raise BoundaryError(
            f"translation by {shift:.6g} moves support {supp} outside "
            f"[{grid.start}, {grid.stop}]", shift)
    if shift == 0.0:
        return np.array(amplitudes, dtype=complex)
    spectrum = np.fft.fft(amplitudes)
    return np.fft.ifft(spectrum * np.exp(-1j * wavenumbers(grid) * shift))


def interpolate(amplitudes: np.ndarray, grid: UniformGrid, at: np.ndarray,
                chunk: int = 256) -> np.ndarray:
    """Evaluate the trigonometric interpolant of ``amplitudes`` at arbitrary points.

    Uses the same frequency set as :func:`translate`, so a constant offset
    ``at = grid.points - s`` reproduces ``translate(amplitudes, s, grid)``.
    """
    at = np.asarray(at, dtype=float)
    spectrum = np.fft.fft(amplitudes) / grid.n_points
    k = wavenumbers(grid)
    out = np.empty(at.shape, dtype=complex)
    flat_at = at.ravel()
    flat_out = out.ravel()
    for lo in range(0, flat_at.size, chunk):
        rel = flat_at[lo:lo + chunk] - grid.start
        flat_out[lo:lo + chunk] = np.exp(1j * np.outer(rel, k)) @ spectrum
    return flat_out.reshape(at.shape)

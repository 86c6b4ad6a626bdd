"""Pre/post-selected spin--clock states and weak values.

Clock registers are compressed exactly: in the spin-up branch of one factor
the relevant clock vectors are ``T_in^+`` and ``T_fin^+`` only, so the clock
register is written in the Gram--Schmidt basis ``{T_in^+, residual of
T_fin^+}``; likewise for the spin-down branch.  Spin orthogonality keeps the
two branches apart, so a 2-dimensional clock register per spin reproduces
every inner product of the full grid representation, and operators diagonal
in spin (``v_z``) act exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clock as _clock
from . import oneway
from .clock import ClockPacket
from .errors import DomainError, IllConditionedError, PoleError
from .qcore import (LinearOperator, StateVector, apply, collective_sigma_z, identity,
                    inner, spin_names)

UNIT_TOL = 1e-12


def clock_names(n: int) -> list[str]:
    return [f"clock{i}" for i in range(1, n + 1)]


@dataclass(frozen=True, eq=False)
class PrePostPair:
    """Normalized pre- and post-selected states on a common basis.

    ``alpha``/``beta`` and ``clock_packets`` are set when the pair was built
    by :func:`build_pre_post`; ``n_spins`` counts product factors and scales
    the orthogonality guard (see :func:`weak_value`).
    """

    pre: StateVector
    post: StateVector
    alpha: float | None = None
    beta: float | None = None
    n_spins: int = 1
    clock_packets: tuple[ClockPacket, ...] | None = None

    def __post_init__(self):
        if self.pre.basis_label != self.post.basis_label:
            raise DomainError("pre and post states must share a basis")
        if not (self.pre.normalized and self.post.normalized):
            raise DomainError("pre and post states must be normalized")
        if self.alpha is not None and self.beta is not None:
            _check_unit(self.alpha, self.beta, UNIT_TOL)

    @property
    def spin_registers(self) -> list[str]:
        return spin_names(self.n_spins)

    def amplitude(self) -> complex:
        """``<post|pre>``."""
        return inner(self.post, self.pre)


@dataclass(frozen=True)
class WeakValue:
    value: complex
    post_selection_amplitude: complex

    @property
    def post_selection_probability(self) -> float:
        return abs(self.post_selection_amplitude) ** 2

    @property
    def real(self) -> float:
        return self.value.real


def _check_unit(alpha: float, beta: float, tol: float) -> None:
    dev = abs(alpha * alpha + beta * beta - 1.0)
    if dev > tol:
        raise DomainError(f"alpha^2 + beta^2 = {alpha * alpha + beta * beta!r} is not 1")


def _gram_schmidt(t_in: ClockPacket, t_fin: ClockPacket) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of ``t_in`` and ``t_fin`` in an orthonormal basis of their span."""
    norm_in = math.sqrt(t_in.norm2())
    e1 = t_in.amplitudes / norm_in
    h = t_in.grid.spacing
    proj = np.vdot(e1, t_fin.amplitudes) * h
    residual = t_fin.amplitudes - proj * e1
    rho = math.sqrt(max(np.vdot(residual, residual).real * h, 0.0))
    return np.array([norm_in, 0.0], dtype=complex), np.array([proj, rho], dtype=complex)


def _product(factors: list[np.ndarray], n: int) -> np.ndarray:
    """Tensor N identical 4-dim (spin, clock) factors and order spins first."""
    psi = factors[0]
    for f in factors[1:]:
        psi = np.kron(psi, f)
    axes = [2 * i for i in range(n)] + [2 * i + 1 for i in range(n)]
    return np.transpose(psi.reshape((2,) * (2 * n)), axes).ravel()


def build_pre_post(alpha: float, beta: float, t_in_plus: ClockPacket, t_in_minus: ClockPacket,
                   t_fin_plus: ClockPacket, t_fin_minus: ClockPacket,
                   n_spins: int = 1) -> PrePostPair:
    """Pre-select ``(x)_i (|up_i> T_in^+ + |down_i> T_in^-)`` and post-select
    ``(x)_i (alpha |up_i> T_fin^+ + beta |down_i> T_fin^-)``.

    Every spin carries its own clock register. Registers are ordered
    ``spin1..spinN, clock1..clockN``; both states are renormalized.
    """
    if n_spins < 1:
        raise DomainError(f"n_spins must be >= 1, got {n_spins}")
    _check_unit(alpha, beta, UNIT_TOL)
    in_up, fin_up = _gram_schmidt(t_in_plus, t_fin_plus)
    in_down, fin_down = _gram_schmidt(t_in_minus, t_fin_minus)
    # factor layout: (spin, clock) with spin up first
    pre_factor = np.concatenate([in_up, in_down])
    post_factor = np.concatenate([alpha * fin_up, beta * fin_down])
    label = tuple((r, 2) for r in spin_names(n_spins) + clock_names(n_spins))
    pre = StateVector(_product([pre_factor] * n_spins, n_spins), label).normalize()
    post = StateVector(_product([post_factor] * n_spins, n_spins), label).normalize()
    return PrePostPair(pre, post, alpha, beta, n_spins,
                       (t_in_plus, t_in_minus, t_fin_plus, t_fin_minus))


def weak_value(pair: PrePostPair, op: LinearOperator, registers=None,
               threshold: float = _clock.ORTHOGONALITY_THRESHOLD) -> WeakValue:
    """``<post|A|pre> / <post|pre>`` by exact contraction.

    The orthogonality guard is applied per product factor: a pair of
    ``n_spins`` factors is rejected when ``|<post|pre>| < threshold**n_spins``.
    """
    den = pair.amplitude()
    floor = threshold ** pair.n_spins
    if abs(den) < floor:
        raise IllConditionedError(
            f"|<post|pre>| = {abs(den):.3g} below orthogonality threshold {floor:.3g}", abs(den))
    num = inner(pair.post, apply(op, pair.pre, registers))
    return WeakValue(num / den, den)


def weak_velocity_full(pair: PrePostPair, c: float = 1.0,
                       threshold: float = _clock.ORTHOGONALITY_THRESHOLD) -> WeakValue:
    """Weak value of ``v_z = (c/N) sum_i sigma_z^(i)`` by full contraction."""
    v_z = collective_sigma_z(pair.n_spins, c, pair.spin_registers)
    return weak_value(pair, v_z, pair.spin_registers, threshold)


def weak_velocity_closed_form(alpha: float, beta: float, tau: complex, c: float = 1.0,
                              threshold: float = _clock.ORTHOGONALITY_THRESHOLD):
    """``(alpha - tau beta) / (alpha + tau beta) * c``.

    Returns a float for real ``tau`` and a complex number otherwise.
    """
    den = alpha + tau * beta
    if abs(den) < threshold:
        raise PoleError(f"|alpha + tau beta| = {abs(den):.3g}: weak velocity diverges", abs(den))
    value = (alpha - tau * beta) / den * c
    return value if isinstance(value, complex) else float(value)


def pair_tau(pair: PrePostPair) -> complex:
    if pair.clock_packets is None:
        raise DomainError("pair was not built from clock packets")
    return _clock.tau(*pair.clock_packets)


@dataclass(frozen=True)
class ScanRow:
    tau: float
    weak_velocity: float
    epsilon: float
    in_range: bool
    paper_constraint: bool | None
    pole: bool


def epsilon_tau_scan(alpha: float, beta: float, tau_range: tuple[float, float],
                     steps: int, c: float = 1.0) -> list[ScanRow]:
    """Tabulate the weak velocity and the synchronization parameter over a tau grid.

    Rows at a pole of either map carry ``nan`` values and ``pole=True``.
    """
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    lo, hi = tau_range
    taus = np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])
    rows = []
    for t in taus:
        t = float(t)
        try:
            v = weak_velocity_closed_form(alpha, beta, t, c)
            eps = oneway.epsilon_from_weak(alpha, beta, t)
        except PoleError:
            rows.append(ScanRow(t, math.nan, math.nan, False, None, True))
            continue
        rows.append(ScanRow(t, v, eps.epsilon, eps.in_range, eps.paper_constraint, False))
    return rows


def spin_identity(n: int) -> LinearOperator:
    return identity(tuple((r, 2) for r in spin_names(n)))

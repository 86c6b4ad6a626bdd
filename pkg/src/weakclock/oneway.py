"""Reichenbach synchronization conventions and their weak-velocity dictionary.

Speeds are signed along +z; "forward" is the +z direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PoleError

REGIME_TOL = 1e-12
POLE_TOL = 1e-8

CAUSALITY_NOTE = (
    "The pointer is an analytic function of z, so its displacement is the same "
    "change everywhere at once and cannot carry a signal; no causal influence "
    "propagates at the weak velocity."
)


@dataclass(frozen=True)
class SynchronizationConvention:
    """Arrival-time convention ``t2 = t1 + epsilon (t3 - t1)``."""

    epsilon: float
    c_two_way: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon must lie strictly in (0, 1), got {self.epsilon}")
        if not self.c_two_way > 0:
            raise DomainError(f"two-way speed must be positive, got {self.c_two_way}")


def directional_speeds(conv: SynchronizationConvention) -> tuple[float, float]:
    """``(c / (2 eps), c / (2 (1 - eps)))``: forward and backward one-way speeds."""
    c, eps = conv.c_two_way, conv.epsilon
    return c / (2.0 * eps), c / (2.0 * (1.0 - eps))


@dataclass(frozen=True)
class RoundTrip:
    t_forward: float
    t_backward: float
    c_effective: float


def roundtrip_check(conv: SynchronizationConvention, length: float) -> RoundTrip:
    """Out-and-back travel times over ``length`` and the resulting two-way speed."""
    if not length > 0:
        raise DomainError(f"length must be positive, got {length}")
    fwd, bwd = directional_speeds(conv)
    t_f = length / fwd
    t_b = length / bwd
    return RoundTrip(t_f, t_b, 2.0 * length / (t_f + t_b))


@dataclass(frozen=True)
class EpsilonMap:
    """Synchronization parameter implied by a weak velocity.

    ``in_range`` is ``0 < epsilon < 1``; ``paper_constraint`` is the
    coefficient condition ``tau < alpha / (3 beta)``, evaluated only for
    ``beta > 0`` (``None`` otherwise). The two are reported independently.
    """

    epsilon: float
    in_range: bool
    paper_constraint: bool | None

    @property
    def valid(self) -> bool:
        return self.in_range and self.paper_constraint is not False


def epsilon_from_weak(alpha: float, beta: float, tau: float) -> EpsilonMap:
    """``epsilon = (alpha + tau beta) / (2 (alpha - tau beta))``; requires real tau."""
    if isinstance(tau, complex):
        if abs(tau.imag) > 1e-10:
            raise DomainError(f"epsilon map needs real tau, got {tau}")
        tau = tau.real
    den = alpha - tau * beta
    if abs(den) < POLE_TOL:
        raise PoleError(f"alpha - tau beta = {den:.3g}: epsilon diverges", abs(den))
    eps = 0.5 * (alpha + tau * beta) / den
    constraint = (tau < alpha / (3.0 * beta)) if beta > 0 else None
    return EpsilonMap(eps, 0.0 < eps < 1.0, constraint)


@dataclass(frozen=True)
class CausalityVerdict:
    regime: str
    information_transmitted: bool
    note: str


def causality_class(v_w, c: float = 1.0) -> CausalityVerdict:
    """Classify ``|v_w|`` against ``c`` (relative tolerance ``1e-12``)."""
    if not c > 0:
        raise DomainError(f"c must be positive, got {c}")
    ratio = abs(v_w) / c
    if math.isnan(ratio):
        raise DomainError("weak velocity is not a number")
    if ratio > 1.0 + REGIME_TOL:
        regime = "superluminal"
    elif ratio < 1.0 - REGIME_TOL:
        regime = "subluminal"
    else:
        regime = "luminal"
    return CausalityVerdict(regime, False, CAUSALITY_NOTE)

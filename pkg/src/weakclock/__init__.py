"""Weak-velocity measurements of a quantum particle with non-synchronized quantum clocks.

Modules
-------
qcore
    Dense states, operators and tensor products on labelled registers.
clock
    Gaussian clock wavepackets, desynchronization profiles and the time-state ratio tau.
weakval
    Pre/post-selected states, weak values and the weak velocity.
pointer
    Gaussian test-particle pointer: exact conditional and weak-approximation evolution.
oneway
    Reichenbach synchronization conventions and causality classification.
vsl
    Position-dependent speed of light and the deformed momentum operator.
"""

__version__ = "0.1.0"

from .clock import (ClockPacket, DesyncProfile, desync_integral, evolve_packet, make_packet,
                    overlap, packets_for_tau, tau, weak_regime_margin)
from .errors import (BasisError, BoundaryError, ConfigError, DomainError, GridMismatchError,
                     IllConditionedError, NumericalPreconditionError, PoleError, WeakClockError)
from .grid import UniformGrid
from .oneway import (SynchronizationConvention, causality_class, directional_speeds,
                     epsilon_from_weak, roundtrip_check)
from .pointer import PointerField, compare, evolve_exact, evolve_weak, gaussian_pointer
from .qcore import LinearOperator, StateVector, collective_sigma_z, inner, tensor
from .vsl import (commutator_check, deformed_momentum_apply, hbar_from_speed,
                  vsl_pointer_shift)
from .weakval import (PrePostPair, WeakValue, build_pre_post, epsilon_tau_scan, weak_value,
                      weak_velocity_closed_form, weak_velocity_full)

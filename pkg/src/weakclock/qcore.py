"""Dense finite-dimensional states and operators on labelled tensor-product bases.

Registers are listed left to right from the most significant to the least
significant index block, i.e. the amplitude of ``|i_1 i_2 ... i_k>`` sits at the
row-major (C order) position of ``(i_1, ..., i_k)``.  Spin registers use
``|up> = (1, 0)`` and ``|down> = (0, 1)`` so that ``sigma_z = diag(1, -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .errors import BasisError, DomainError

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12

Label = tuple[tuple[str, int], ...]


def _as_label(basis_label) -> Label:
    label = tuple((str(name), int(dim)) for name, dim in basis_label)
    for name, dim in label:
        if dim < 1:
            raise BasisError(f"register {name!r} has dimension {dim}")
    return label


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Ket over a labelled tensor-product basis.

    Parameters
    ----------
    amplitudes : array_like
        Complex amplitudes, length equal to the product of register dimensions.
    basis_label : sequence of (name, dim)
        Registers, most significant first.
    normalized : bool
        When set, the norm is verified to ``1 +- 1e-12``.
    """

    amplitudes: np.ndarray
    basis_label: Label
    normalized: bool = False

    def __post_init__(self):
        label = _as_label(self.basis_label)
        amps = _frozen(self.amplitudes).ravel()
        if amps.size != prod(d for _, d in label):
            raise BasisError(
                f"{amps.size} amplitudes do not match register dimensions {label}")
        object.__setattr__(self, "basis_label", label)
        object.__setattr__(self, "amplitudes", amps)
        if self.normalized:
            n2 = float(np.vdot(amps, amps).real)
            if abs(n2 - 1.0) > NORM_TOL:
                raise DomainError(f"state flagged normalized has norm^2 {n2!r}")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.basis_label)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> StateVector:
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.basis_label, normalized=True)

    def scaled(self, factor: complex) -> StateVector:
        out = self.amplitudes * factor
        keep = self.normalized and abs(abs(factor) - 1.0) <= NORM_TOL
        return StateVector(out, self.basis_label, normalized=keep)

    def tensor_view(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per register."""
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Square matrix acting on a labelled basis.

    ``hermitian=True`` is checked against ``max|M - M^dagger| <= 1e-12``.
    """

    matrix: np.ndarray
    basis_label: Label
    hermitian: bool = False

    def __post_init__(self):
        label = _as_label(self.basis_label)
        mat = _frozen(self.matrix)
        d = prod(dim for _, dim in label)
        if mat.shape != (d, d):
            raise BasisError(f"operator shape {mat.shape} does not match basis {label}")
        if self.hermitian:
            dev = float(np.max(np.abs(mat - mat.conj().T))) if d else 0.0
            if dev > HERMITIAN_TOL:
                raise DomainError(f"operator flagged Hermitian deviates by {dev:.3g}")
        object.__setattr__(self, "basis_label", label)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.basis_label)

    def __add__(self, other: LinearOperator) -> LinearOperator:
        if other.basis_label != self.basis_label:
            raise BasisError("cannot add operators on different bases")
        return LinearOperator(self.matrix + other.matrix, self.basis_label,
                              self.hermitian and other.hermitian)

    def __mul__(self, scalar) -> LinearOperator:
        scalar = complex(scalar)
        return LinearOperator(self.matrix * scalar, self.basis_label,
                              self.hermitian and scalar.imag == 0.0)

    __rmul__ = __mul__

    def __matmul__(self, state: StateVector) -> StateVector:
        if state.basis_label != self.basis_label:
            raise BasisError(f"operator basis {self.basis_label} != state basis {state.basis_label}")
        return StateVector(self.matrix @ state.amplitudes, self.basis_label)


def tensor(a, b):
    """Kronecker product of two states or two operators; labels are concatenated."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes), a.basis_label + b.basis_label,
                           normalized=a.normalized and b.normalized)
    if isinstance(a, LinearOperator) and isinstance(b, LinearOperator):
        return LinearOperator(np.kron(a.matrix, b.matrix), a.basis_label + b.basis_label,
                              hermitian=a.hermitian and b.hermitian)
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def inner(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.basis_label != b.basis_label:
        raise BasisError(f"basis mismatch: {a.basis_label} vs {b.basis_label}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def apply(op: LinearOperator, state: StateVector,
          registers: Sequence[str] | None = None) -> StateVector:
    """Apply ``op`` to ``state``.

    With ``registers`` given, ``op`` acts on that ordered subset of the
    state's registers and as the identity on the rest. The full Kronecker
    product is never formed.
    """
    if registers is None:
        return op @ state
    names = [name for name, _ in state.basis_label]
    try:
        axes = [names.index(r) for r in registers]
    except ValueError as exc:
        raise BasisError(f"unknown register in {list(registers)}; have {names}") from exc
    sub_label = tuple(state.basis_label[i] for i in axes)
    if sub_label != op.basis_label:
        raise BasisError(f"operator basis {op.basis_label} != registers {sub_label}")
    psi = state.tensor_view()
    rest = [i for i in range(psi.ndim) if i not in axes]
    moved = np.transpose(psi, axes + rest).reshape(op.dim, -1)
    out = (op.matrix @ moved).reshape([psi.shape[i] for i in axes + rest])
    out = np.transpose(out, np.argsort(axes + rest))
    return StateVector(out.ravel(), state.basis_label)


def matrix_element(bra: StateVector, op: LinearOperator, ket: StateVector,
                   registers: Sequence[str] | None = None) -> complex:
    """``<bra| op |ket>`` with ``op`` optionally restricted to some registers."""
    return inner(bra, apply(op, ket, registers))


def permute(state: StateVector, order: Sequence[str]) -> StateVector:
    """Reorder the registers of ``state`` to the given name order."""
    names = [name for name, _ in state.basis_label]
    if sorted(order) != sorted(names):
        raise BasisError(f"{list(order)} is not a permutation of {names}")
    axes = [names.index(r) for r in order]
    out = np.transpose(state.tensor_view(), axes)
    label = tuple(state.basis_label[i] for i in axes)
    return StateVector(out.ravel(), label, normalized=state.normalized)


# -- standard objects -------------------------------------------------------

def basis_state(name: str, dim: int, index: int) -> StateVector:
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, ((name, dim),), normalized=True)


def spin_up(name: str = "spin") -> StateVector:
    return basis_state(name, 2, 0)


def spin_down(name: str = "spin") -> StateVector:
    return basis_state(name, 2, 1)


def spin_state(up: complex, down: complex, name: str = "spin") -> StateVector:
    return StateVector([up, down], ((name, 2),))


def identity(basis_label) -> LinearOperator:
    label = _as_label(basis_label)
    return LinearOperator(np.eye(prod(d for _, d in label)), label, hermitian=True)


def sigma_z(name: str = "spin") -> LinearOperator:
    return LinearOperator(np.diag([1.0, -1.0]), ((name, 2),), hermitian=True)


def spin_names(n: int) -> list[str]:
    return [f"spin{i}" for i in range(1, n + 1)]


def collective_sigma_z(n: int, c: float = 1.0, names: Sequence[str] | None = None) -> LinearOperator:
    """Velocity observable ``(c / n) * sum_i sigma_z^(i)`` on ``n`` spin registers.

    Diagonal in the computational basis with entry ``(c / n) * (n_up - n_down)``;
    its spectrum is ``-c, -c + 2c/n, ..., c``.
    """
    if n < 1:
        raise DomainError(f"number of spins must be >= 1, got {n}")
    names = spin_names(n) if names is None else list(names)
    if len(names) != n:
        raise BasisError(f"{len(names)} register names for {n} spins")
    index = np.arange(2 ** n)
    n_down = np.zeros(2 ** n, dtype=int)
    for bit in range(n):
        n_down += (index >> bit) & 1
    diag = (c / n) * (n - 2 * n_down)
    return LinearOperator(np.diag(diag.astype(complex)), tuple((r, 2) for r in names),
                          hermitian=True)

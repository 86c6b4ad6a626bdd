"""Declarative experiment configuration (JSON, one section per module).

Every section is optional and falls back to the defaults below; unknown keys
anywhere are rejected. :meth:`ExperimentConfig.to_dict` returns the fully
populated configuration, which parses back to an equal object.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, get_args, get_origin, get_type_hints

from .errors import ConfigError

EXPERIMENTS = ("weak-velocity", "nspin-oracle", "pointer", "clock-desync",
               "oneway-map", "vsl", "causality")
SCAN_KINDS = ("tau", "t_b", "epsilon")


@dataclass(frozen=True)
class GridSpec:
    start: float = -20.0
    stop: float = 20.0
    n_points: int = 4096


@dataclass(frozen=True)
class PhysicsSection:
    alpha: float = 0.6
    beta: float = 0.8
    c0: float = 1.0
    hbar0: float = 1.0
    n_spins: int = 1
    tau: Optional[float] = None


@dataclass(frozen=True)
class ClockSection:
    grid: GridSpec = field(default_factory=GridSpec)
    width: float = 1.0
    in_plus: float = 0.0
    in_minus: float = 0.0
    fin_plus: float = 0.0
    fin_minus: float = 0.0
    t_b_schedule: tuple[float, ...] = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class DesyncSection:
    kind: str = "zero"
    value: float = 0.0
    table: tuple[tuple[float, float], ...] = ()
    name: Optional[str] = None
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PointerSection:
    grid: GridSpec = field(default_factory=lambda: GridSpec(-12.0, 12.0, 2048))
    epsilon_width: float = 1.0
    t_b: float = 0.01
    t_b_schedule: tuple[float, ...] = (0.1, 0.05, 0.025, 0.0125)


@dataclass(frozen=True)
class OnewaySection:
    epsilon: float = 0.5
    length: float = 1.0


@dataclass(frozen=True)
class VslSection:
    profile: str = "tanh"
    amplitude: float = 0.1
    length_scale: float = 1.0
    table_path: Optional[str] = None
    lambda_const: Optional[float] = None
    t_b: float = 0.01
    test_widths: tuple[float, ...] = (0.8, 1.0, 1.25)


@dataclass(frozen=True)
class CausalitySection:
    v_w: Optional[float] = None


@dataclass(frozen=True)
class ScanSection:
    kind: str = "tau"
    start: float = -0.5
    stop: float = 0.5
    steps: int = 11


@dataclass(frozen=True)
class Tolerances:
    orthogonality: float = 1e-8
    weak_margin: float = 0.01
    oracle: float = 1e-10
    real_tau: float = 1e-10


@dataclass(frozen=True)
class OutputSection:
    report: str = "report.json"
    table: Optional[str] = None
    field: Optional[str] = None


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    physics: PhysicsSection = field(default_factory=PhysicsSection)
    clock: ClockSection = field(default_factory=ClockSection)
    desync: DesyncSection = field(default_factory=DesyncSection)
    pointer: PointerSection = field(default_factory=PointerSection)
    oneway: OnewaySection = field(default_factory=OnewaySection)
    vsl: VslSection = field(default_factory=VslSection)
    causality: CausalitySection = field(default_factory=CausalitySection)
    scan: ScanSection = field(default_factory=ScanSection)
    tolerances: Tolerances = field(default_factory=Tolerances)
    output: OutputSection = field(default_factory=OutputSection)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if self.scan.kind not in SCAN_KINDS:
            raise ConfigError(f"scan.kind must be one of {SCAN_KINDS}, got {self.scan.kind!r}")
        p = self.physics
        if abs(p.alpha ** 2 + p.beta ** 2 - 1.0) > 1e-9:
            raise ConfigError(f"alpha^2 + beta^2 = {p.alpha ** 2 + p.beta ** 2!r}, expected 1")
        if p.n_spins < 1:
            raise ConfigError("physics.n_spins must be >= 1")
        if not (p.c0 > 0 and p.hbar0 > 0):
            raise ConfigError("physics.c0 and physics.hbar0 must be positive")
        if self.scan.steps < 1:
            raise ConfigError("scan.steps must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        return _build(cls, data, "config")

    def to_dict(self) -> dict:
        return _plain(dataclasses.asdict(self))


def load_config(path) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return ExperimentConfig.from_dict(data)


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _coerce(tp, value, where: str):
    origin = get_origin(tp)
    if dataclasses.is_dataclass(tp):
        return _build(tp, value, where)
    if origin is Optional or (origin is not None and type(None) in get_args(tp)):
        if value is None:
            return None
        inner = [a for a in get_args(tp) if a is not type(None)][0]
        return _coerce(inner, value, where)
    if origin is tuple:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{where}: expected a list, got {value!r}")
        args = get_args(tp)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_coerce(args[0], v, f"{where}[{i}]") for i, v in enumerate(value))
        if len(value) != len(args):
            raise ConfigError(f"{where}: expected {len(args)} entries, got {len(value)}")
        return tuple(_coerce(a, v, f"{where}[{i}]") for i, (a, v) in enumerate(zip(args, value)))
    if tp is dict:
        if not isinstance(value, dict):
            raise ConfigError(f"{where}: expected an object, got {value!r}")
        return {str(k): _coerce(float, v, f"{where}.{k}") for k, v in value.items()}
    if tp is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where}: expected a number, got {value!r}")
        if not math.isfinite(value):
            raise ConfigError(f"{where}: must be finite")
        return float(value)
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where}: expected an integer, got {value!r}")
        return value
    if tp is str:
        if not isinstance(value, str):
            raise ConfigError(f"{where}: expected a string, got {value!r}")
        return value
    raise ConfigError(f"{where}: unsupported field type {tp}")  # pragma: no cover


def _build(cls, data: Any, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
    hints = get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {unknown}")
    kwargs = {k: _coerce(hints[k], v, f"{where}.{k}") for k, v in data.items()}
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"{where}: {exc}") from exc

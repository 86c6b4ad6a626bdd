"""Command line entry point: ``weakclock {run,scan,validate} CONFIG``.

Exit codes: 0 success, 2 configuration error, 3 numerical-precondition
error (ill-conditioned tau or post-selection, pole, boundary overflow).
Relative output paths resolve against ``$WEAKCLOCK_OUTPUT_DIR`` when set and
against the directory of the config file otherwise.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from ._io import atomic_write_text, csv_text
from .config import ExperimentConfig, load_config
from .errors import ConfigError, DomainError, GridMismatchError, NumericalPreconditionError
from .experiments import run_experiment, run_scan

OUTPUT_ENV = "WEAKCLOCK_OUTPUT_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def _finite(obj):
    """Replace non-finite floats by an explicit error object."""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return {"error": "non-finite", "value": repr(obj)}
    return obj


def _dumps(obj) -> str:
    return json.dumps(_finite(obj), indent=2, allow_nan=False) + "\n"


def _provenance(cfg: ExperimentConfig) -> dict:
    return {"tool": "weakclock", "version": __version__,
            "tolerances": cfg.to_dict()["tolerances"]}


def output_dir(config_path) -> str:
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return env
    return os.path.dirname(os.path.abspath(config_path))


def build_report(cfg: ExperimentConfig, results: dict | None = None, error: dict | None = None) -> dict:
    report = {"experiment": cfg.experiment, "config": cfg.to_dict()}
    if error is not None:
        report["error"] = error
    else:
        report["results"] = results
    report["provenance"] = _provenance(cfg)
    return report


def _error_object(exc: NumericalPreconditionError) -> dict:
    return {"type": type(exc).__name__, "message": str(exc), "quantity": exc.quantity}


def _summary(results: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in results.items():
        if isinstance(value, dict) and set(value) == {"re", "im"}:
            value = complex(value["re"], value["im"])
        if isinstance(value, dict):
            lines.extend(_summary(value, f"{prefix}{key}."))
        elif isinstance(value, (int, float, complex, bool, str)) and key != "note":
            lines.append(f"{prefix}{key} = {value}")
    return lines


def cmd_validate(path) -> int:
    cfg = load_config(path)
    ExperimentConfig.from_dict(cfg.to_dict())
    print(f"{path}: valid {cfg.experiment} configuration")
    return EXIT_OK


def cmd_run(path) -> int:
    cfg = load_config(path)
    out = output_dir(path)
    report_path = os.path.join(out, cfg.output.report)
    try:
        results = run_experiment(cfg, out_dir=out, base_dir=os.path.dirname(os.path.abspath(path)))
    except NumericalPreconditionError as exc:
        atomic_write_text(report_path, _dumps(build_report(cfg, error=_error_object(exc))))
        print(f"numerical precondition failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    atomic_write_text(report_path, _dumps(build_report(cfg, results)))
    print(f"{cfg.experiment}: report written to {report_path}")
    for line in _summary(results):
        print(f"  {line}")
    return EXIT_OK


def cmd_scan(path) -> int:
    cfg = load_config(path)
    out = output_dir(path)
    table_path = os.path.join(out, cfg.output.table or f"scan_{cfg.scan.kind}.csv")
    try:
        header, rows = run_scan(cfg)
    except NumericalPreconditionError as exc:
        print(f"numerical precondition failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    atomic_write_text(table_path, csv_text(header, rows))
    print(f"{cfg.scan.kind} scan: {len(rows)} rows written to {table_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakclock",
        description="Weak-velocity experiments with non-synchronized quantum clocks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("run", "run one experiment and write a JSON report"),
                       ("scan", "run a scan and write a CSV table"),
                       ("validate", "check a configuration file")):
        p = sub.add_parser(name, help=text)
        p.add_argument("config", help="path to a JSON experiment configuration")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "scan": cmd_scan, "validate": cmd_validate}[args.command]
    try:
        return handler(args.config)
    except (ConfigError, DomainError, GridMismatchError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalPreconditionError as exc:
        print(f"numerical precondition failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command line front end: ``landauqm <suite> [--config F] [--params F] [--out DIR] [--tol k=v]``.

Prints a JSON report on stdout (also written to DIR/report.json with --out)
and a one-line summary on stderr. Exit status: 0 all checks pass, 1 some
check failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .params import PhysicalParams
from .suites import DEFAULT_TOLERANCES, EXPORT_SUITES, SUITE_OPTIONS, SUITES

CONFIG_KEYS = {"params", "options", "tolerances"}


class ConfigError(ValueError):
    pass


def _check_type(name, value, default):
    if default is None or isinstance(default, str):
        if value is not None and not isinstance(value, (str, int, float)):
            raise ConfigError(f"option {name} has invalid type")
        return value
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"option {name} must be boolean")
        return value
    if isinstance(default, int):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"option {name} must be an integer")
        return value
    if isinstance(default, float):
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"option {name} must be a number")
        return float(value)
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(f"option {name} must be a list")
        return list(value)
    return value


def build_config(suite: str, config: dict | None, params_path=None, tol_overrides=()):
    """Validate everything up front; returns (params, options, tolerances)."""
    config = dict(config or {})
    unknown = set(config) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        params = PhysicalParams.from_dict(config.get("params", {}))
        if params_path is not None:
            params = PhysicalParams.from_json(params_path)
    except (ValueError, TypeError, OSError) as exc:
        raise ConfigError(f"bad parameter profile: {exc}") from exc

    defaults = SUITE_OPTIONS[suite]
    given = config.get("options", {})
    if not isinstance(given, dict):
        raise ConfigError("options must be an object")
    unknown = set(given) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown options for {suite}: {sorted(unknown)}")
    options = dict(defaults)
    for key, value in given.items():
        options[key] = _check_type(key, value, defaults[key])

    tolerances = dict(DEFAULT_TOLERANCES)
    requested = dict(config.get("tolerances", {}))
    for item in tol_overrides:
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--tol expects name=value, got {item!r}")
        try:
            requested[name] = float(value)
        except ValueError as exc:
            raise ConfigError(f"tolerance {name} is not a number") from exc
    for name, value in requested.items():
        if name not in tolerances:
            raise ConfigError(f"unknown tolerance {name!r}")
        if not isinstance(value, (int, float)) or not value > 0:
            raise ConfigError(f"tolerance {name} must be positive")
        if value > DEFAULT_TOLERANCES[name]:
            raise ConfigError(f"tolerance {name} may only be tightened (default {DEFAULT_TOLERANCES[name]})")
        tolerances[name] = float(value)
    return params, options, tolerances


def run_suite(suite: str, params: PhysicalParams, options: dict, tolerances: dict, out_dir: Path | None = None):
    checks, writers = SUITES[suite](params, options, tolerances)
    if writers:
        if out_dir is None:
            raise ConfigError(f"suite {suite} writes files and needs --out")
        out_dir.mkdir(parents=True, exist_ok=True)
        for write in writers:
            write(out_dir)
    gating = [c for c in checks if not c.informational]
    report = {
        "suite": suite,
        "params": params.to_dict(),
        "options": options,
        "tolerances": tolerances,
        "checks": [c.to_dict() for c in checks],
        "passed": all(c.passed for c in gating),
        "n_checks": len(gating),
        "n_failed": sum(not c.passed for c in gating),
    }
    return report


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="landauqm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="suite", required=True)
    for name in SUITES:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="JSON run configuration")
        p.add_argument("--params", type=Path, help="JSON parameter profile (m, q, B, c, hbar)")
        p.add_argument("--out", type=Path, help="output directory for report and exports")
        p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                       help="tighten a tolerance; may be repeated")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = json.loads(args.config.read_text()) if args.config else {}
        if not isinstance(config, dict):
            raise ConfigError("config must be a JSON object")
        params, options, tolerances = build_config(args.suite, config, args.params, args.tol)
        if args.suite in EXPORT_SUITES and args.out is None:
            raise ConfigError(f"suite {args.suite} writes files and needs --out")
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"landauqm: error: {exc}", file=sys.stderr)
        return 2

    report = run_suite(args.suite, params, options, tolerances, args.out)
    text = json.dumps(report, indent=2)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.json").write_text(text + "\n")
    print(text)
    status = "PASS" if report["passed"] else "FAIL"
    print(f"{args.suite}: {status} ({report['n_checks'] - report['n_failed']}/{report['n_checks']} checks)",
          file=sys.stderr)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 on success, 2 on configuration or usage errors, 3 on solver
failures (including sweeps where every point failed and oracle mismatches).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .. import __version__
from ..engines import InitialBlockWeights, full_space_oracle
from ..estimator import resolve_engine, solve_point
from ..exceptions import ConfigError, DickeValveError, SolverError, UsageError
from ..observables import bath_current
from ..units import SUPPORTED_UNITS, convert_units
from .config import load_config, resolve
from .csvio import emit_csv
from .presets import PRESETS, preset_config
from .sweep import SweepResult, run_scenario

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 2, 3

ORACLE_TOLERANCE = 1e-8


def _add_common(p, config_required=True):
    p.add_argument("--config", required=config_required, help="JSON scenario file")
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.add_argument("--engine", choices=("analytic", "rate", "oracle"), help="override the configured engine")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp comment line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dicke-valve", description="Collective quantum heat valve steady states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("steady", help="solve a single point (sweep axes are ignored)")
    _add_common(p)

    p = sub.add_parser("sweep", help="run the sweep described in a config file")
    _add_common(p)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("preset", help="run a built-in figure or table scenario")
    p.add_argument("name", choices=sorted(PRESETS))
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.add_argument("--engine", choices=("analytic", "rate", "oracle"), help="override the preset engine")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--dump-config", action="store_true", help="print the preset JSON instead of running it")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp comment line")

    p = sub.add_parser("oracle-check", help="compare the configured engine against the full-space oracle")
    _add_common(p)

    p = sub.add_parser("convert", help="convert a temperature between K, mK, GHz and T/T0")
    p.add_argument("value", type=float)
    p.add_argument("--from", dest="from_unit", required=True, choices=SUPPORTED_UNITS)
    p.add_argument("--to", dest="to_unit", required=True, choices=SUPPORTED_UNITS)
    p.add_argument("--reference-ghz", type=float, help="qubit frequency omega0/2pi for 'natural'")
    return parser


def _sweep_exit(result: SweepResult) -> int:
    if result.n_errors:
        print(f"{result.n_errors} of {len(result.rows)} points failed; see the error column",
              file=sys.stderr)
    if result.rows and result.n_errors == len(result.rows):
        return EXIT_SOLVER
    return EXIT_OK


def _cmd_steady(args) -> int:
    raw = load_config(args.config)
    single = {k: v for k, v in raw.items() if k != "sweep"}
    sc = resolve(single)
    resolve_engine(args.engine or sc.engine, sc.parasitic is not None and sc.parasitic.rate > 0)
    result = run_scenario(single, args.engine)
    emit_csv(result, args.out, timestamp=not args.no_timestamp)
    if result.rows[0]["error"]:
        print(result.rows[0]["error"], file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _cmd_sweep(args) -> int:
    raw = load_config(args.config)
    result = run_scenario(raw, args.engine, args.jobs)
    emit_csv(result, args.out, timestamp=not args.no_timestamp)
    return _sweep_exit(result)


def _cmd_preset(args) -> int:
    raw = preset_config(args.name)
    if args.dump_config:
        print(json.dumps(raw, indent=2))
        return EXIT_OK
    result = run_scenario(raw, args.engine, args.jobs)
    emit_csv(result, args.out, timestamp=not args.no_timestamp)
    return _sweep_exit(result)


def _cmd_oracle_check(args) -> int:
    raw = load_config(args.config)
    sc = resolve({k: v for k, v in raw.items() if k != "sweep"})
    has_parasitic = sc.parasitic is not None and sc.parasitic.rate > 0
    engine = args.engine or ("rate" if has_parasitic else "analytic")
    if engine == "oracle":
        raise UsageError("oracle-check compares another engine against the oracle")
    resolve_engine(engine, has_parasitic)
    sol = solve_point(sc.n_qubits, sc.hot, sc.cold, sc.parasitic, sc.units, engine, sc.init)
    init = sc.init
    if not has_parasitic and init is None:
        init = InitialBlockWeights.delta(sc.n_qubits / 2)
    oracle = full_space_oracle(sc.n_qubits, sc.hot, sc.cold, sc.parasitic, sc.units, init)
    diffs = {"max_population_diff": float(np.max(np.abs(sol.distribution.probabilities - oracle.probabilities)))}
    scale = max(abs(v) for v in oracle.metadata["currents"].values()) or 1.0
    for role, bath in (("hot", sc.hot), ("cold", sc.cold), ("parasitic", sc.parasitic)):
        q = bath_current(sol.distribution, bath, sc.units) if bath is not None else 0.0
        diffs[f"{role}_current_diff"] = abs(q - oracle.metadata["currents"][role]) / scale
    ok = all(v <= ORACLE_TOLERANCE for v in diffs.values())
    result = SweepResult(("quantity", "value", "tolerance", "pass"),
                         [{"quantity": k, "value": v, "tolerance": ORACLE_TOLERANCE, "pass": v <= ORACLE_TOLERANCE}
                          for k, v in diffs.items()], raw)
    emit_csv(result, args.out, timestamp=not args.no_timestamp)
    return EXIT_OK if ok else EXIT_SOLVER


def _cmd_convert(args) -> int:
    print("%.17g" % convert_units(args.value, args.from_unit, args.to_unit, args.reference_ghz))
    return EXIT_OK


COMMANDS = {"steady": _cmd_steady, "sweep": _cmd_sweep, "preset": _cmd_preset,
            "oracle-check": _cmd_oracle_check, "convert": _cmd_convert}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except DickeValveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

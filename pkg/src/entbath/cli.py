"""Command-line entry point.

Subcommands: simulate (single-cell run), sweep (full grid), oracle-check
(desk-scale solver cross-validation), presets (list or emit shipped
configs).  Exit codes: 0 success, 1 config error, 2 solver abort,
3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .checks import run_all_checks
from .config import PRESETS, load_config, preset_text
from .errors import ConfigError, SolverError
from .sweep import run_scenario

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which collides with the solver-abort
    # code; bad command lines are config errors here.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="entbath",
        description="Entanglement dynamics of two qubits in independent Ohmic baths",
    )
    parser.add_argument(
        "--workers", type=int, default=None, help="parallel worker count"
    )
    parser.add_argument(
        "--output-dir", default=".", help="directory for CSV and config output"
    )
    parser.add_argument(
        "--seedless",
        action="store_true",
        help="reserved; the simulator uses no randomness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a single (alpha, method) cell")
    p_sim.add_argument("config")

    p_sweep = sub.add_parser("sweep", help="run the full sweep grid")
    p_sweep.add_argument("config")

    p_oracle = sub.add_parser(
        "oracle-check", help="cross-validate solvers against the Fock-space oracle"
    )
    p_oracle.add_argument("config")

    p_presets = sub.add_parser("presets", help="list or emit shipped scenario configs")
    presets_sub = p_presets.add_subparsers(dest="presets_command", required=True)
    presets_sub.add_parser("list")
    p_emit = presets_sub.add_parser("emit")
    p_emit.add_argument("name")

    return parser


def _cmd_run(args, single_cell: bool) -> int:
    cfg = load_config(args.config)
    if single_cell and (len(cfg.alphas) != 1 or len(cfg.methods) != 1):
        raise ConfigError(
            "simulate requires exactly one alpha and one method; use sweep for grids"
        )
    paths, had_error = run_scenario(cfg, output_dir=args.output_dir, workers=args.workers)
    for path in paths:
        print(path)
    return EXIT_SOLVER if had_error else EXIT_OK


def _cmd_oracle_check(args) -> int:
    cfg = load_config(args.config)
    results = run_all_checks(delta=cfg.delta, alpha=cfg.alphas[0])
    ok = True
    for result in results:
        print(result.summary())
        ok = ok and result.passed
    return EXIT_OK if ok else EXIT_SOLVER


def _cmd_presets(args) -> int:
    if args.presets_command == "list":
        for name in sorted(PRESETS):
            print(name)
        return EXIT_OK
    text = preset_text(args.name)
    os.makedirs(args.output_dir, exist_ok=True)
    path = os.path.join(args.output_dir, f"{args.name}.ini")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(path)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_run(args, single_cell=True)
        if args.command == "sweep":
            return _cmd_run(args, single_cell=False)
        if args.command == "oracle-check":
            return _cmd_oracle_check(args)
        if args.command == "presets":
            return _cmd_presets(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver abort: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

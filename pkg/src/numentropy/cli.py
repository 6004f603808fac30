"""Command line: ``numentropy run``, ``numentropy verify``, ``numentropy --version``."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .errors import ConfigurationError, NumEntropyError
from .runner import run_scenario
from .scenario import load_scenario
from .verification import verify_builtin


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numentropy",
        description="Number-operator entropy ln(N + 1/2) under decay and frequency quenches.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run scenario files and write trajectory CSVs")
    run.add_argument("scenarios", nargs="+", type=Path, metavar="scenario-file")
    run.add_argument("--out", type=Path, help="CSV path (single scenario only; default: <scenario>.csv)")
    run.add_argument("--jobs", type=int, default=1, help="scenarios run in parallel")

    verify = sub.add_parser("verify", help="run the built-in acceptance suite")
    verify.add_argument("--out-dir", type=Path, help="directory for the CSVs written by the suite")
    return parser


def _run_one(path: Path, out: Path | None):
    scenario = load_scenario(path)
    return run_scenario(scenario, out if out is not None else path.with_suffix(".csv"))


def _cmd_run(args) -> int:
    if args.out is not None and len(args.scenarios) > 1:
        raise ConfigurationError("--out can only be used with a single scenario file")
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        futures = [pool.submit(_run_one, p, args.out) for p in args.scenarios]
        status = 0
        for path, future in zip(args.scenarios, futures):
            try:
                print(future.result().format())
            except NumEntropyError as exc:
                print(f"error: {path}: {exc}", file=sys.stderr)
                status = max(status, exc.exit_status)
    return status


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return verify_builtin(args.out_dir)
    except NumEntropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_status


if __name__ == "__main__":
    sys.exit(main())

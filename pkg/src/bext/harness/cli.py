"""Command line: bext catalog | verify | fuzz | describe."""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..expr import ParseError
from .catalog import builtin, builtin_names
from .runner import ScenarioError, describe, emit_report, fuzz_towers, run_checks
from .scenario import SUITES, parse_scenario


class UsageError(Exception):
    pass


def load_scenario(ref: str):
    """A built-in name or a scenario file path."""
    if ref in builtin_names():
        return builtin(ref)
    if not os.path.exists(ref):
        raise UsageError(f"no built-in scenario or file named {ref!r}")
    with open(ref, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bext", description="Check field-extension theorems on concrete towers.")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list the built-in scenarios")

    v = sub.add_parser("verify", help="run theorem suites on a scenario")
    v.add_argument("scenario", help="built-in name or scenario file")
    v.add_argument("--suite", action="append", choices=SUITES, help="suite to run (repeatable; default: the scenario's checks)")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--timing", action="store_true", help="include wall-clock millis per check")

    f = sub.add_parser("fuzz", help="run the invariant suites on random towers")
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--count", type=int, required=True)
    f.add_argument("--max-degree", type=int, default=16)
    f.add_argument("--format", choices=("json", "text"), default="text")
    f.add_argument("--out", default=None)
    f.add_argument("--timing", action="store_true")

    d = sub.add_parser("describe", help="degrees and witness subfield dimensions")
    d.add_argument("scenario")
    return ap


def _write(data: bytes, out: str | None):
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "catalog":
            for name in builtin_names():
                s = builtin(name)
                expect = ", ".join(f"{k}={v}" for k, v in s.expect.items())
                print(f"{name:<10} {expect}")
            return 0
        if args.command == "describe":
            print(json.dumps(describe(load_scenario(args.scenario)), indent=2))
            return 0
        if args.command == "verify":
            s = load_scenario(args.scenario)
            if args.seed is not None:
                s.budget["seed"] = args.seed
            report = run_checks(s, args.suite)
        else:
            report = fuzz_towers(args.seed, args.count, args.max_degree)
        _write(emit_report(report, args.format, args.timing), args.out)
        return 1 if report.failed else 0
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

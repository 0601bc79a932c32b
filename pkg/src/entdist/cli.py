"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or
invalid input (spec, observable, qubit, missing closed form), 3 the output
file could not be written.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Sequence

from . import entanglement as ent
from . import heisenberg
from . import statevector as sv
from .circuit import SpecError, load_spec
from .pauli import PauliString
from .sampler import DEFAULT_SEED, DEFAULT_SHOTS, ShotConfig, estimate_ed
from .sweep import EVALUATORS, load_sweep, preset, run_sweep, to_csv, to_json
from .verify import SUITES, format_table, run_suites

EXIT_FAIL, EXIT_USAGE, EXIT_IO = 1, 2, 3


class UsageError(Exception):
    pass


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # Shared by the top-level parser and every subcommand so the global flags
    # may appear on either side of the subcommand name.
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--spec", default=d(None), help="circuit spec file (YAML/JSON)")
    p.add_argument("--format", choices=("csv", "json"), default=d(None), help="output format")
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="unsigned 64-bit RNG seed")
    p.add_argument("--shots", type=int, default=d(DEFAULT_SHOTS), help="shots per measurement basis")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for sweeps")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entdist",
        description="Pauli back-propagation and entanglement distance for layered RY+CZ circuits.",
        parents=[_global_options(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_options(False)]

    p = sub.add_parser("expect", parents=common, help="expectation value of a Pauli string")
    p.add_argument("observable", help='Pauli string such as "X0" or "Y0 Y1"')
    p.add_argument("--oracle", action="store_true", help="also compute it on the statevector")

    p = sub.add_parser("ed", parents=common, help="entanglement distance of one qubit")
    p.add_argument("qubit", type=int)
    p.add_argument("--method", choices=("engine", "closed-form", "sampled"), default="engine")

    p = sub.add_parser("sweep", parents=common, help="evaluate ED over a two-angle grid")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("sweep_file", nargs="?", help="sweep spec file")
    src.add_argument("--preset", choices=[f.value for f in ent.Figure])
    p.add_argument("-o", "--output", required=True, help="output path ('-' for stdout)")
    p.add_argument("--evaluators", help=f"comma-separated subset of {','.join(EVALUATORS)}")
    p.add_argument("--count", type=int, default=25, help="grid points per axis for presets")

    p = sub.add_parser("verify", parents=common, help="run cross-check suites")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    return parser


def _spec(args):
    if not args.spec:
        raise UsageError("--spec is required for this command")
    return load_spec(args.spec)


def cmd_expect(args) -> int:
    spec = _spec(args)
    obs = PauliString.parse(args.observable, spec.n_qubits)
    value = heisenberg.expectation(spec, obs)
    out = {"observable": str(obs), "engine": value}
    if args.oracle:
        oracle = sv.pauli_expectation(sv.run(spec), obs)
        out.update(statevector=oracle, abs_diff=abs(value - oracle))
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(repr(value))
        if args.oracle:
            print(f"statevector {out['statevector']!r}")
            print(f"abs_diff {out['abs_diff']!r}")
    return 0


def cmd_ed(args) -> int:
    spec = _spec(args)
    if args.method == "engine":
        report = ent.ed_engine(spec, args.qubit)
    elif args.method == "closed-form":
        report = ent.ed_closed_form(spec, args.qubit)
    else:
        report = estimate_ed(spec, args.qubit, ShotConfig(args.shots, args.seed))
    print(json.dumps(report.to_dict()))
    return 0


def cmd_sweep(args) -> int:
    evaluators = tuple(e.strip() for e in args.evaluators.split(",")) if args.evaluators else None
    if args.preset:
        sweep = preset(args.preset, count=args.count, evaluators=evaluators or ("engine", "closed_form"))
    else:
        sweep = load_sweep(args.sweep_file)
        if evaluators:
            sweep = dataclasses.replace(sweep, evaluators=evaluators)
    cfg = ShotConfig(args.shots, args.seed)
    rows = run_sweep(sweep, cfg, jobs=args.jobs)
    text = to_json(sweep, rows, cfg) if args.format == "json" else to_csv(sweep, rows)
    if args.output == "-":
        sys.stdout.write(text)
        return 0
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def cmd_verify(args) -> int:
    results = run_suites(args.suite, seed=args.seed, shots=args.shots)
    print(format_table(results))
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_FAIL if failed else 0


COMMANDS = {"expect": cmd_expect, "ed": cmd_ed, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ShotConfig(args.shots, args.seed)
        return COMMANDS[args.command](args)
    except (UsageError, SpecError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

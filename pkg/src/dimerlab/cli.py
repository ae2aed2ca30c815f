"""Command-line front end.

Exit codes: 0 pass, 1 assertion failure, 2 usage, 3 capacity, 4 I/O.
"""
from __future__ import annotations

import argparse
import math
import sys

from .config import DEFAULT_CAPS
from .errors import CapacityError
from .permanent import permanent_ryser
from .sweep import FAMILIES, make_record, records_to_csv, sweep
from .theorems import derive_constants
from .verify import SUITES, run_suite
from .weighting import load_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY, EXIT_IO = 0, 1, 2, 3, 4


def _betas(text: str) -> list[float]:
    try:
        return [float(b) for b in text.split(",") if b.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimerlab", description="Exact dimer partition functions on torus lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--threads", type=int, default=1, help="worker threads; never changes results")
        p.add_argument("--max-n", type=int, default=DEFAULT_CAPS.ryser_order, help="Ryser matrix-order cap")

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--quiet", action="store_true", help="print failures and the summary only")
    common(p)

    for name in ("pressure", "sweep"):
        p = sub.add_parser(name, help="single pressure record" if name == "pressure" else "pressure sweep to CSV")
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--L", type=int, required=True)
        p.add_argument("--family", choices=FAMILIES, default="exponential")
        p.add_argument("--seed", type=int, default=0, help="seed for the random family")
        if name == "pressure":
            p.add_argument("--beta", type=float, default=0.0)
            p.add_argument("--header", action="store_true")
        else:
            p.add_argument("--betas", type=_betas, required=True, help="comma-separated beta values")
            p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
        common(p)

    p = sub.add_parser("constants", help="derive the smoothness and volume thresholds for epsilon")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("permanent", help="permanent of a matrix in the plain text format")
    p.add_argument("--matrix-in", required=True)
    common(p)
    return parser


def _cmd_verify(args) -> int:
    failed = 0
    checks = run_suite(
        args.suite, seed=args.seed, count=args.count, threads=args.threads, epsilon=args.epsilon, d=args.d
    )
    for c in checks:
        failed += not c.passed
        if not (args.quiet and c.passed):
            print(c.line())
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _cmd_pressure(args) -> int:
    rec = make_record(args.d, args.L, args.family, args.beta, args.seed, args.threads, args.max_n)
    sys.stdout.write(records_to_csv([rec], header=args.header))
    return EXIT_OK if rec.within_bound() else EXIT_FAIL


def _cmd_sweep(args) -> int:
    records = sweep(args.d, args.L, args.family, args.betas, args.seed, args.threads, args.max_n)
    text = records_to_csv(records)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if all(r.within_bound() for r in records) else EXIT_FAIL


def _cmd_constants(args) -> int:
    const = derive_constants(args.epsilon, args.d)
    print("\n".join(const.as_lines()))
    return EXIT_OK if not const.invariant_violations() else EXIT_FAIL


def _cmd_permanent(args) -> int:
    try:
        m = load_matrix(args.matrix_in)
    except OSError as exc:
        print(f"error: cannot read {args.matrix_in}: {exc}", file=sys.stderr)
        return EXIT_IO
    res = permanent_ryser(m, threads=args.threads, cap=args.max_n)
    log_value = res.log_value if res.log_value is not None else -math.inf
    print(f"n={m.n}")
    print(f"permanent={res.value!r}")
    print(f"log_permanent={log_value!r}")
    return EXIT_OK


COMMANDS = {
    "verify": _cmd_verify,
    "pressure": _cmd_pressure,
    "sweep": _cmd_sweep,
    "constants": _cmd_constants,
    "permanent": _cmd_permanent,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"capacity error ({exc.cap_name}={exc.cap}): {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

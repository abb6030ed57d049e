"""
Command-line entry point.

    gysin-lattice compute --family F --m 3 --n 4 --p 4 --q 1,2,3 --I 3,3,3,3 --J 3,2,1,0
    gysin-lattice compute --family groth --lambda 1 --nz 2 --v 0
    gysin-lattice verify thm-5-2 --m 2 --n 3 --p 3 --instances 50 --seed 7

Exit codes: 0 ok, 1 usage error, 2 identity failure or invariant violation,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import NonDivisible
from .grothendieck import groth_symbolic
from .partition import FlagShape, partition_function
from .suites import SUITES, SuiteArgs, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _params(text: str) -> tuple:
    """Factorial parameters: integers stay constants, anything else is a variable name."""
    out = []
    for x in text.split(","):
        x = x.strip()
        if not x:
            continue
        try:
            out.append(int(x))
        except ValueError:
            if not x.isidentifier():
                raise argparse.ArgumentTypeError(f"bad parameter {x!r}") from None
            out.append(x)
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gysin-lattice", description="Exact partition functions and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="print one polynomial as canonical JSON")
    c.add_argument("--family", required=True, choices=["F", "G", "H", "groth"])
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--q", type=_ints)
    c.add_argument("--I", dest="I", type=_ints)
    c.add_argument("--J", dest="J", type=_ints)
    c.add_argument("--inhom", type=int, default=0, help="generic parameters on the first k columns")
    c.add_argument("--lambda", dest="lam", type=_ints, help="partition for --family groth")
    c.add_argument("--nz", type=int, help="number of z variables for --family groth")
    c.add_argument("--v", type=_params, default=(), help="factorial parameters, e.g. 0 or a,b")
    c.add_argument("--out", help="write to this file instead of stdout")

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", help="one of: " + ", ".join(SUITES))
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--q", type=_ints)
    v.add_argument("--inhom", type=int, default=0)
    v.add_argument("--instances", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--max-work", type=int, default=200_000, help="refuse runs larger than this")
    v.add_argument("--no-timing", action="store_true", help="report millis as 0 (byte-stable output)")
    v.add_argument("--out", help="write the JSON report here instead of stdout")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run_compute(args) -> int:
    if args.family == "groth":
        if args.lam is None or args.nz is None:
            raise UsageError("--family groth needs --lambda and --nz")
        poly = groth_symbolic(args.lam, args.nz, args.v)
    else:
        for name in ("m", "n", "p", "q", "I", "J"):
            if getattr(args, name) is None:
                raise UsageError(f"--family {args.family} needs --{name}")
        shape = FlagShape(args.m, args.n, args.p, args.q)
        poly = partition_function(shape, args.family, args.I, args.J, args.inhom)
    _emit(poly.to_json(), args.out)
    return EXIT_OK


def run_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.instances < 1:
        raise UsageError("--instances must be >= 1")
    sargs = SuiteArgs(
        m=args.m, n=args.n, p=args.p, q=args.q, instances=args.instances, seed=args.seed,
        exhaustive=args.exhaustive, inhom=args.inhom, max_work=args.max_work,
    )
    start = time.perf_counter()
    outcome = run_suite(args.suite, sargs)
    millis = 0 if args.no_timing else int((time.perf_counter() - start) * 1000)
    body = outcome.to_json_obj()
    report = {"suite": args.suite, "instances": body["instances"], "failures": body["failures"], "millis": millis}
    _emit(json.dumps(report, sort_keys=True, separators=(",", ":")), args.out)
    status = "ok" if outcome.ok else "FAILED"
    print(f"{args.suite}: {outcome.instances} instances, {len(outcome.failures)} failures [{status}]",
          file=sys.stderr)
    return EXIT_OK if outcome.ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return run_compute(args)
        return run_verify(args)
    except UsageError as exc:
        print(f"gysin-lattice: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceWarning as exc:
        print(f"gysin-lattice: resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NonDivisible as exc:
        print(f"gysin-lattice: invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, KeyError) as exc:
        print(f"gysin-lattice: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

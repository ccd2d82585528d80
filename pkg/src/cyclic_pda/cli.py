"""Command-line front end.

Exit codes: 0 success, 1 validation or decoding failure, 2 bad parameters,
3 I/O or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .compare import compare, sweep
from .construct import ParameterError, construct, descriptor
from .pda import StructuralError, format_pda, parse_pda, read_pda, validate
from .sim import DEFAULT_SUBFILE_SIZE, simulate

EXIT_OK, EXIT_INVALID, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{v} is not positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"{v} is negative")
    return v


def _demands(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad demand list {text!r}") from None


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_point(p: argparse.ArgumentParser) -> None:
    p.add_argument("--K", type=_positive, required=True, help="number of users and caches")
    p.add_argument("--k", type=_positive, required=True, help="cache size numerator, gamma = k/K")
    p.add_argument("--L", type=_positive, required=True, help="caches each user reaches")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclic-pda", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the K x K PDA and write it in text form")
    _add_point(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("text", "json"), default="text", help="matrix text or JSON descriptor")

    p = sub.add_parser("validate", help="check a PDA text file and print the report as JSON")
    p.add_argument("path", help="PDA text file, '-' for stdin")

    p = sub.add_parser("simulate", help="run placement, delivery and decoding end to end")
    _add_point(p)
    p.add_argument("--N", type=_positive, required=True, help="number of files")
    p.add_argument("--subfile-size", type=_positive, default=DEFAULT_SUBFILE_SIZE)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--demands", type=_demands, help="comma-separated file index per user")

    p = sub.add_parser("compare", help="rate, gain and sub-packetization of every scheme at one point")
    _add_point(p)

    p = sub.add_parser("sweep", help="CSV table over all valid (k, L) for one K")
    p.add_argument("--K", type=_positive, required=True)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "construct":
        pda = construct(args.K, args.k, args.L)
        if args.format == "json":
            _emit(json.dumps(descriptor(args.K, args.k, args.L, pda)), args.out)
        else:
            _emit(format_pda(pda), args.out)
        return EXIT_OK

    if args.command == "validate":
        if args.path == "-":
            pda = parse_pda(sys.stdin.read())
        else:
            pda = read_pda(args.path)
        rep = validate(pda)
        _emit(json.dumps(rep.to_dict(), indent=2), None)
        return EXIT_OK if rep.is_pda else EXIT_INVALID

    if args.command == "simulate":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = simulate(args.K, args.k, args.L, args.N, args.subfile_size, args.seed, args.demands)
        _emit(json.dumps(report.to_dict(), indent=2), None)
        return EXIT_OK if report.all_decoded else EXIT_INVALID

    if args.command == "compare":
        rows = compare(args.K, args.k, args.L)
        _emit(json.dumps({"K": args.K, "k": args.k, "L": args.L, "rows": [r.to_dict() for r in rows]}, indent=2), None)
        return EXIT_OK

    if args.command == "sweep":
        table = sweep(args.K)
        _emit(table.to_csv() if args.format == "csv" else table.to_json(), args.out)
        return EXIT_OK

    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ParameterError as e:
        print(f"parameter error: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except (OSError, StructuralError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        # demand vectors of the wrong length or range
        print(f"parameter error: {e}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())

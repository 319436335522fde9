"""Command-line front end: `python -m app <command> ...`."""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, TextIO

from .core.charpoly import sample_table
from .core.errors import (
    CapacityError,
    DegenerateSpecializationError,
    InvariantViolation,
    PositivityError,
)
from .core.hankel import HankelConvention
from .core.log_configs import get_logger
from .core.unipoly import UniPoly
from .models.report import SCHEMA_PATH, Report
from .services import reports

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_NONNEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_CAPACITY = 65
EXIT_INTERNAL = 70

VERDICT_EXIT_CODES = {
    "POSITIVE": EXIT_OK,
    "NONNEGATIVE": EXIT_OK,
    "NOT_NONNEGATIVE": EXIT_NOT_NONNEGATIVE,
    "UNKNOWN": EXIT_UNKNOWN,
}

# human output of these commands is the bare value
VALUE_KEYS = {"discriminant": "discriminant", "charpoly": "chi", "restrict": "restricted"}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _subset(text: str) -> List[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"subset must look like '1,2', got {text!r}")


def _matrix(text: str) -> List[List[str]]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"basis must be a JSON matrix: {e}")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise argparse.ArgumentTypeError("basis must be a JSON list of rows")
    return [[str(v) for v in row] for row in rows]


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="poscert",
        description="Certify positivity of homogeneous polynomials in exact rational arithmetic.",
    )
    parser.add_argument("--log-level", default=None, help="Override POSCERT_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    source = _ArgumentParser(add_help=False)
    source.add_argument("polynomial", nargs="?", help="Polynomial text")
    source.add_argument("--file", type=Path, help="Read the polynomial from a file")
    source.add_argument("--json", action="store_true", help="Emit the JSON report")

    form = _ArgumentParser(add_help=False, parents=[source])
    form.add_argument("-n", type=int, required=True, help="Number of variables x1..xn")

    certify = commands.add_parser("certify", parents=[form], help="Run the full certification pipeline")
    certify.add_argument("--budget", type=int, default=None, help="Random sample points")
    certify.add_argument("--seed", type=int, default=None, help="Sampler seed")
    certify.add_argument("--parallel", action="store_true", help="Run independent tests concurrently")
    certify.add_argument("--basis", type=_matrix, action="append", default=[], help="Extra subspace basis (JSON)")
    certify.add_argument("--reference", action="append", default=[], help="Extra reference form J")

    commands.add_parser("discriminant", parents=[form], help="Normalized discriminant Delta(F)")

    charpoly = commands.add_parser("charpoly", parents=[form], help="Characteristic polynomial chi(F)(t)")
    charpoly.add_argument("--subset", type=_subset, help="Coordinate subspace, e.g. '1,2'")
    charpoly.add_argument("--parallel", action="store_true", help="Evaluate nodes concurrently")
    charpoly.add_argument("--table", type=Path, help="Write (t, chi(t)) samples to this file")
    charpoly.add_argument("--table-max", type=Fraction, default=Fraction(4), help="Largest sampled t")
    charpoly.add_argument("--table-steps", type=int, default=40, help="Number of sampling steps")

    hankel = commands.add_parser("hankel", parents=[form], help="Hankel matrix h(F) and its definiteness")
    hankel.add_argument(
        "--convention", choices=[c.value for c in HankelConvention], default=HankelConvention.SCALED.value
    )

    commands.add_parser("roots", parents=[source], help="Root counts and ray predicates of a polynomial in t")

    restrict = commands.add_parser("restrict", parents=[form], help="Restrict F to a subspace")
    target = restrict.add_mutually_exclusive_group(required=True)
    target.add_argument("--subset", type=_subset, help="Variables to keep, e.g. '1,2'")
    target.add_argument("--basis", type=_matrix, help="Basis matrix of the subspace (JSON)")

    commands.add_parser("schema", help="Print the JSON schema of the report")
    return parser


def _read_polynomial(args) -> str:
    if (args.polynomial is None) == (args.file is None):
        raise UsageError("give the polynomial inline or with --file, not both")
    if args.file is not None:
        try:
            return args.file.read_text(encoding="utf-8").strip()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e}")
    return args.polynomial


def _write_table(args, report: Report) -> None:
    chi = UniPoly(Fraction(c) for c in report.result["coefficients"])
    steps = max(args.table_steps, 1)
    nodes = [args.table_max * k / steps for k in range(steps + 1)]
    lines = [f"{t}\t{value}" for t, value in sample_table(chi, nodes)]
    args.table.write_text("# t\tchi(t)\n" + "\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(lines)} samples to {args.table}")


def _dispatch(args) -> Report:
    text = _read_polynomial(args)
    if args.command == "certify":
        return reports.certify_report(
            text,
            args.n,
            budget=args.budget,
            seed=args.seed,
            parallel=args.parallel,
            bases=args.basis,
            references=args.reference,
        )
    if args.command == "discriminant":
        return reports.discriminant_report(text, args.n)
    if args.command == "charpoly":
        report = reports.charpoly_report(text, args.n, subset=args.subset, parallel=args.parallel)
        if args.table is not None:
            _write_table(args, report)
        return report
    if args.command == "hankel":
        return reports.hankel_report(text, args.n, HankelConvention(args.convention))
    if args.command == "roots":
        return reports.roots_report(text)
    if args.command == "restrict":
        return reports.restrict_report(text, args.n, subset=args.subset, basis=args.basis)
    raise UsageError(f"unknown command {args.command}")


def _emit(report: Report, as_json: bool, out: TextIO) -> None:
    if as_json:
        out.write(report.model_dump_json(indent=2) + "\n")
    elif report.command in VALUE_KEYS:
        out.write(f"{report.result[VALUE_KEYS[report.command]]}\n")
    else:
        out.write(reports.render_summary(report) + "\n")


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Parse argv, execute one command, write its output; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            get_logger(args.log_level)
        if args.command == "schema":
            out.write(SCHEMA_PATH.read_text(encoding="utf-8"))
            return EXIT_OK
        report = _dispatch(args)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except CapacityError as e:
        err.write(f"capacity exceeded: {e}\n")
        return EXIT_CAPACITY
    except (InvariantViolation, DegenerateSpecializationError) as e:
        logger.error(f"Internal error: {e}")
        err.write(f"internal error: {e}\n")
        return EXIT_INTERNAL
    except (PositivityError, ValueError) as e:
        err.write(f"input error: {e}\n")
        return EXIT_USAGE

    _emit(report, args.json, out)
    if report.verdict is not None:
        return VERDICT_EXIT_CODES[report.verdict]
    return EXIT_OK

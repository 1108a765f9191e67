"""
Command-line front end.

    python cli.py construct --q 2 --n 3 --r-tuple 0,2
    python cli.py certify --q 2 --n 5 --h-family --out json
    python cli.py sweep --q-list 2,3 --n-range 3..5 --profiles h-family

Exit codes: 0 pass, 1 invalid input, 2 usage, 3 a check failed or could
not run (verdict "fail" or "incomplete").
"""

import argparse
import logging
import re
import sys
from typing import Optional, Sequence

from library.certify import (
    MvspCertifier,
    SWEEP_PROFILES,
    render_construct_text,
    render_report_text,
    render_sweep_csv,
)
from library.common_utils import CertifierContext, configure_logging
from library.gf import split_prime_power

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _n_range(text: str) -> tuple[int, int]:
    """'a..b', 'a-b' or a single integer."""
    match = re.fullmatch(r"\s*(\d+)\s*(?:(?:\.\.|-)\s*(\d+))?\s*", text)
    if match is None:
        raise argparse.ArgumentTypeError(f"expected a..b, a-b or an integer, got {text!r}")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) is not None else low
    return low, high


def _add_instance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, required=True, help="prime power q")
    parser.add_argument("--n", type=int, required=True, help="extension degree n")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--r-tuple", type=_int_list, help="profile r_0,...,r_t")
    group.add_argument("--h-family", action="store_true", help="profile (0, r(n))")
    group.add_argument("--gs-family", action="store_true", help="profile (0, 1)")
    group.add_argument("--norm-trace", action="store_true", help="profile (0, 1, ..., n-1)")
    parser.add_argument("--max-enum", type=int, default=None, help="bound on q^(2n) for the direct count")


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="cli.py", description="MVSP curve certifier")
    parser.add_argument("--log-level", default=None, help="logging level (default from MVSP_LOG_LEVEL or WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="build a profile and its polynomials")
    _add_instance_flags(construct)
    construct.add_argument("--out", choices=("text", "json"), default="text")

    certify = sub.add_parser("certify", help="run every check on one instance")
    _add_instance_flags(certify)
    certify.add_argument("--out", choices=("json", "text"), default="json")

    sweep = sub.add_parser("sweep", help="tabulate a range of instances")
    sweep.add_argument("--q-list", type=_int_list, required=True)
    sweep.add_argument("--n-range", type=_n_range, required=True)
    sweep.add_argument("--profiles", choices=SWEEP_PROFILES, default="h-family")
    sweep.add_argument("--out", choices=("csv",), default="csv")
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--max-enum", type=int, default=None)
    return parser.parse_args(argv)


def _family(args: argparse.Namespace) -> Optional[str]:
    if args.h_family:
        return "h"
    if args.gs_family:
        return "gs"
    if args.norm_trace:
        return "norm-trace"
    return None


def cmd_construct(args: argparse.Namespace) -> int:
    certifier = MvspCertifier(CertifierContext(max_enum=args.max_enum))
    family = _family(args)
    record = certifier.construct(args.q, args.n, r_tuple=args.r_tuple if family is None else None, family=family)
    print(record.model_dump_json(indent=2) if args.out == "json" else render_construct_text(record))
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    certifier = MvspCertifier(CertifierContext(max_enum=args.max_enum))
    family = _family(args)
    report = certifier.certify(args.q, args.n, r_tuple=args.r_tuple if family is None else None, family=family)
    print(report.model_dump_json(indent=2) if args.out == "json" else render_report_text(report))
    if report.verdict != "pass":
        for check in report.checks:
            if check.status != "pass":
                print(f"{check.status}: {check.name} {check.detail}".rstrip(), file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    context = CertifierContext(max_enum=args.max_enum, workers=args.workers)
    for q in args.q_list:
        split_prime_power(q)
    n_min, n_max = args.n_range
    rows = MvspCertifier(context).sweep(args.q_list, n_min, n_max, profiles=args.profiles)
    sys.stdout.write(render_sweep_csv(rows))
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "certify": cmd_certify,
    "sweep": cmd_sweep,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        configure_logging(args.log_level)
        return COMMANDS[args.command](args)
    except ValueError as exc:
        logger.error(f"Invalid input: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except RuntimeError as exc:
        logger.error(f"Computation failed: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())

import argparse
import sys

from cli.commands import cmd_check, cmd_enumerate, cmd_oracle, cmd_table, cmd_witness
from config import get_logger, set_log_level, settings
from exact.rational import parse_rational_list
from neumann.cases import MalformedName, UnsupportedSize
from neumann.roots import ConstraintViolated
from neumann.system import PlacementMismatch

logger = get_logger(__name__)

EXIT_USAGE = 64


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with 64 instead of argparse's 2, which is taken by Indeterminate."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational_list(text: str):
    try:
        return parse_rational_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=settings.seed, help="Sampling seed")
    common.add_argument(
        "--samples", type=int, default=settings.samples, help="Instances per case"
    )
    common.add_argument(
        "--polya-max",
        type=int,
        default=settings.polya_max,
        help="Largest Polya multiplier exponent tried before a sign is undecided",
    )
    common.add_argument(
        "--pivot",
        choices=["first", "minpq"],
        default=settings.pivot_policy,
        help="Pivot row: first mixed row, or the one with the fewest P·Q columns",
    )
    common.add_argument(
        "--format",
        choices=["text", "csv", "json"],
        default=settings.output_format,
        help="Output format",
    )
    common.add_argument(
        "--json", action="store_const", const="json", dest="format", help="Same as --format json"
    )
    common.add_argument("--output", type=str, default=None, help="Write to this file")
    common.add_argument(
        "--workers",
        type=int,
        default=settings.workers,
        help="Processes for table and oracle sweeps",
    )
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    return common


def _case_options() -> argparse.ArgumentParser:
    case = argparse.ArgumentParser(add_help=False)
    case.add_argument("--case", type=str, help="Case name, e.g. S13L12 or S1,3L1,2")
    case.add_argument("--n", type=int, default=None, help="Number of roots")
    case.add_argument("--subset", type=str, help="Subset S, e.g. 1,3")
    case.add_argument("--placement", type=str, help="Interval per root, e.g. 0,0")
    case.add_argument(
        "--force", action="store_true", help=f"Allow n above the cap ({settings.max_n})"
    )
    return case


def build_parser() -> CliParser:
    parser = CliParser(
        prog="python -m cli",
        description="Decide where the real roots of the Neumann polynomial U_S can lie",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    formatter = argparse.ArgumentDefaultsHelpFormatter

    check = subparsers.add_parser(
        "check",
        parents=[_common_options(), _case_options()],
        formatter_class=formatter,
        help="Decide one case",
    )
    check.add_argument("--trace", action="store_true", help="Print every elimination level")
    check.add_argument(
        "--entries", action="store_true", help="Include matrix entries in the trace"
    )
    check.set_defaults(handler=cmd_check)

    table = subparsers.add_parser(
        "table",
        parents=[_common_options()],
        formatter_class=formatter,
        help="Decide every case for n",
    )
    table.add_argument("--n", type=int, default=2, help="Number of roots")
    table.add_argument(
        "--golden",
        nargs="?",
        const=settings.golden_table,
        default=None,
        help="Compare verdicts with a golden CSV (case,verdict,step,pf)",
    )
    table.add_argument("--force", action="store_true", help="Allow n above the cap")
    table.set_defaults(handler=cmd_table)

    witness = subparsers.add_parser(
        "witness",
        parents=[_common_options(), _case_options()],
        formatter_class=formatter,
        help="Build and verify a positive solution for one instance",
    )
    witness.add_argument("--a", type=_rational_list, default=None, help="a values, e.g. 0,1,2")
    witness.add_argument(
        "--lambda", dest="lam", type=_rational_list, default=None, help="λ values, e.g. 1/4,3/4"
    )
    witness.add_argument(
        "--index", type=int, default=0, help="Sample index when --a/--lambda are omitted"
    )
    witness.set_defaults(handler=cmd_witness)

    enumerate_ = subparsers.add_parser(
        "enumerate",
        parents=[_common_options()],
        formatter_class=formatter,
        help="List placements for n",
    )
    enumerate_.add_argument("--n", type=int, required=True, help="Number of roots")
    enumerate_.set_defaults(handler=cmd_enumerate)

    oracle = subparsers.add_parser(
        "oracle",
        parents=[_common_options(), _case_options()],
        formatter_class=formatter,
        help="Cross-validate symbolic, instance and direct verdicts on sampled instances",
    )
    oracle.add_argument("--all", action="store_true", help="Every case for --n")
    oracle.set_defaults(handler=cmd_oracle, format="json")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_log_level("DEBUG")
    logger.info(f"Running {args.command}")
    try:
        return args.handler(args)
    except (
        MalformedName,
        UnsupportedSize,
        PlacementMismatch,
        ConstraintViolated,
        ValueError,
    ) as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

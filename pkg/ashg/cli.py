#
# Pieces shared by the command-line scripts: argument groups, the size
# constraint flags and the mapping from library errors to exit codes.
#
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from typing import Any, Callable, NoReturn, Sequence

from .constants import ExitCode, Keys, Preset
from .errors import InfeasibleError, ParseError, SizeGuardError
from .game import SizeConstraints
from .metrics import MetricsReport

logger = logging.getLogger(__name__)


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that exits with ExitCode.USAGE instead of argparse's 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f'{self.prog}: error: {message}\n')


def add_verbose(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--verbose", action="store_true", help="increase output verbosity")


def setup_logging(args: argparse.Namespace) -> None:
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO)


def positive_int_arg(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {value}')
    return value


def add_size_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=positive_int_arg, help="number of coalitions")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--equal", action="store_true", help="coalition sizes floor(n/k) or ceil(n/k)")
    group.add_argument("--epsilon", type=str, help="(k,1+e)-partition: at most (n/k)(1+e) players per coalition")
    group.add_argument("--min-sizes", type=str, help="comma-separated minimum size per coalition")


def min_sizes_arg(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(',')]
    except ValueError:
        raise ValueError(f'--min-sizes expects comma-separated integers, got {text!r}') from None
    return sizes


def constraints_from_args(args: argparse.Namespace, n: int, k: int, file_config: dict[str, Any] | None = None) -> SizeConstraints:
    """--equal, --epsilon E, --min-sizes m1,..,mk, an epsilon from the config file, or no bound at all."""
    if args.equal:
        return SizeConstraints.equal(n, k)
    if args.min_sizes:
        sizes = min_sizes_arg(args.min_sizes)
        if len(sizes) != k:
            raise ValueError(f'--min-sizes lists {len(sizes)} coalitions, k={k}')
        return SizeConstraints.at_least(n, sizes)
    epsilon = args.epsilon if args.epsilon is not None else (file_config or {}).get(Keys.EPSILON)
    if epsilon is not None:
        return SizeConstraints.balanced(n, k, epsilon)
    return SizeConstraints.from_preset(Preset.FREE, n, k)


def exit_code_for(error: BaseException) -> ExitCode:
    if isinstance(error, InfeasibleError):
        return ExitCode.INFEASIBLE
    if isinstance(error, SizeGuardError):
        return ExitCode.GUARD
    if isinstance(error, (ParseError, OSError, ValueError)):
        return ExitCode.INPUT
    raise error


def run_guarded(body: Callable[[], None], script_logger: logging.Logger) -> int:
    try:
        body()
    except (ValueError, OSError, RuntimeError) as e:
        code = exit_code_for(e)
        script_logger.error(f'{e}')
        return int(code)
    return int(ExitCode.OK)


def metrics_row(report: MetricsReport, **extra: Any) -> dict[str, Any]:
    return {**report.as_row(), **extra}


def emit_rows(rows: Sequence[dict[str, Any]], dest: str | os.PathLike[str] | None = None, append: bool = False) -> None:
    """CSV to stdout, or to a file; appending keeps a single header line."""
    if not rows:
        return
    fields = list(rows[0])
    if dest is None:
        writer = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        return
    fresh = not append or not os.path.exists(dest) or os.path.getsize(dest) == 0
    with open(dest, 'a' if append else 'w', encoding='utf-8', newline='') as fp:
        writer = csv.DictWriter(fp, fieldnames=fields, lineterminator='\n')
        if fresh:
            writer.writeheader()
        writer.writerows(rows)

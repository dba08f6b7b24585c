#!/usr/bin/env python3
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

# Necessary to load the local ashg package
if "NO_LOCAL_ASHG" not in os.environ and (Path(__file__).parent.parent / 'ashg').exists():
    sys.path.insert(0, str(Path(__file__).parent.parent))

from ashg import evaluate, read_edge_list, read_partition  # noqa: E402
from ashg.cli import UsageParser, add_verbose, emit_rows, metrics_row, run_guarded, setup_logging  # noqa: E402

logger = logging.getLogger("ashg-evaluate")


def evaluate_file(args: argparse.Namespace) -> None:
    game = read_edge_list(args.instance).game
    cs = read_partition(args.partition, game.n, args.k)
    report = evaluate(game, cs)
    logger.debug(f'{args.partition}: sizes {cs.sizes().tolist()}')
    emit_rows([metrics_row(report)])


def main(argv: list[str] | None = None) -> int:
    parser = UsageParser(prog="ashg-evaluate", description="Report welfare metrics of a given partition")
    parser.add_argument("instance",  type=str, help="edge-list instance file")
    parser.add_argument("partition", type=str, help="partition file, one coalition label per player")
    parser.add_argument("--k",       type=int, help="number of coalitions (default: largest label + 1)")
    add_verbose(parser)

    args = parser.parse_args(argv)
    setup_logging(args)

    return run_guarded(lambda: evaluate_file(args), logger)


if __name__ == '__main__':
    sys.exit(main())

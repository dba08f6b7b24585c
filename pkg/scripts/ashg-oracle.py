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

from ashg import (  # noqa: E402
    DEFAULT_K, DEFAULT_MAX_EXACT_PLAYERS, CoalitionStructure, DecisionInstance, Game, decide_egalitarian,
    decide_outdeg1_partition, enumerate_egalitarian_witnesses, evaluate, exact_max_egalitarian,
    exact_max_utilitarian, find_disjoint_cycles, read_edge_list, symmetric_degree2_partition, write_partition,
)
from ashg.cli import (  # noqa: E402
    UsageParser, add_size_arguments, add_verbose, constraints_from_args, emit_rows, metrics_row,
    min_sizes_arg, run_guarded, setup_logging,
)

logger = logging.getLogger("ashg-oracle")


def _answer(args: argparse.Namespace, game: Game, cs: CoalitionStructure | None, **extra: object) -> None:
    if cs is None:
        emit_rows([{'answer': 'no', **extra}])
        return
    emit_rows([{'answer': 'yes', **extra, **metrics_row(evaluate(game, cs))}])
    if args.out:
        write_partition(args.out, cs)


def run(args: argparse.Namespace) -> None:
    instance = read_edge_list(args.instance)
    game = instance.game
    cap = args.max_players

    if args.mode == 'cycles':
        lengths = min_sizes_arg(args.lengths)
        cycles = find_disjoint_cycles(game, lengths, cap)
        emit_rows([{'answer': 'no' if cycles is None else 'yes',
                    'cycles': '' if cycles is None else ' | '.join(' '.join(map(str, c)) for c in cycles)}])
        return
    if args.mode == 'outdeg1':
        sizes = min_sizes_arg(args.sizes)
        _answer(args, game, decide_outdeg1_partition(game, sizes, cap))
        return

    k = args.k if args.k is not None else instance.k_hint or DEFAULT_K
    if args.mode == 'degree2':
        _answer(args, game, symmetric_degree2_partition(game, k, strict=not args.lenient, max_players=cap))
        return

    constraints = constraints_from_args(args, game.n, k)
    if args.mode == 'egalitarian':
        cs, key = exact_max_egalitarian(game, k, constraints, cap)
        logger.info(f'* Optimal leximin key {list(key.sorted_utilities)}')
        _answer(args, game, cs)
    elif args.mode == 'utilitarian':
        cs, total = exact_max_utilitarian(game, k, constraints, cap)
        logger.info(f'* Maximum utilitarian total {total}')
        _answer(args, game, cs)
    elif args.mode == 'decide':
        decision = DecisionInstance(game, k, args.delta, constraints, equal_sized=bool(args.equal))
        _answer(args, game, decide_egalitarian(decision, cap), delta=args.delta)
    else:
        witnesses = enumerate_egalitarian_witnesses(game, k, constraints, args.delta, cap)
        emit_rows([{'delta': args.delta, 'witnesses': len(witnesses)}])
        for cs in witnesses:
            logger.debug(f'  {cs.as_tuple()}')


def main(argv: list[str] | None = None) -> int:
    parser = UsageParser(prog="ashg-oracle", description="Exact answers for small instances")
    parser.add_argument("instance", type=str, help="edge-list instance file")
    parser.add_argument("--mode", default="egalitarian",
                        choices=["egalitarian", "utilitarian", "decide", "witnesses", "outdeg1", "degree2", "cycles"],
                        help="question to answer (default: egalitarian)")
    add_size_arguments(parser)
    parser.add_argument("--delta", type=int, default=1, help="target egalitarian value for decide/witnesses")
    parser.add_argument("--sizes", type=str, help="outdeg1: comma-separated part sizes")
    parser.add_argument("--lengths", type=str, help="cycles: comma-separated minimum cycle lengths")
    parser.add_argument("--lenient", action="store_true", help="degree2: warn instead of failing when min degree <= k")
    parser.add_argument("--max-players", type=int, default=DEFAULT_MAX_EXACT_PLAYERS, help="refuse larger instances")
    parser.add_argument("--out", type=str, help="write the witness partition here")
    add_verbose(parser)

    args = parser.parse_args(argv)
    setup_logging(args)

    if args.mode == 'outdeg1' and not args.sizes:
        parser.error('--mode outdeg1 needs --sizes')
    if args.mode == 'cycles' and not args.lengths:
        parser.error('--mode cycles needs --lengths')

    return run_guarded(lambda: run(args), logger)


if __name__ == '__main__':
    sys.exit(main())

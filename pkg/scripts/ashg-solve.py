#!/usr/bin/env python3
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any

import numpy as np

# Necessary to load the local ashg package
if "NO_LOCAL_ASHG" not in os.environ and (Path(__file__).parent.parent / 'ashg').exists():
    sys.path.insert(0, str(Path(__file__).parent.parent))

from ashg import (  # noqa: E402
    DEFAULT_K, Algorithm, Keys, Schedule, read_edge_list, read_id_map, solve_pipeline,
    write_id_partition, write_partition,
)
from ashg.cli import (  # noqa: E402
    UsageParser, add_size_arguments, add_verbose, constraints_from_args, emit_rows, metrics_row,
    run_guarded, setup_logging,
)
from ashg.config import load_solver_config, merge_overrides, parse_init, solver_config_from  # noqa: E402

logger = logging.getLogger("ashg-solve")


def solve(args: argparse.Namespace) -> None:
    file_config = load_solver_config(args.config) if args.config else {}
    props: dict[str, Any] = merge_overrides(file_config, {
        Keys.ALGORITHM:        args.algorithm,
        Keys.INIT:             args.init,
        Keys.STEP_LIMIT:       args.steps,
        Keys.NO_IMPROVE_LIMIT: args.no_improve,
        Keys.RESTARTS:         args.restarts,
        Keys.SEED:             args.seed,
        Keys.K:                args.k,
        Keys.SCHEDULE:         args.schedule,
        Keys.SWAPS:            False if args.no_swaps else None,
    })

    instance = read_edge_list(args.instance)
    game = instance.game
    k = props.get(Keys.K)
    if k is None:
        k = instance.k_hint or DEFAULT_K
    constraints = constraints_from_args(args, game.n, k, props)
    init, init_path = parse_init(str(props.get(Keys.INIT, 'greedy')))
    algorithm = Algorithm(props.get(Keys.ALGORITHM, Algorithm.LEX))

    if props.get(Keys.SEED) is None:
        props[Keys.SEED] = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
        logger.info(f'* No seed given, using {props[Keys.SEED]}')
    config = solver_config_from(props)

    logger.info(f'* Solving {args.instance}: n={game.n}, k={k}, {algorithm.value} from {init.value}')
    result = solve_pipeline(game, constraints, config, algorithm, init, init_path)

    out = args.out or f'{args.instance}.part.{k}'
    write_partition(out, result.structure)
    logger.info(f'* Wrote partition to {out}')
    if args.ids:
        ids = read_id_map(args.ids)
        write_id_partition(f'{out}.ids', result.structure, ids)

    row = metrics_row(result.report, seed=config.seed)
    emit_rows([row])
    if args.metrics:
        emit_rows([{'instance': args.instance, 'algorithm': algorithm.value, 'init': init.value, 'k': k, **row}], args.metrics, append=True)


def main(argv: list[str] | None = None) -> int:
    parser = UsageParser(prog="ashg-solve", description="Search for an egalitarian k-coalition structure")
    parser.add_argument("instance", type=str, help="edge-list instance file")
    add_size_arguments(parser)
    parser.add_argument("--algorithm", choices=[a.value for a in Algorithm], help="solver to run after initialization (default: lex)")
    parser.add_argument("--init", type=str, help="random, greedy or file=PATH (default: greedy)")
    parser.add_argument("--steps", type=int, help="simulated annealing step limit")
    parser.add_argument("--no-improve", type=int, help="LexiClimb stop after this many idle coalition-pair draws")
    parser.add_argument("--restarts", type=int, help="LexiClimb restarts")
    parser.add_argument("--schedule", choices=[s.value for s in Schedule], help="annealing temperature schedule")
    parser.add_argument("--no-swaps", action="store_true", help="LexiClimb considers single-player moves only")
    parser.add_argument("--seed", type=int, help="solver seed (default: fresh entropy, echoed in the output)")
    parser.add_argument("--config", type=str, help="YAML solver config, command-line flags take precedence")
    parser.add_argument("--out", type=str, help="partition file (default: <instance>.part.<k>)")
    parser.add_argument("--metrics", type=str, help="append the metrics row to this CSV file")
    parser.add_argument("--ids", type=str, help="index,id map; also writes <out>.ids with id,label lines")
    add_verbose(parser)

    args = parser.parse_args(argv)
    setup_logging(args)

    if args.init is not None:
        try:
            parse_init(args.init)
        except ValueError as e:
            parser.error(f'--init: {e}')

    return run_guarded(lambda: solve(args), logger)


if __name__ == '__main__':
    sys.exit(main())

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

from ashg.bench import AGGREGATE_FIELDS, PER_RUN_FIELDS, ExperimentPlan, load_plan, run_plan, summary_table, write_csv  # noqa: E402
from ashg.cli import UsageParser, add_verbose, exit_code_for, run_guarded, setup_logging  # noqa: E402

logger = logging.getLogger("ashg-bench")


def bench(plan: ExperimentPlan, args: argparse.Namespace) -> None:
    output = args.out or plan.output or f'{plan.name}.csv'
    per_run = args.per_run or plan.per_run
    logger.info(f'* Running {plan.name}: {len(plan.arms)} arm(s), {plan.repetitions} repetition(s), seed {plan.seed}')
    result = run_plan(plan, progress=not args.no_progress)
    write_csv(output, result.rows, AGGREGATE_FIELDS)
    logger.info(f'* Wrote {len(result.rows)} rows to {output}')
    if per_run:
        write_csv(per_run, result.per_run, PER_RUN_FIELDS)
    if not args.quiet:
        print(summary_table(result.rows, args.tablefmt))  # noqa: NP100


def main(argv: list[str] | None = None) -> int:
    parser = UsageParser(prog="ashg-bench", description="Run a YAML experiment plan and write aggregated CSV")
    parser.add_argument("plan", type=str, help="YAML experiment plan")
    parser.add_argument("--seed", type=int, help="master seed, overrides the plan's")
    parser.add_argument("--repetitions", type=int, help="overrides the plan's repetition count")
    parser.add_argument("--out", type=str, help="aggregate CSV (default: the plan's output, else <name>.csv)")
    parser.add_argument("--per-run", type=str, help="also dump one row per run and arm")
    parser.add_argument("--tablefmt", type=str, default="pipe", help="tabulate format of the printed summary")
    parser.add_argument("--quiet", action="store_true", help="do not print the summary table")
    parser.add_argument("--no-progress", action="store_true", help="hide the progress bar")
    add_verbose(parser)

    args = parser.parse_args(argv)
    setup_logging(args)

    try:
        plan = load_plan(args.plan)
    except (ValueError, OSError) as e:
        logger.error(f'{e}')
        return int(exit_code_for(e))
    if args.seed is not None:
        plan = plan._replace(seed=args.seed)
    if args.repetitions is not None:
        if args.repetitions < 1:
            parser.error('--repetitions must be at least 1')
        plan = plan._replace(repetitions=args.repetitions)
    if plan.seed is None or plan.seed < 0:
        parser.error('experiments need a non-negative master seed (plan "seed" key or --seed)')

    return run_guarded(lambda: bench(plan, args), logger)


if __name__ == '__main__':
    sys.exit(main())

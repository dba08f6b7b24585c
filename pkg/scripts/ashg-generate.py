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
    GenSpec, contiguous_partition, gen_circulant, gen_random_tree, gen_symmetric_min_degree,
    gen_uniform_outdegree, ingest_friend_csv, interleaved_cycles_partition, write_edge_list, write_partition,
)
from ashg.cli import UsageParser, add_verbose, run_guarded, setup_logging  # noqa: E402

logger = logging.getLogger("ashg-generate")


def generate(args: argparse.Namespace) -> None:
    out = args.out if args.out is not None else sys.stdout
    if args.source == 'uniform':
        spec = GenSpec(args.n, args.d, not args.unweighted, args.seed)
        game = gen_uniform_outdegree(spec)
        provenance = {'generator': 'uniform', 'n': spec.n, 'd': spec.d, 'weighted': str(spec.weighted).lower(), 'seed': spec.seed}
        write_edge_list(out, game, args.k_hint, provenance)
    elif args.source == 'circulant':
        game = gen_circulant(args.n, args.k)
        write_edge_list(out, game, args.k, {'generator': 'circulant', 'n': args.n, 'k': args.k})
        if args.interleaved:
            write_partition(args.interleaved, interleaved_cycles_partition(args.n, args.k))
        if args.contiguous:
            write_partition(args.contiguous, contiguous_partition(args.n, args.k))
    elif args.source == 'friends':
        ids = args.ids or (None if args.out is None else f'{args.out}.ids')
        roster = ingest_friend_csv(args.csv, args.max_friends, not args.unweighted, ids)
        provenance = {'generator': 'friends', 'source': Path(args.csv).name, 'max_friends': args.max_friends, 'weighted': str(not args.unweighted).lower()}
        write_edge_list(out, roster.game, args.k_hint, provenance)
    elif args.source == 'symmetric':
        game = gen_symmetric_min_degree(args.n, args.min_degree, args.seed)
        write_edge_list(out, game, args.k_hint, {'generator': 'symmetric', 'n': args.n, 'min_degree': args.min_degree, 'seed': args.seed})
    else:
        game = gen_random_tree(args.n, args.seed)
        write_edge_list(out, game, args.k_hint, {'generator': 'tree', 'n': args.n, 'seed': args.seed})
    if args.out is not None:
        logger.info(f'* Wrote {args.source} instance to {args.out}')


def main(argv: list[str] | None = None) -> int:
    parser = UsageParser(prog="ashg-generate", description="Generate or ingest hedonic game instances as edge lists")
    parser.add_argument("--out", type=str, help="output edge-list file (default: stdout)")
    add_verbose(parser)
    sub = parser.add_subparsers(dest="source", required=True)

    uniform = sub.add_parser("uniform", help="every player ranks d uniformly drawn others")
    uniform.add_argument("n", type=int, help="number of players")
    uniform.add_argument("d", type=int, help="out-degree of every player")
    uniform.add_argument("--unweighted", action="store_true", help="weight 1 instead of Borda weights d..1")
    uniform.add_argument("--seed", type=int, default=0, help="generator seed")
    uniform.add_argument("--k-hint", type=int, default=0, help="coalition count stored in the header")

    circulant = sub.add_parser("circulant", help="each vertex points at its k successors")
    circulant.add_argument("n", type=int, help="number of players")
    circulant.add_argument("k", type=int, help="successors per vertex and number of parts")
    circulant.add_argument("--interleaved", type=str, help="also write the interleaved-cycles partition here")
    circulant.add_argument("--contiguous", type=str, help="also write the contiguous-blocks partition here")

    friends = sub.add_parser("friends", help="ingest a ranked friend-list CSV")
    friends.add_argument("csv", type=str, help="rows: student, friend1, friend2, ...")
    friends.add_argument("--max-friends", type=int, required=True, help="longest allowed friend list (Borda weight of rank 1)")
    friends.add_argument("--unweighted", action="store_true", help="weight 1 for every listed friend")
    friends.add_argument("--ids", type=str, help="write the index,id mapping here (default: <out>.ids)")
    friends.add_argument("--k-hint", type=int, default=0, help="coalition count stored in the header")

    symmetric = sub.add_parser("symmetric", help="random symmetric simple game with a degree floor")
    symmetric.add_argument("n", type=int, help="number of players")
    symmetric.add_argument("--min-degree", type=int, default=0, help="minimum degree")
    symmetric.add_argument("--seed", type=int, default=0, help="generator seed")
    symmetric.add_argument("--k-hint", type=int, default=0, help="coalition count stored in the header")

    tree = sub.add_parser("tree", help="random undirected tree")
    tree.add_argument("n", type=int, help="number of players")
    tree.add_argument("--seed", type=int, default=0, help="generator seed")
    tree.add_argument("--k-hint", type=int, default=0, help="coalition count stored in the header")

    args = parser.parse_args(argv)
    setup_logging(args)

    if args.source == 'uniform' and not 1 <= args.d < args.n:
        parser.error(f'out-degree d={args.d} must be in 1..n-1 for n={args.n}')

    return run_guarded(lambda: generate(args), logger)


if __name__ == '__main__':
    sys.exit(main())

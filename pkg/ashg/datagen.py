#
# Instance generation and ingestion.
#
from __future__ import annotations

import csv
import logging
import os
from typing import NamedTuple

import networkx as nx
import numpy as np

from .errors import ParseError
from .game import CoalitionStructure, Game
from .game_writer import write_id_map

logger = logging.getLogger(__name__)


class GenSpec(NamedTuple):
    n: int
    d: int
    weighted: bool = True
    seed: int = 0

    def check(self) -> None:
        if self.n < 2:
            raise ValueError(f'Need at least 2 players, got {self.n}')
        if not 1 <= self.d <= self.n - 1:
            raise ValueError(f'Out-degree must be in 1..{self.n - 1}, got {self.d}')


class Roster(NamedTuple):
    game: Game
    ids: list[str]  # ids[i] is the original identifier of player i


def gen_uniform_outdegree(spec: GenSpec) -> Game:
    """Every player ranks d distinct others drawn uniformly; weights d..1 in draw order, or all 1."""
    spec.check()
    n, d = spec.n, spec.d
    rng = np.random.default_rng(spec.seed)
    weights = np.zeros((n, n), dtype = np.int64)
    ranks = np.arange(d, 0, -1) if spec.weighted else np.ones(d, dtype = np.int64)
    for i in range(n):
        others = np.delete(np.arange(n), i)
        weights[i, rng.choice(others, size = d, replace = False)] = ranks
    return Game.from_matrix(weights)


def _check_divisible(n: int, k: int) -> int:
    if k < 1 or n % k != 0:
        raise ValueError(f'k={k} must divide n={n}')
    return n // k


def gen_circulant(n: int, k: int) -> Game:
    _check_divisible(n, k)
    if k >= n:
        raise ValueError(f'Circulant needs k < n, got n={n}, k={k}')
    weights = np.zeros((n, n), dtype = np.int64)
    players = np.arange(n)
    for step in range(1, k + 1):
        weights[players, (players + step) % n] = 1
    return Game.from_matrix(weights)


def interleaved_cycles_partition(n: int, k: int) -> CoalitionStructure:
    _check_divisible(n, k)
    return CoalitionStructure(np.arange(n) % k, k)


def contiguous_partition(n: int, k: int) -> CoalitionStructure:
    m = _check_divisible(n, k)
    return CoalitionStructure(np.arange(n) // m, k)


def gen_symmetric_min_degree(n: int, min_degree: int, seed: int = 0, p: float = 0.3) -> Game:
    """Random symmetric simple game: G(n, p) plus extra edges until every degree reaches min_degree."""
    if not 0 <= min_degree <= n - 1:
        raise ValueError(f'Minimum degree must be in 0..{n - 1}, got {min_degree}')
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    adj = upper | upper.T
    for v in range(n):
        missing = min_degree - int(adj[v].sum())
        if missing > 0:
            candidates = np.flatnonzero(~adj[v])
            candidates = candidates[candidates != v]
            picks = rng.choice(candidates, size = missing, replace = False)
            adj[v, picks] = adj[picks, v] = True
    return Game.from_matrix(adj.astype(np.int64))


def gen_random_tree(n: int, seed: int = 0) -> Game:
    # uniform labelled tree from a random Pruefer sequence
    if n < 2:
        raise ValueError(f'A tree needs at least 2 players, got {n}')
    rng = np.random.default_rng(seed)
    sequence = [int(x) for x in rng.integers(n, size = n - 2)]
    tree = nx.from_prufer_sequence(sequence) if n > 2 else nx.path_graph(2)
    return Game.from_matrix(nx.to_numpy_array(tree, nodelist = range(n), dtype = np.int64))


def ingest_friend_csv(
    path: os.PathLike[str] | str, max_friends: int, weighted: bool = True,
    mapping_path: os.PathLike[str] | str | None = None,
) -> Roster:
    """Rows are "student, friend1, friend2, ..." with friends in preference order.

    Rank r gets weight max_friends - r + 1 when weighted, 1 otherwise. Students
    that only appear as friends become players without preferences.
    """
    if max_friends < 1:
        raise ValueError(f'max_friends must be positive, got {max_friends}')
    index: dict[str, int] = {}
    rows: list[tuple[int, int, list[str]]] = []

    def intern(ident: str) -> int:
        return index.setdefault(ident, len(index))

    with open(path, 'r', encoding = 'utf-8', newline = '') as fp:
        reader = csv.reader(fp, skipinitialspace = True)
        for fields in reader:
            line_num = reader.line_num
            cells = [f.strip() for f in fields]
            while cells and not cells[-1]:
                cells.pop()
            if not cells:
                continue
            if not cells[0] or any(not c for c in cells[1:]):
                raise ParseError(f'Malformed row {fields!r}: empty id', path, line_num)
            student, friends = cells[0], cells[1:]
            if student in friends:
                raise ParseError(f'Student {student!r} lists themself as a friend', path, line_num)
            if len(set(friends)) != len(friends):
                dup = next(f for f in friends if friends.count(f) > 1)
                raise ParseError(f'Friend {dup!r} listed twice for {student!r}', path, line_num)
            if len(friends) > max_friends:
                raise ParseError(f'{student!r} lists {len(friends)} friends, at most {max_friends} allowed', path, line_num)
            if student in index and any(r[0] == index[student] for r in rows):
                raise ParseError(f'Student {student!r} has more than one row', path, line_num)
            rows.append((intern(student), line_num, friends))
            for friend in friends:
                intern(friend)

    values: dict[tuple[int, int], int] = {}
    for i, _, friends in rows:
        for rank, friend in enumerate(friends, 1):
            values[(i, intern(friend))] = max_friends - rank + 1 if weighted else 1
    ids = list(index)
    listed = {i for i, _, _ in rows}
    for ident, i in index.items():
        if i not in listed:
            logger.debug(f'{ident!r} only appears as a friend')
    game = Game(len(ids), values)
    if mapping_path is not None:
        write_id_map(mapping_path, ids)
    logger.info(f'{path}: {game.n} students, {len(values)} preferences')
    return Roster(game, ids)

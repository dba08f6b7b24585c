#
# Exact and constructive ground truth at desk scale.
#
# Exhaustive operations enumerate assignment vectors in lexicographic order
# (canonical labelling when all coalitions share the same bounds, i.e. player 0
# always in coalition 0 and labels opened in order) and evaluate them in numpy
# batches. Cycle packing and small-subdigraph searches are plain backtracking.
#
from __future__ import annotations

import functools
import itertools
import logging
from typing import AbstractSet, Iterator, NamedTuple, Sequence

import networkx as nx
import numpy as np
import numpy.typing as npt
from tqdm import tqdm

from .constants import DEFAULT_MAX_EXACT_PLAYERS, ENUMERATION_CHUNK
from .errors import SizeGuardError
from .game import CoalitionStructure, Game, SizeConstraints
from .metrics import LeximinKey, leximin_argmax

logger = logging.getLogger(__name__)

# tables for games up to this size are kept between calls
CACHED_TABLE_PLAYERS = 12


class DecisionInstance(NamedTuple):
    game: Game
    k: int
    delta: int
    constraints: SizeConstraints
    equal_sized: bool = False

    @classmethod
    def equal(cls, game: Game, k: int, delta: int) -> DecisionInstance:
        return cls(game, k, delta, SizeConstraints.equal(game.n, k), equal_sized = True)


def _guard(n: int, max_players: int) -> None:
    if n > max_players:
        raise SizeGuardError(f'Exhaustive search is capped at {max_players} players, instance has {n}')


def _check_constraints(game: Game, k: int, constraints: SizeConstraints) -> None:
    if constraints.k != k:
        raise ValueError(f'Constraints describe {constraints.k} coalitions, k={k}')
    constraints.check(game.n)


#
# structure enumeration
#


def _enumerate_chunks(n: int, constraints: SizeConstraints) -> Iterator[npt.NDArray[np.int8]]:
    k = constraints.k
    lo, hi = constraints.min_sizes, constraints.max_sizes
    canonical = constraints.is_uniform
    labels = [-1] * n
    opened = [0] * (n + 1)  # opened[i] = labels used by players 0..i-1
    sizes = [0] * k
    buf: list[list[int]] = []
    i = 0
    while i >= 0:
        if i == n:
            buf.append(labels.copy())
            if len(buf) == ENUMERATION_CHUNK:
                yield np.array(buf, dtype = np.int8)
                buf = []
            i -= 1
            continue
        c = labels[i]
        if c >= 0:
            sizes[c] -= 1
        limit = min(opened[i] + 1, k) if canonical else k
        c += 1
        while c < limit:
            if sizes[c] < hi[c]:
                sizes[c] += 1
                deficit = sum(max(0, lo[x] - sizes[x]) for x in range(k))
                if deficit <= n - i - 1:
                    break
                sizes[c] -= 1
            c += 1
        if c < limit:
            labels[i] = c
            opened[i + 1] = max(opened[i], c + 1)
            i += 1
        else:
            labels[i] = -1
            i -= 1
    if buf:
        yield np.array(buf, dtype = np.int8)


@functools.lru_cache(maxsize = 32)
def _cached_table(n: int, constraints: SizeConstraints) -> tuple[npt.NDArray[np.int8], ...]:
    chunks = tuple(_enumerate_chunks(n, constraints))
    logger.debug(f'Cached {sum(len(c) for c in chunks)} structures for n={n}, bounds {constraints}')
    return chunks


def iter_structure_chunks(n: int, constraints: SizeConstraints) -> Iterator[npt.NDArray[np.int8]]:
    if n <= CACHED_TABLE_PLAYERS:
        yield from _cached_table(n, constraints)
    else:
        yield from tqdm(_enumerate_chunks(n, constraints), desc = 'Enumerating', unit = 'chunk', leave = False, disable = None)


def _chunk_profiles(weights: npt.NDArray[np.int64], chunk: npt.NDArray[np.int8]) -> npt.NDArray[np.int64]:
    same = chunk[:, :, None] == chunk[:, None, :]
    return (same * weights[None, :, :]).sum(axis = 2)


#
# exhaustive oracles
#


def exact_max_egalitarian(
    game: Game, k: int, constraints: SizeConstraints, max_players: int = DEFAULT_MAX_EXACT_PLAYERS,
) -> tuple[CoalitionStructure, LeximinKey]:
    _guard(game.n, max_players)
    _check_constraints(game, k, constraints)
    best_key: tuple[int, ...] | None = None
    best_row: npt.NDArray[np.int8] | None = None
    for chunk in iter_structure_chunks(game.n, constraints):
        keys = np.sort(_chunk_profiles(game.weights, chunk), axis = 1)
        idx = leximin_argmax(keys)
        key = tuple(int(x) for x in keys[idx])
        # strict: the earliest (lexicographically smallest) assignment wins ties
        if best_key is None or key > best_key:
            best_key, best_row = key, chunk[idx]
    assert best_key is not None and best_row is not None
    return CoalitionStructure(best_row, k), LeximinKey(best_key)


def exact_max_utilitarian(
    game: Game, k: int, constraints: SizeConstraints, max_players: int = DEFAULT_MAX_EXACT_PLAYERS,
) -> tuple[CoalitionStructure, int]:
    _guard(game.n, max_players)
    _check_constraints(game, k, constraints)
    best: tuple[int, tuple[int, ...]] | None = None
    best_row: npt.NDArray[np.int8] | None = None
    for chunk in iter_structure_chunks(game.n, constraints):
        profiles = _chunk_profiles(game.weights, chunk)
        totals = profiles.sum(axis = 1)
        top = np.flatnonzero(totals == totals.max())
        keys = np.sort(profiles[top], axis = 1)
        idx = top[leximin_argmax(keys)]
        cand = (int(totals[idx]), tuple(int(x) for x in np.sort(profiles[idx])))
        if best is None or cand > best:
            best, best_row = cand, chunk[idx]
    assert best is not None and best_row is not None
    return CoalitionStructure(best_row, k), best[0]


def _check_decision(instance: DecisionInstance) -> None:
    if instance.k < 1:
        raise ValueError(f'Coalition count must be positive, got {instance.k}')
    if instance.delta < 0:
        raise ValueError(f'Target egalitarian value must be non-negative, got {instance.delta}')
    if instance.equal_sized and instance.constraints != SizeConstraints.equal(instance.game.n, instance.k):
        raise ValueError('Equal-sized decision requires the equal size preset')


def decide_egalitarian(instance: DecisionInstance, max_players: int = DEFAULT_MAX_EXACT_PLAYERS) -> CoalitionStructure | None:
    _check_decision(instance)
    game = instance.game
    _guard(game.n, max_players)
    _check_constraints(game, instance.k, instance.constraints)
    for chunk in iter_structure_chunks(game.n, instance.constraints):
        hits = np.flatnonzero(_chunk_profiles(game.weights, chunk).min(axis = 1) >= instance.delta)
        if hits.size:
            return CoalitionStructure(chunk[hits[0]], instance.k)
    return None


def enumerate_egalitarian_witnesses(
    game: Game, k: int, constraints: SizeConstraints, delta: int, max_players: int = DEFAULT_MAX_EXACT_PLAYERS,
) -> list[CoalitionStructure]:
    _guard(game.n, max_players)
    _check_constraints(game, k, constraints)
    found: list[CoalitionStructure] = []
    for chunk in iter_structure_chunks(game.n, constraints):
        for idx in np.flatnonzero(_chunk_profiles(game.weights, chunk).min(axis = 1) >= delta):
            found.append(CoalitionStructure(chunk[idx], k))
    return found


#
# reduction gadget
#


def augment_universal_players(game: Game, k: int) -> Game:
    """Add n*(k-1) players who value every original player at 1.

    Nobody values the new players, so original utilities are unchanged.
    """
    if not game.is_simple:
        raise ValueError('The universal-player gadget is defined for simple games only')
    if k < 1:
        raise ValueError(f'Coalition count must be positive, got {k}')
    n = game.n
    weights = np.zeros((n * k, n * k), dtype = np.int64)
    weights[:n, :n] = game.weights
    weights[n:, :n] = 1
    return Game.from_matrix(weights)


#
# subdigraph and cycle searches
#


def min_out_weight(game: Game, vertices: Sequence[int] | AbstractSet[int]) -> int:
    idx = np.fromiter(sorted(vertices), dtype = np.int64)
    if idx.size == 0:
        raise ValueError('Empty vertex set')
    return int(game.weights[np.ix_(idx, idx)].sum(axis = 1).min())


def _pack_cycles(
    graph: nx.Graph, remaining: frozenset[int], lengths: Sequence[int], directed: bool,
) -> list[list[int]] | None:
    # undirected packing only needs chordless cycles: any cycle's vertex set holds one
    if not lengths:
        return []
    shortest = 2 if directed else 3
    need = [max(m, shortest) for m in lengths]
    budget = len(remaining) - sum(need[1:])
    if budget < need[0]:
        return None
    sub = graph.subgraph(remaining)
    cycles = nx.simple_cycles(sub, length_bound = budget) if directed else nx.chordless_cycles(sub, length_bound = budget)
    for cycle in cycles:
        if len(cycle) < need[0]:
            continue
        tail = _pack_cycles(graph, remaining - frozenset(cycle), lengths[1:], directed)
        if tail is not None:
            return [list(cycle)] + tail
    return None


def find_disjoint_cycles(
    game: Game, lengths: Sequence[int], max_players: int = DEFAULT_MAX_EXACT_PLAYERS,
) -> list[list[int]] | None:
    _guard(game.n, max_players)
    if any(m < 1 for m in lengths):
        raise ValueError(f'Cycle length bounds must be positive, got {list(lengths)}')
    return _pack_cycles(game.to_digraph(), frozenset(range(game.n)), tuple(lengths), directed = True)


class _Outdeg1Search:
    """Finds disjoint vertex sets S_i with |S_i| >= sizes[i] in which every
    member has an out-neighbour inside S_i.

    Every such set holds either a cycle of length >= m or a set of the same
    kind with m .. 2m-2 vertices, so seeds are cycles or small sets.
    """

    def __init__(self, game: Game):
        self.graph = game.to_digraph()
        self.adj = game.weights > 0
        self.n = game.n
        self._small: dict[int, list[frozenset[int]]] = {}
        self._cycles: dict[tuple[frozenset[int], tuple[int, ...]], list[list[int]] | None] = {}
        self._seeds: dict[tuple[frozenset[int], tuple[int, ...]], list[frozenset[int]] | None] = {}

    def small_sets(self, vertices: frozenset[int], m: int) -> Iterator[frozenset[int]]:
        if m not in self._small:
            found = []
            for size in range(m, 2 * m - 1):
                for combo in itertools.combinations(range(self.n), size):
                    idx = list(combo)
                    if self.adj[np.ix_(idx, idx)].any(axis = 1).all():
                        found.append(frozenset(combo))
            self._small[m] = found
        return (s for s in self._small[m] if s <= vertices)

    def cycles(self, vertices: frozenset[int], lengths: tuple[int, ...]) -> list[list[int]] | None:
        key = (vertices, lengths)
        if key not in self._cycles:
            self._cycles[key] = _pack_cycles(self.graph, vertices, lengths, directed = True)
        return self._cycles[key]

    def seeds(self, vertices: frozenset[int], sizes: tuple[int, ...]) -> list[frozenset[int]] | None:
        key = (vertices, sizes)
        if key not in self._seeds:
            self._seeds[key] = self._search(vertices, sizes)
        return self._seeds[key]

    def _search(self, vertices: frozenset[int], sizes: tuple[int, ...]) -> list[frozenset[int]] | None:
        if sum(sizes) > len(vertices):
            return None
        cycles = self.cycles(vertices, sizes)
        if cycles is not None:
            return [frozenset(c) for c in cycles]
        k = len(sizes)
        if k == 1:
            return next(([s] for s in self.small_sets(vertices, sizes[0])), None)
        if k == 2:
            m1, m2 = sizes
            for d1 in self.small_sets(vertices, m1):
                rest = self.cycles(vertices - d1, (m2,))
                if rest is not None:
                    return [d1, frozenset(rest[0])]
            for d2 in self.small_sets(vertices, m2):
                rest = self.cycles(vertices - d2, (m1,))
                if rest is not None:
                    return [frozenset(rest[0]), d2]
            for d1 in self.small_sets(vertices, m1):
                for d2 in self.small_sets(vertices - d1, m2):
                    return [d1, d2]
            return None
        for i in range(k):
            others = sizes[:i] + sizes[i + 1:]
            for d in self.small_sets(vertices, sizes[i]):
                rest_seeds = self.seeds(vertices - d, others)
                if rest_seeds is not None:
                    return rest_seeds[:i] + [d] + rest_seeds[i:]
        return None


def decide_outdeg1_partition(
    game: Game, sizes: Sequence[int], max_players: int = DEFAULT_MAX_EXACT_PLAYERS,
) -> CoalitionStructure | None:
    _guard(game.n, max_players)
    if not sizes or any(m < 1 for m in sizes):
        raise ValueError(f'Part sizes must be positive, got {list(sizes)}')
    n = game.n
    adj = game.weights > 0
    # a vertex without out-neighbours has utility 0 in every partition
    if sum(sizes) > n or not adj.any(axis = 1).all():
        return None
    seeds = _Outdeg1Search(game).seeds(frozenset(range(n)), tuple(sizes))
    if seeds is None:
        return None
    parts = [set(s) for s in seeds]
    outside = set(range(n)).difference(*parts)
    changed = True
    while changed:
        changed = False
        for v in sorted(outside):
            for part in parts:
                if any(adj[v, u] for u in part):
                    part.add(v)
                    outside.discard(v)
                    changed = True
                    break
    # what is left only points inside itself, so it can join any part
    parts[0] |= outside
    return CoalitionStructure.from_coalitions(parts, n)


def symmetric_degree2_partition(
    game: Game, k: int, strict: bool = True, max_players: int = DEFAULT_MAX_EXACT_PLAYERS,
) -> CoalitionStructure | None:
    if not game.is_symmetric or not game.is_simple:
        raise ValueError('Degree-2 construction needs a symmetric simple game')
    _guard(game.n, max_players)
    if k < 1:
        raise ValueError(f'Coalition count must be positive, got {k}')
    n = game.n
    graph = game.to_graph()
    cycles = _pack_cycles(graph, frozenset(range(n)), (3,) * k, directed = False)
    if cycles is None:
        return None
    min_degree = int(game.out_degrees().min())
    if min_degree <= k:
        message = f'Minimum degree {min_degree} is not above k={k}, the construction may leave a vertex with fewer than 2 neighbours'
        if strict:
            raise ValueError(message)
        logger.warning(message)
    parts = [set(c) for c in cycles]
    outside = set(range(n)).difference(*parts)
    changed = True
    while changed:
        changed = False
        for v in sorted(outside):
            for part in parts:
                if sum(1 for u in graph[v] if u in part) >= 2:
                    part.add(v)
                    outside.discard(v)
                    changed = True
                    break
    parts[0] |= outside
    return CoalitionStructure.from_coalitions(parts, n)

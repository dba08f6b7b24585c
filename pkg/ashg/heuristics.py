#
# Local search for egalitarian coalition structures: simulated annealing on
# the n*min - count(min) score, and leximin hill climbing with restarts.
#
# Both solvers keep a working assignment plus the coalition weight matrix
# C[i, c] = sum of player i's values for the members of c, so a candidate
# profile costs O(n) and a whole coalition-pair neighbourhood one numpy batch.
#
from __future__ import annotations

import logging
import math
from typing import Callable, NamedTuple, Union

import numpy as np
import numpy.typing as npt

from .constants import (
    DEFAULT_BASE_TEMPERATURE, DEFAULT_RESTARTS, NO_IMPROVE_FACTOR, STEP_LIMIT_FACTOR,
    Algorithm, InitKind, MoveKind, Schedule,
)
from .errors import ParseError
from .game import CoalitionStructure, Game, SizeConstraints, coalition_weights, validate
from .game_reader import read_partition
from .metrics import MetricsReport, evaluate, leximin_argmax, leximin_greater, leximin_key, sa_score

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.SeedSequence, np.random.Generator, None]
RestartInit = Callable[[np.random.Generator], CoalitionStructure]


class SolverConfig(NamedTuple):
    step_limit: int | None = None        # SA steps, None means STEP_LIMIT_FACTOR * n * k
    no_improve_limit: int | None = None  # LexiClimb stop, None means NO_IMPROVE_FACTOR * k
    restarts: int = DEFAULT_RESTARTS
    seed: int = 0
    schedule: Schedule = Schedule.LINEAR
    base_temperature: float = DEFAULT_BASE_TEMPERATURE
    swaps: bool = True

    def resolve(self, n: int, k: int) -> SolverConfig:
        config = self._replace(
            step_limit = STEP_LIMIT_FACTOR * n * k if self.step_limit is None else self.step_limit,
            no_improve_limit = NO_IMPROVE_FACTOR * k if self.no_improve_limit is None else self.no_improve_limit,
            schedule = Schedule(self.schedule),
        )
        assert config.step_limit is not None and config.no_improve_limit is not None
        if config.step_limit < 0:
            raise ValueError(f'step_limit must be non-negative, got {config.step_limit}')
        if config.no_improve_limit < 1:
            raise ValueError(f'no_improve_limit must be positive, got {config.no_improve_limit}')
        if config.restarts < 0:
            raise ValueError(f'restarts must be non-negative, got {config.restarts}')
        if not 0 <= config.seed < 2 ** 64:
            raise ValueError(f'seed must be a 64-bit unsigned integer, got {config.seed}')
        if config.base_temperature < 0:
            raise ValueError(f'base_temperature must be non-negative, got {config.base_temperature}')
        return config

    def temperature(self, step: int) -> float:
        assert self.step_limit
        frac = step / self.step_limit
        if self.schedule == Schedule.LITERAL:
            return self.base_temperature * frac
        return self.base_temperature * (1.0 - frac)


class MoveOrSwap(NamedTuple):
    kind: MoveKind
    source: int
    target: int
    a: int
    b: int = -1  # swap partner in target, unused for moves


class SolveResult(NamedTuple):
    structure: CoalitionStructure
    report: MetricsReport
    init_structure: CoalitionStructure
    config: SolverConfig


class _Working:
    """Mutable coalition structure with incrementally maintained utilities."""

    def __init__(self, game: Game, cs: CoalitionStructure, constraints: SizeConstraints):
        self.weights = game.weights
        self.k = cs.k
        self.labels = cs.assignment.copy()
        self.contrib = coalition_weights(game, cs)
        self.sizes = cs.sizes()
        self.lo = np.array(constraints.min_sizes, dtype = np.int64)
        self.hi = np.array(constraints.max_sizes, dtype = np.int64)
        self._players = np.arange(cs.n)
        self.utilities = self.contrib[self._players, self.labels]

    def members(self, label: int) -> npt.NDArray[np.int64]:
        return np.flatnonzero(self.labels == label)

    def move_legal(self, source: int, target: int) -> bool:
        return source != target and self.sizes[source] > self.lo[source] and self.sizes[target] < self.hi[target]

    def candidate(self, step: MoveOrSwap) -> npt.NDArray[np.int64]:
        w = self.weights
        in_src = self.labels == step.source
        in_dst = self.labels == step.target
        if step.kind == MoveKind.MOVE:
            col = w[:, step.a]
            new = self.utilities - col * in_src + col * in_dst
            new[step.a] = self.contrib[step.a, step.target]
            return new
        diff = w[:, step.b] - w[:, step.a]
        new = self.utilities + diff * in_src - diff * in_dst
        new[step.a] = self.contrib[step.a, step.target] - w[step.a, step.b]
        new[step.b] = self.contrib[step.b, step.source] - w[step.b, step.a]
        return new

    def apply(self, step: MoveOrSwap) -> None:
        w = self.weights
        self.contrib[:, step.source] -= w[:, step.a]
        self.contrib[:, step.target] += w[:, step.a]
        self.labels[step.a] = step.target
        if step.kind == MoveKind.SWAP:
            self.contrib[:, step.target] -= w[:, step.b]
            self.contrib[:, step.source] += w[:, step.b]
            self.labels[step.b] = step.source
        else:
            self.sizes[step.source] -= 1
            self.sizes[step.target] += 1
        self.utilities = self.contrib[self._players, self.labels]

    def structure(self) -> CoalitionStructure:
        return CoalitionStructure(self.labels.copy(), self.k)


def _check_init(game: Game, init: CoalitionStructure, constraints: SizeConstraints) -> None:
    if init.n != game.n:
        raise ValueError(f'Initial structure covers {init.n} players, game has {game.n}')
    report = validate(init, constraints)
    if not report.ok:
        raise ValueError(f'Initial structure violates size bounds: {list(report.violations)}')


#
# initialization
#


def random_balanced_partition(n: int, k: int, constraints: SizeConstraints, seed: Seed = None) -> CoalitionStructure:
    if constraints.k != k:
        raise ValueError(f'Constraints describe {constraints.k} coalitions, k={k}')
    constraints.check(n)
    rng = np.random.default_rng(seed)
    sizes = list(constraints.min_sizes)
    for _ in range(n - sum(sizes)):
        open_labels = [c for c in range(k) if sizes[c] < constraints.max_sizes[c]]
        c = min(open_labels, key = lambda c: (sizes[c], c))
        sizes[c] += 1
    labels = np.repeat(np.arange(k, dtype = np.int64), sizes)
    assignment = np.empty(n, dtype = np.int64)
    assignment[rng.permutation(n)] = labels
    return CoalitionStructure(assignment, k)


def greedy_utilitarian_init(game: Game, k: int, constraints: SizeConstraints, seed: Seed = None) -> CoalitionStructure:
    """Seed k coalitions with weakly connected players, then repeatedly place the
    unassigned player with the largest tie to some non-full coalition."""
    n = game.n
    if constraints.k != k:
        raise ValueError(f'Constraints describe {constraints.k} coalitions, k={k}')
    constraints.check(n)
    rng = np.random.default_rng(seed)
    ties = game.weights + game.weights.T
    degree = ties.sum(axis = 1)
    labels = np.full(n, -1, dtype = np.int64)

    seeds = [int(rng.choice(np.flatnonzero(degree == degree.max())))]
    for _ in range(1, k):
        free = np.flatnonzero(labels == -1)
        free = free[~np.isin(free, seeds)]
        attach = ties[np.ix_(free, seeds)].sum(axis = 1)
        # least attached, then highest degree, then lowest index
        seeds.append(int(free[np.lexsort((free, -degree[free], attach))[0]]))
    labels[seeds] = np.arange(k)
    sizes = np.ones(k, dtype = np.int64)
    lo = np.array(constraints.min_sizes, dtype = np.int64)
    hi = np.array(constraints.max_sizes, dtype = np.int64)
    gain = ties[:, seeds].copy()  # gain[u, c] = tie strength of u to coalition c

    for remaining in range(n - k, 0, -1):
        deficit = int(np.maximum(lo - sizes, 0).sum())
        allowed = sizes < lo if remaining == deficit else sizes < hi
        scores = np.where(allowed[None, :], gain, -1)
        scores[labels != -1] = -1
        u, c = (int(x) for x in np.unravel_index(np.argmax(scores), scores.shape))
        labels[u] = c
        sizes[c] += 1
        gain[:, c] += ties[:, u]
    return CoalitionStructure(labels, k)


#
# simulated annealing
#


def _draw_sa_step(work: _Working, rng: np.random.Generator) -> MoveOrSwap:
    # draw order: kind, then coalitions, then players
    k = work.k
    if rng.integers(2) == 0:
        targets_open = work.sizes < work.hi
        sources = [c for c in range(k) if work.sizes[c] > work.lo[c] and np.any(np.delete(targets_open, c))]
        if sources:
            c1 = int(rng.choice(sources))
            targets = [c for c in range(k) if c != c1 and targets_open[c]]
            c2 = int(rng.choice(targets))
            return MoveOrSwap(MoveKind.MOVE, c1, c2, int(rng.choice(work.members(c1))))
    c1, c2 = (int(c) for c in rng.choice(k, 2, replace = False))
    return MoveOrSwap(MoveKind.SWAP, c1, c2, int(rng.choice(work.members(c1))), int(rng.choice(work.members(c2))))


def simulated_annealing(game: Game, init: CoalitionStructure, constraints: SizeConstraints, config: SolverConfig) -> CoalitionStructure:
    _check_init(game, init, constraints)
    config = config.resolve(game.n, init.k)
    assert config.step_limit is not None
    if config.step_limit == 0 or init.k == 1:
        return init
    rng = np.random.default_rng(config.seed)
    work = _Working(game, init, constraints)
    n = game.n
    current = sa_score(work.utilities, n)
    best_score, best_labels = current, work.labels.copy()
    accepted = 0
    for step in range(config.step_limit):
        candidate = _draw_sa_step(work, rng)
        score = sa_score(work.candidate(candidate), n)
        delta = score - current
        if delta < 0:
            temp = config.temperature(step)
            if temp <= 0 or rng.random() >= math.exp(delta / temp):
                continue
        work.apply(candidate)
        current = score
        accepted += 1
        if current > best_score:
            best_score, best_labels = current, work.labels.copy()
    logger.debug(f'SA: {accepted}/{config.step_limit} steps accepted, best score {best_score}')
    return CoalitionStructure(best_labels, init.k)


#
# leximin climbing
#


def _best_pair_step(work: _Working, c1: int, c2: int, swaps: bool) -> MoveOrSwap | None:
    """Leximin-best improving move (c1 -> c2) or swap between c1 and c2, if any."""
    w, contrib = work.weights, work.contrib
    p1, p2 = work.members(c1), work.members(c2)
    n1, n2 = p1.size, p2.size
    local = np.concatenate((p1, p2))
    # only the two coalitions change, so comparing their members' utilities decides
    current = np.sort(work.utilities[local])
    sign = np.concatenate((-np.ones(n1, dtype = np.int64), np.ones(n2, dtype = np.int64)))
    base = work.utilities[local]

    best: tuple[npt.NDArray[np.int64], MoveOrSwap] | None = None
    if work.move_legal(c1, c2):
        new = base[None, :] + sign[None, :] * w[np.ix_(local, p1)].T
        new[np.arange(n1), np.arange(n1)] = contrib[p1, c2]
        keys = np.sort(new, axis = 1)
        i = leximin_argmax(keys)
        if leximin_greater(keys[i], current):
            best = keys[i], MoveOrSwap(MoveKind.MOVE, c1, c2, int(p1[i]))
    if swaps:
        w_a = w[np.ix_(local, p1)].T[:, None, :]
        w_b = w[np.ix_(local, p2)].T[None, :, :]
        new = base[None, None, :] + sign[None, None, :] * (w_a - w_b)
        ii, jj = np.meshgrid(np.arange(n1), np.arange(n2), indexing = 'ij')
        new[ii, jj, ii] = contrib[p1, c2][:, None] - w[np.ix_(p1, p2)]
        new[ii, jj, n1 + jj] = contrib[p2, c1][None, :] - w[np.ix_(p2, p1)].T
        keys = np.sort(new.reshape(n1 * n2, n1 + n2), axis = 1)
        r = leximin_argmax(keys)
        # moves win ties
        if leximin_greater(keys[r], current) and (best is None or leximin_greater(keys[r], best[0])):
            best = keys[r], MoveOrSwap(MoveKind.SWAP, c1, c2, int(p1[r // n2]), int(p2[r % n2]))
    return None if best is None else best[1]


def _climb(work: _Working, rng: np.random.Generator, no_improve_limit: int, swaps: bool) -> int:
    improvements = 0
    idle = 0
    while idle < no_improve_limit:
        c1, c2 = (int(c) for c in rng.choice(work.k, 2, replace = False))
        step = _best_pair_step(work, c1, c2, swaps)
        if step is None:
            idle += 1
            continue
        work.apply(step)
        improvements += 1
        idle = 0
    return improvements


def lexi_climb(
    game: Game, init: CoalitionStructure, constraints: SizeConstraints, config: SolverConfig,
    restart_init: RestartInit | None = None,
) -> CoalitionStructure:
    _check_init(game, init, constraints)
    config = config.resolve(game.n, init.k)
    assert config.no_improve_limit is not None
    if init.k == 1:
        return init
    rng = np.random.default_rng(config.seed)
    make_start: RestartInit = restart_init or (lambda gen: random_balanced_partition(game.n, init.k, constraints, gen))

    best: CoalitionStructure | None = None
    best_key = None
    for run in range(config.restarts + 1):
        start = init if run == 0 else make_start(rng)
        work = _Working(game, start, constraints)
        improvements = _climb(work, rng, config.no_improve_limit, config.swaps)
        key = leximin_key(work.utilities)
        logger.debug(f'LexiClimb run {run}: {improvements} improvements, min {key.egalitarian}')
        if best_key is None or key.sorted_utilities > best_key.sorted_utilities:
            best, best_key = work.structure(), key
    assert best is not None
    return best


#
# pipeline
#


def _initial_structure(
    game: Game, constraints: SizeConstraints, init: InitKind, seed: np.random.SeedSequence, init_path: str | None,
) -> CoalitionStructure:
    n, k = game.n, constraints.k
    if init == InitKind.RANDOM:
        return random_balanced_partition(n, k, constraints, seed)
    if init == InitKind.GREEDY:
        return greedy_utilitarian_init(game, k, constraints, seed)
    if init_path is None:
        raise ValueError('File initialization needs a partition path')
    cs = read_partition(init_path, n, k)
    report = validate(cs, constraints)
    if not report.ok:
        sizes = ', '.join(f'coalition {v.coalition} has {v.size} (allowed {v.min_size}..{v.max_size})' for v in report.violations)
        raise ParseError(f'Partition violates size bounds: {sizes}', init_path)
    return cs


def solve_pipeline(
    game: Game, constraints: SizeConstraints, config: SolverConfig,
    algorithm: Algorithm | str = Algorithm.LEX, init: InitKind | str = InitKind.GREEDY,
    init_path: str | None = None,
) -> SolveResult:
    algorithm, init = Algorithm(algorithm), InitKind(init)
    constraints.check(game.n)
    config = config.resolve(game.n, constraints.k)
    # init draws from its own stream so the solver sees the same generator for any init kind
    (init_seed,) = np.random.SeedSequence(config.seed).spawn(1)
    start = _initial_structure(game, constraints, init, init_seed, init_path)
    logger.debug(f'{init.value} init: min utility {evaluate(game, start).egalitarian}')

    if algorithm == Algorithm.SA:
        result = simulated_annealing(game, start, constraints, config)
    elif algorithm == Algorithm.LEX:
        restart: RestartInit | None = None
        if init == InitKind.GREEDY:
            def restart(gen: np.random.Generator) -> CoalitionStructure:
                return greedy_utilitarian_init(game, constraints.k, constraints, gen)
        result = lexi_climb(game, start, constraints, config, restart_init = restart)
    else:
        result = start
    return SolveResult(result, evaluate(game, result), start, config)

#
# Hedonic game instances, coalition structures and size constraints.
#
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, NamedTuple, Sequence

import networkx as nx
import numpy as np
import numpy.typing as npt

from .constants import Preset
from .errors import InfeasibleError

logger = logging.getLogger(__name__)

# utilities of every player under one coalition structure, indexed by player
UtilityProfile = npt.NDArray[np.int64]


class Game:
    """Additively separable hedonic game over players 0..n-1.

    The weight matrix holds v_i(j) at [i, j]; absent pairs are 0 and the
    diagonal is always 0. Instances are immutable value types.
    """

    _weights: npt.NDArray[np.int64]

    def __init__(self, n: int, values: Mapping[tuple[int, int], int] | None = None):
        if n < 1:
            raise ValueError(f'A game needs at least one player, got {n}')
        weights = np.zeros((n, n), dtype = np.int64)
        for (i, j), w in (values or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f'Player pair ({i}, {j}) out of range for {n} players')
            if i == j:
                raise ValueError(f'Player {i} cannot value itself')
            weights[i, j] = _check_weight(w, i, j)
        self._freeze(weights)

    @classmethod
    def from_matrix(cls, matrix: npt.ArrayLike) -> Game:
        weights = np.array(matrix)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1] or weights.shape[0] < 1:
            raise ValueError(f'Weight matrix must be square and non-empty, got shape {weights.shape}')
        if not np.issubdtype(weights.dtype, np.integer):
            if not np.all(np.equal(np.mod(weights, 1), 0)):
                raise ValueError('Weights must be integral')
        weights = weights.astype(np.int64)
        if np.any(weights < 0):
            i, j = (int(x) for x in np.argwhere(weights < 0)[0])
            raise ValueError(f'Negative weight {weights[i, j]} for pair ({i}, {j})')
        if np.any(np.diagonal(weights) != 0):
            raise ValueError('Players cannot value themselves (non-zero diagonal)')
        game = cls.__new__(cls)
        game._freeze(weights)
        return game

    def _freeze(self, weights: npt.NDArray[np.int64]) -> None:
        weights.flags.writeable = False
        self._weights = weights

    @property
    def n(self) -> int:
        return int(self._weights.shape[0])

    @property
    def weights(self) -> npt.NDArray[np.int64]:
        return self._weights

    @property
    def is_simple(self) -> bool:
        return bool(np.all((self._weights == 0) | (self._weights == 1)))

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._weights, self._weights.T))

    @property
    def total_weight(self) -> int:
        return int(self._weights.sum())

    def value(self, i: int, j: int) -> int:
        return int(self._weights[i, j])

    def out_weights(self) -> npt.NDArray[np.int64]:
        return self._weights.sum(axis = 1)

    def out_degrees(self) -> npt.NDArray[np.int64]:
        return np.count_nonzero(self._weights, axis = 1)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for i, j in np.argwhere(self._weights > 0):
            yield int(i), int(j), int(self._weights[i, j])

    def reversed(self) -> Game:
        return Game.from_matrix(self._weights.T)

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_weighted_edges_from(self.edges())
        return graph

    def to_graph(self) -> nx.Graph:
        if not self.is_symmetric:
            raise ValueError('Only symmetric games have an undirected graph view')
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_weighted_edges_from((i, j, w) for i, j, w in self.edges() if i < j)
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return bool(np.array_equal(self._weights, other._weights))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return '<Game with {} players, {} edges, total weight {}{}{}>'.format(
            self.n, int(np.count_nonzero(self._weights)), self.total_weight,
            ', simple' if self.is_simple else '', ', symmetric' if self.is_symmetric else '',
        )


def _check_weight(w: Any, i: int, j: int) -> int:
    if isinstance(w, bool) or int(w) != w:
        raise ValueError(f'Weight {w!r} for pair ({i}, {j}) is not an integer')
    if w < 0:
        raise ValueError(f'Negative weight {w} for pair ({i}, {j})')
    return int(w)


class CoalitionStructure:
    """Assignment of each of n players to one of k labelled coalitions."""

    _assignment: npt.NDArray[np.int64]

    def __init__(self, assignment: Sequence[int] | npt.ArrayLike, k: int, allow_empty: bool = False):
        labels = np.array(assignment, dtype = np.int64)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError('Assignment must be a non-empty vector')
        if k < 1:
            raise ValueError(f'Coalition count must be positive, got {k}')
        if labels.min() < 0 or labels.max() >= k:
            bad = int(np.argmax((labels < 0) | (labels >= k)))
            raise ValueError(f'Player {bad} has coalition label {labels[bad]} outside 0..{k - 1}')
        if not allow_empty:
            empty = np.flatnonzero(np.bincount(labels, minlength = k) == 0)
            if empty.size:
                raise ValueError(f'Coalition(s) {empty.tolist()} are empty, exactly {k} coalitions must be formed')
        labels.flags.writeable = False
        self._assignment = labels
        self.k = k
        self.allow_empty = allow_empty

    @classmethod
    def from_coalitions(cls, coalitions: Sequence[Iterable[int]], n: int | None = None) -> CoalitionStructure:
        members = [sorted(set(c)) for c in coalitions]
        seen = [p for c in members for p in c]
        if n is None:
            n = max(seen) + 1 if seen else 0
        if len(seen) != len(set(seen)):
            raise ValueError('Coalitions overlap')
        if sorted(seen) != list(range(n)):
            raise ValueError(f'Coalitions do not cover players 0..{n - 1} exactly')
        labels = np.empty(n, dtype = np.int64)
        for label, coalition in enumerate(members):
            labels[coalition] = label
        return cls(labels, len(members))

    @property
    def n(self) -> int:
        return int(self._assignment.size)

    @property
    def assignment(self) -> npt.NDArray[np.int64]:
        return self._assignment

    def coalition_of(self, player: int) -> int:
        return int(self._assignment[player])

    def sizes(self) -> npt.NDArray[np.int64]:
        return np.bincount(self._assignment, minlength = self.k)

    def members(self, label: int) -> npt.NDArray[np.int64]:
        return np.flatnonzero(self._assignment == label)

    def coalitions(self) -> list[tuple[int, ...]]:
        return [tuple(int(p) for p in self.members(c)) for c in range(self.k)]

    def relabel(self, permutation: Sequence[int]) -> CoalitionStructure:
        # player i becomes player permutation[i]
        perm = np.asarray(permutation, dtype = np.int64)
        labels = np.empty_like(self._assignment)
        labels[perm] = self._assignment
        return CoalitionStructure(labels, self.k, allow_empty = self.allow_empty)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoalitionStructure):
            return NotImplemented
        return self.k == other.k and bool(np.array_equal(self._assignment, other._assignment))

    def __hash__(self) -> int:
        return hash((self.k, self.as_tuple()))

    def __repr__(self) -> str:
        return f'<CoalitionStructure k={self.k} sizes={self.sizes().tolist()}>'


class SizeConstraints(NamedTuple):
    min_sizes: tuple[int, ...]
    max_sizes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.min_sizes)

    @property
    def is_uniform(self) -> bool:
        # identical bounds for every label, so labels are interchangeable
        return len(set(self.min_sizes)) == 1 and len(set(self.max_sizes)) == 1

    def check(self, n: int) -> None:
        if len(self.min_sizes) != len(self.max_sizes) or not self.min_sizes:
            raise ValueError('Size bounds must be two non-empty vectors of equal length')
        for c, (lo, hi) in enumerate(zip(self.min_sizes, self.max_sizes)):
            if not 1 <= lo <= hi:
                raise ValueError(f'Coalition {c}: bounds {lo}..{hi} violate 1 <= min <= max')
        if sum(self.min_sizes) > n:
            raise InfeasibleError(f'Minimum sizes {list(self.min_sizes)} need {sum(self.min_sizes)} players, only {n} available')
        if sum(self.max_sizes) < n:
            raise InfeasibleError(f'Maximum sizes {list(self.max_sizes)} hold {sum(self.max_sizes)} players, {n} must be placed')

    def allows(self, sizes: Sequence[int] | npt.NDArray[np.int64]) -> bool:
        return len(sizes) == self.k and all(lo <= s <= hi for s, lo, hi in zip(sizes, self.min_sizes, self.max_sizes))

    @classmethod
    def equal(cls, n: int, k: int) -> SizeConstraints:
        _check_counts(n, k)
        return cls((n // k,) * k, (-(-n // k),) * k)

    @classmethod
    def balanced(cls, n: int, k: int, epsilon: float | str | Fraction) -> SizeConstraints:
        _check_counts(n, k)
        eps = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
        if eps < 0:
            raise ValueError(f'Imbalance epsilon must be non-negative, got {epsilon}')
        cap = int(Fraction(n, k) * (1 + eps))  # floor, operands are non-negative
        if cap * k < n:
            raise InfeasibleError(f'(k,1+e) bound {cap} per coalition cannot hold {n} players in {k} coalitions')
        cap = min(cap, n - k + 1)
        return cls((1,) * k, (cap,) * k)

    @classmethod
    def at_least(cls, n: int, mins: Sequence[int]) -> SizeConstraints:
        k = len(mins)
        _check_counts(n, k)
        total = sum(mins)
        if total > n:
            raise InfeasibleError(f'Minimum sizes {list(mins)} need {total} players, only {n} available')
        return cls(tuple(int(m) for m in mins), tuple(n - (total - m) for m in mins))

    @classmethod
    def free(cls, n: int, k: int) -> SizeConstraints:
        _check_counts(n, k)
        return cls((1,) * k, (n - k + 1,) * k)

    @classmethod
    def from_preset(cls, preset: Preset | str, n: int, k: int, epsilon: float | str | None = None) -> SizeConstraints:
        preset = Preset(preset)
        if preset == Preset.EQUAL:
            return cls.equal(n, k)
        if preset == Preset.BALANCED:
            if epsilon is None:
                raise ValueError('The balanced preset needs an epsilon')
            return cls.balanced(n, k, epsilon)
        if preset == Preset.FREE:
            return cls.free(n, k)
        raise ValueError(f'Preset {preset.value!r} needs explicit per-coalition minimums')


def _check_counts(n: int, k: int) -> None:
    if k < 1:
        raise ValueError(f'Coalition count must be positive, got {k}')
    if k > n:
        raise InfeasibleError(f'Cannot form {k} non-empty coalitions from {n} players')


class Violation(NamedTuple):
    coalition: int
    size: int
    min_size: int
    max_size: int


class ValidationReport(NamedTuple):
    ok: bool
    violations: tuple[Violation, ...] = ()


def validate(cs: CoalitionStructure, constraints: SizeConstraints) -> ValidationReport:
    # a coalition without bounds has min_size = max_size = 0, a missing one has size 0
    k = max(cs.k, constraints.k)
    sizes = np.zeros(k, dtype = np.int64)
    sizes[:cs.k] = cs.sizes()
    lows = list(constraints.min_sizes) + [0] * (k - constraints.k)
    highs = list(constraints.max_sizes) + [0] * (k - constraints.k)
    violations = tuple(
        Violation(c, int(size), lo, hi)
        for c, (size, lo, hi) in enumerate(zip(sizes, lows, highs))
        if size == 0 or not lo <= size <= hi
    )
    if cs.k != constraints.k:
        logger.debug(f'Structure has {cs.k} coalitions, constraints describe {constraints.k}')
    return ValidationReport(not violations, violations)


def _check_pair(game: Game, cs: CoalitionStructure) -> None:
    if game.n != cs.n:
        raise ValueError(f'Structure covers {cs.n} players, game has {game.n}')


def utility_of(game: Game, cs: CoalitionStructure, player: int) -> int:
    _check_pair(game, cs)
    if not 0 <= player < game.n:
        raise IndexError(f'Player {player} out of range 0..{game.n - 1}')
    peers = cs.assignment == cs.assignment[player]
    return int(game.weights[player, peers].sum())


def utility_profile(game: Game, cs: CoalitionStructure) -> UtilityProfile:
    _check_pair(game, cs)
    labels = cs.assignment
    same = labels[:, None] == labels[None, :]
    return (game.weights * same).sum(axis = 1)


def coalition_weights(game: Game, cs: CoalitionStructure) -> npt.NDArray[np.int64]:
    # [i, c] = total value player i has for the members of coalition c
    _check_pair(game, cs)
    onehot = np.eye(cs.k, dtype = np.int64)[cs.assignment]
    return game.weights @ onehot

from __future__ import annotations

from typing import Iterable

import numpy as np
import pytest

from ashg import Game, gen_circulant


def simple_game(n: int, edges: Iterable[tuple[int, int]]) -> Game:
    return Game(n, {(i, j): 1 for i, j in edges})


def undirected_game(n: int, edges: Iterable[tuple[int, int]]) -> Game:
    values: dict[tuple[int, int], int] = {}
    for i, j in edges:
        values[(i, j)] = values[(j, i)] = 1
    return Game(n, values)


def random_simple_game(rng: np.random.Generator, n: int, p: float = 0.4) -> Game:
    adj = (rng.random((n, n)) < p).astype(np.int64)
    np.fill_diagonal(adj, 0)
    return Game.from_matrix(adj)


@pytest.fixture
def three_player_game() -> Game:
    # v0(1)=2, v0(2)=1, v1(0)=1, v2(0)=1
    return Game(3, {(0, 1): 2, (0, 2): 1, (1, 0): 1, (2, 0): 1})


@pytest.fixture
def directed_triangle() -> Game:
    return simple_game(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def two_triangles() -> Game:
    return simple_game(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])


@pytest.fixture
def circulant_20_4() -> Game:
    return gen_circulant(20, 4)

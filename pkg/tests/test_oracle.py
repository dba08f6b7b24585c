from __future__ import annotations

import itertools

import numpy as np
import pytest

from ashg import (
    CoalitionStructure, DecisionInstance, Game, SizeConstraints, SizeGuardError, augment_universal_players,
    decide_egalitarian, decide_outdeg1_partition, egalitarian, enumerate_egalitarian_witnesses, evaluate,
    exact_max_egalitarian, exact_max_utilitarian, find_disjoint_cycles, gen_circulant, gen_random_tree,
    interleaved_cycles_partition, iter_structure_chunks, min_out_weight, symmetric_degree2_partition,
    utility_profile, validate,
)

from .conftest import random_simple_game, simple_game, undirected_game


def _count(n: int, constraints: SizeConstraints) -> int:
    return sum(len(chunk) for chunk in iter_structure_chunks(n, constraints))


def _parts(cs: CoalitionStructure) -> set[frozenset[int]]:
    return {frozenset(c) for c in cs.coalitions()}


def test_structure_enumeration_counts() -> None:
    # identical bounds: one representative per unlabelled partition
    assert _count(4, SizeConstraints.equal(4, 2)) == 3
    assert _count(6, SizeConstraints.equal(6, 3)) == 15
    assert _count(4, SizeConstraints.free(4, 2)) == 7
    # distinct bounds: labels matter, sizes (1,3) or (2,2)
    assert _count(4, SizeConstraints.at_least(4, [1, 2])) == 10


def test_structure_enumeration_is_lexicographic() -> None:
    rows = np.concatenate(list(iter_structure_chunks(5, SizeConstraints.free(5, 3))))
    as_tuples = [tuple(r) for r in rows.tolist()]
    assert as_tuples == sorted(as_tuples)
    assert as_tuples[0] == (0, 0, 0, 1, 2)
    assert all(r[0] == 0 for r in as_tuples)


def test_exact_max_egalitarian_examples(directed_triangle: Game) -> None:
    cs, key = exact_max_egalitarian(directed_triangle, 1, SizeConstraints.free(3, 1))
    assert key.egalitarian == 1 and cs.as_tuple() == (0, 0, 0)
    cs, key = exact_max_egalitarian(directed_triangle, 2, SizeConstraints.at_least(3, [1, 1]))
    assert key.egalitarian == 0
    circulant = gen_circulant(8, 2)
    cs, key = exact_max_egalitarian(circulant, 2, SizeConstraints.equal(8, 2))
    assert key.sorted_utilities == (1,) * 8
    assert _parts(cs) == _parts(interleaved_cycles_partition(8, 2))


def test_exact_max_egalitarian_tie_break() -> None:
    # zero game: every structure ties, the smallest assignment vector wins
    cs, key = exact_max_egalitarian(Game(4), 2, SizeConstraints.equal(4, 2))
    assert cs.as_tuple() == (0, 0, 1, 1)
    assert key.sorted_utilities == (0, 0, 0, 0)


def test_exact_max_egalitarian_guard_and_constraints() -> None:
    with pytest.raises(SizeGuardError):
        exact_max_egalitarian(Game(17), 2, SizeConstraints.equal(17, 2))
    with pytest.raises(SizeGuardError):
        exact_max_egalitarian(Game(8), 2, SizeConstraints.equal(8, 2), max_players=6)
    with pytest.raises(ValueError):
        exact_max_egalitarian(Game(4), 3, SizeConstraints.equal(4, 2))


def test_exact_max_egalitarian_beats_every_structure() -> None:
    rng = np.random.default_rng(23)
    for _ in range(10):
        game = random_simple_game(rng, 7)
        constraints = SizeConstraints.equal(7, 3)
        _, key = exact_max_egalitarian(game, 3, constraints)
        for labels in itertools.product(range(3), repeat=7):
            if sorted(np.bincount(labels, minlength=3).tolist()) != [2, 2, 3]:
                continue
            profile = utility_profile(game, CoalitionStructure(labels, 3))
            assert tuple(sorted(profile.tolist())) <= key.sorted_utilities


def test_exact_max_utilitarian(two_triangles: Game) -> None:
    cs, total = exact_max_utilitarian(two_triangles, 2, SizeConstraints.equal(6, 2))
    assert total == 6
    assert _parts(cs) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    # free sizes: everyone but one player together is still worse than the triangle split
    _, total = exact_max_utilitarian(two_triangles, 2, SizeConstraints.free(6, 2))
    assert total == 6


def test_decide_egalitarian(directed_triangle: Game) -> None:
    rng = np.random.default_rng(2)
    game = random_simple_game(rng, 6)
    assert decide_egalitarian(DecisionInstance.equal(game, 2, 0)) is not None
    no = DecisionInstance(directed_triangle, 2, 1, SizeConstraints.at_least(3, [1, 1]))
    assert decide_egalitarian(no) is None
    circulant = gen_circulant(8, 2)
    witness = decide_egalitarian(DecisionInstance.equal(circulant, 2, 1))
    assert witness is not None
    assert evaluate(circulant, witness).egalitarian >= 1
    assert validate(witness, SizeConstraints.equal(8, 2)).ok


def test_decide_egalitarian_rejects_bad_instances() -> None:
    with pytest.raises(ValueError):
        decide_egalitarian(DecisionInstance(Game(4), 2, -1, SizeConstraints.equal(4, 2)))
    with pytest.raises(ValueError):
        decide_egalitarian(DecisionInstance(Game(4), 2, 1, SizeConstraints.free(4, 2), equal_sized=True))
    with pytest.raises(SizeGuardError):
        decide_egalitarian(DecisionInstance.equal(gen_circulant(20, 4), 4, 1))


def test_witnesses_circulant_unique() -> None:
    witnesses = enumerate_egalitarian_witnesses(gen_circulant(8, 2), 2, SizeConstraints.equal(8, 2), 1)
    assert len(witnesses) == 1
    assert _parts(witnesses[0]) == _parts(interleaved_cycles_partition(8, 2))


def test_augment_universal_players() -> None:
    game = simple_game(3, [(0, 1), (1, 2)])
    augmented = augment_universal_players(game, 2)
    assert augmented.n == 6
    assert augmented.out_weights()[3:].tolist() == [3, 3, 3]
    assert augmented.weights[:, 3:].sum() == 0
    assert np.array_equal(augmented.weights[:3, :3], game.weights)
    two = simple_game(2, [(0, 1)])
    assert augment_universal_players(two, 1) == two
    nine = augment_universal_players(game, 3)
    assert nine.n == 9 and nine.out_degrees()[3:].tolist() == [3] * 6
    with pytest.raises(ValueError):
        augment_universal_players(Game(2, {(0, 1): 2}), 2)


def _gadget_agrees(game: Game, delta: int) -> bool:
    k = 2
    plain = decide_egalitarian(DecisionInstance(game, k, delta, SizeConstraints.free(game.n, k)))
    augmented = augment_universal_players(game, k)
    equal = decide_egalitarian(DecisionInstance.equal(augmented, k, delta))
    return (plain is None) == (equal is None)


def test_gadget_on_all_three_player_digraphs() -> None:
    pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
    for mask in range(2 ** len(pairs)):
        game = simple_game(3, [p for b, p in enumerate(pairs) if mask >> b & 1])
        for delta in (1, 2):
            assert _gadget_agrees(game, delta), (mask, delta)


def test_gadget_on_random_games() -> None:
    rng = np.random.default_rng(31)
    for _ in range(25):
        game = random_simple_game(rng, int(rng.integers(2, 6)), p=0.6)
        for delta in (1, 2):
            assert _gadget_agrees(game, delta)


def test_find_disjoint_cycles(two_triangles: Game) -> None:
    acyclic = simple_game(4, [(0, 1), (1, 2), (0, 3), (3, 2)])
    assert find_disjoint_cycles(acyclic, [2]) is None
    cycles = find_disjoint_cycles(gen_circulant(8, 2), [4, 4])
    assert cycles is not None
    assert {frozenset(c) for c in cycles} == {frozenset(range(0, 8, 2)), frozenset(range(1, 8, 2))}
    cycles = find_disjoint_cycles(two_triangles, [3, 3])
    assert cycles is not None
    assert {frozenset(c) for c in cycles} == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    assert find_disjoint_cycles(two_triangles, [4, 2]) is None


def test_find_disjoint_cycles_are_cycles() -> None:
    rng = np.random.default_rng(8)
    for _ in range(30):
        game = random_simple_game(rng, 8)
        cycles = find_disjoint_cycles(game, [2, 3])
        if cycles is None:
            continue
        assert not set(cycles[0]) & set(cycles[1])
        assert len(cycles[0]) >= 2 and len(cycles[1]) >= 3
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                assert game.value(a, b) == 1


def test_decide_outdeg1_examples(two_triangles: Game) -> None:
    cs = decide_outdeg1_partition(two_triangles, [3, 3])
    assert cs is not None
    assert _parts(cs) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    four_cycle = simple_game(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert decide_outdeg1_partition(four_cycle, [2, 2]) is None
    cs = decide_outdeg1_partition(gen_circulant(12, 3), [4, 4, 4])
    assert cs is not None
    assert _parts(cs) == _parts(interleaved_cycles_partition(12, 3))
    cs = decide_outdeg1_partition(gen_circulant(20, 4), [5, 5, 5, 5], max_players=20)
    assert cs is not None and evaluate(gen_circulant(20, 4), cs).egalitarian == 1


def test_decide_outdeg1_absorbs_leftovers() -> None:
    # two 2-cycles plus a tail 4 -> 5 -> 0
    game = simple_game(6, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 0)])
    cs = decide_outdeg1_partition(game, [2, 2])
    assert cs is not None
    assert egalitarian(utility_profile(game, cs)) >= 1
    assert cs.coalition_of(5) == cs.coalition_of(0) == cs.coalition_of(4)


def _outdeg1_agrees(game: Game, sizes: list[int]) -> bool:
    constructive = decide_outdeg1_partition(game, sizes)
    exhaustive = decide_egalitarian(DecisionInstance(game, len(sizes), 1, SizeConstraints.at_least(game.n, sizes)))
    if constructive is not None:
        assert egalitarian(utility_profile(game, constructive)) >= 1
        assert all(size >= m for size, m in zip(constructive.sizes(), sizes))
    return (constructive is None) == (exhaustive is None)


def test_outdeg1_matches_exhaustive_search() -> None:
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 60:
        n = int(rng.integers(4, 9))
        k = int(rng.integers(2, 4))
        sizes = [int(s) for s in rng.integers(1, 4, size=k)]
        if sum(sizes) > n:
            continue
        game = random_simple_game(rng, n, p=float(rng.uniform(0.15, 0.5)))
        assert _outdeg1_agrees(game, sizes), (game.weights.tolist(), sizes)
        checked += 1


def test_min_out_weight() -> None:
    circulant = gen_circulant(12, 3)
    for size in range(1, 4):
        for subset in itertools.combinations(range(12), size):
            assert min_out_weight(circulant, subset) == 0
    assert min_out_weight(circulant, range(0, 12, 3)) == 1
    with pytest.raises(ValueError):
        min_out_weight(circulant, [])


def test_symmetric_degree2_examples() -> None:
    assert symmetric_degree2_partition(gen_random_tree(9, seed=4), 2) is None
    triangles = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    game = undirected_game(7, triangles + [(6, 0), (6, 1)])
    with pytest.raises(ValueError):
        symmetric_degree2_partition(game, 2)
    cs = symmetric_degree2_partition(game, 2, strict=False)
    assert cs is not None
    assert cs.coalition_of(6) == cs.coalition_of(0) == cs.coalition_of(1)
    assert cs.coalition_of(3) == cs.coalition_of(4) == cs.coalition_of(5) != cs.coalition_of(0)
    complete = undirected_game(6, itertools.combinations(range(6), 2))
    cs = symmetric_degree2_partition(complete, 2)
    assert cs is not None
    assert sorted(cs.sizes().tolist()) == [3, 3]
    assert egalitarian(utility_profile(complete, cs)) >= 2


def test_symmetric_degree2_rejects_directed(directed_triangle: Game) -> None:
    with pytest.raises(ValueError):
        symmetric_degree2_partition(directed_triangle, 1)

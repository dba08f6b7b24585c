from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from ashg import (
    Game, Verdict, compare_leximin, contiguous_partition, egalitarian, evaluate, gini, interleaved_cycles_partition,
    leximin_argmax, leximin_key, metrics_report, sa_score, utilitarian_total_and_average, utility_profile,
)


def test_egalitarian(circulant_20_4: Game) -> None:
    assert egalitarian([4, 4, 4]) == 4
    assert egalitarian([2, 1, 0]) == 0
    assert egalitarian(utility_profile(circulant_20_4, interleaved_cycles_partition(20, 4))) == 1
    with pytest.raises(ValueError):
        egalitarian([])


def test_utilitarian(circulant_20_4: Game) -> None:
    assert utilitarian_total_and_average([0] * 5) == (0, Fraction(0))
    assert utilitarian_total_and_average([2, 1, 0]) == (3, Fraction(1))
    total, average = utilitarian_total_and_average(utility_profile(circulant_20_4, contiguous_partition(20, 4)))
    assert total == 40
    assert average == 2


@pytest.mark.parametrize('a, b, verdict', [
    ((1, 1, 2), (1, 1, 2), Verdict.EQUAL),
    ((1, 2, 2), (0, 3, 3), Verdict.FIRST_BETTER),
    ((1, 1, 3), (1, 2, 2), Verdict.SECOND_BETTER),
    ((2, 1, 2), (2, 2, 1), Verdict.EQUAL),
])
def test_compare_leximin(a: tuple[int, ...], b: tuple[int, ...], verdict: Verdict) -> None:
    assert compare_leximin(leximin_key(a), leximin_key(b)) == verdict


def test_compare_leximin_length_mismatch() -> None:
    with pytest.raises(ValueError):
        compare_leximin(leximin_key([1, 2]), leximin_key([1, 2, 3]))


def test_leximin_is_a_total_order() -> None:
    rng = np.random.default_rng(11)
    for _ in range(1000):
        a, b, c = (leximin_key(rng.integers(0, 4, size=5)) for _ in range(3))
        ab, bc, ac = compare_leximin(a, b), compare_leximin(b, c), compare_leximin(a, c)
        assert compare_leximin(b, a) == -ab
        if ab >= Verdict.EQUAL and bc >= Verdict.EQUAL:
            assert ac >= Verdict.EQUAL
        if ab == Verdict.EQUAL:
            assert a == b


def test_gini() -> None:
    assert gini([3, 3, 3, 3]) == 0
    assert gini([0, 1]) == Fraction(1, 2)
    assert gini([1, 2, 3]) == Fraction(2, 9)
    assert gini([3, 1, 2]) == Fraction(2, 9)
    assert gini([0, 0, 0]) == 0
    with pytest.raises(ValueError):
        gini([1, -1])


def test_gini_matches_pairwise_definition() -> None:
    rng = np.random.default_rng(5)
    for _ in range(50):
        x = rng.integers(0, 10, size=int(rng.integers(1, 12)))
        total = int(x.sum())
        if total == 0:
            continue
        pairwise = int(np.abs(x[:, None] - x[None, :]).sum())
        assert gini(x) == Fraction(pairwise, 2 * x.size * total)


def test_gini_is_scale_invariant() -> None:
    rng = np.random.default_rng(6)
    for _ in range(50):
        x = rng.integers(0, 10, size=int(rng.integers(1, 12)))
        for c in (2, 3, 17):
            assert gini(c * x) == gini(x)


def test_egalitarian_heads_the_leximin_key() -> None:
    rng = np.random.default_rng(7)
    for _ in range(50):
        x = rng.integers(0, 20, size=int(rng.integers(1, 12)))
        assert egalitarian(x) == leximin_key(x).sorted_utilities[0] == leximin_key(x).egalitarian


def test_sa_score() -> None:
    assert sa_score([1, 1, 2, 3, 3, 3], 6) == 4
    assert sa_score([0] * 5, 5) == -5
    assert sa_score([1] * 7) == 0
    with pytest.raises(ValueError):
        sa_score([1, 2], 3)


def test_sa_score_orders_by_minimum_first() -> None:
    rng = np.random.default_rng(17)
    n = 8
    for _ in range(1000):
        a, b = rng.integers(0, 6, size=n), rng.integers(0, 6, size=n)
        if a.min() > b.min():
            assert sa_score(a, n) > sa_score(b, n)
        elif a.min() == b.min() and np.count_nonzero(a == a.min()) < np.count_nonzero(b == b.min()):
            assert sa_score(a, n) > sa_score(b, n)


def test_metrics_report(circulant_20_4: Game) -> None:
    report = evaluate(circulant_20_4, interleaved_cycles_partition(20, 4))
    assert report.egalitarian == 1
    assert report.total == 20
    assert report.gini == 0
    assert report.min_count == 20
    row = metrics_report([2, 1, 0]).as_row()
    assert row == {'min': '0', 'avg': '1.000000', 'total': '3', 'gini': f'{4 / 9:.6f}', 'min_count': '1'}


def test_leximin_argmax() -> None:
    rows = np.array([[0, 2, 2], [1, 1, 3], [1, 2, 2], [1, 2, 2]])
    assert leximin_argmax(rows) == 2

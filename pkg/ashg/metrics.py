#
# Welfare and fairness metrics over utility profiles. Every ordering decision
# here is exact: integers for utilities, Fraction for averages and Gini.
#
from __future__ import annotations

import logging
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
import numpy.typing as npt

from .constants import METRICS_PRECISION, Verdict
from .game import CoalitionStructure, Game, UtilityProfile, utility_profile

logger = logging.getLogger(__name__)


class LeximinKey(NamedTuple):
    # ascending; tuple comparison of two keys of equal length is the leximin order
    sorted_utilities: tuple[int, ...]

    @property
    def egalitarian(self) -> int:
        return self.sorted_utilities[0]


class MetricsReport(NamedTuple):
    egalitarian: int
    total: int
    average: Fraction
    gini: Fraction
    min_count: int

    def as_row(self) -> dict[str, str]:
        return {
            'min':       str(self.egalitarian),
            'avg':       _render(self.average),
            'total':     str(self.total),
            'gini':      _render(self.gini),
            'min_count': str(self.min_count),
        }


def _render(x: Fraction) -> str:
    return f'{float(x):.{METRICS_PRECISION}f}'


def _as_profile(profile: UtilityProfile | Sequence[int]) -> npt.NDArray[np.int64]:
    values = np.asarray(profile, dtype = np.int64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError('Utility profile must be a non-empty vector')
    return values


def egalitarian(profile: UtilityProfile | Sequence[int]) -> int:
    return int(_as_profile(profile).min())


def utilitarian_total_and_average(profile: UtilityProfile | Sequence[int]) -> tuple[int, Fraction]:
    values = _as_profile(profile)
    total = int(values.sum())
    return total, Fraction(total, values.size)


def leximin_key(profile: UtilityProfile | Sequence[int]) -> LeximinKey:
    return LeximinKey(tuple(int(x) for x in np.sort(_as_profile(profile))))


def compare_leximin(a: LeximinKey, b: LeximinKey) -> Verdict:
    if len(a.sorted_utilities) != len(b.sorted_utilities):
        raise ValueError(f'Cannot compare leximin keys of lengths {len(a.sorted_utilities)} and {len(b.sorted_utilities)}')
    if a.sorted_utilities > b.sorted_utilities:
        return Verdict.FIRST_BETTER
    if a.sorted_utilities < b.sorted_utilities:
        return Verdict.SECOND_BETTER
    return Verdict.EQUAL


def gini(profile: UtilityProfile | Sequence[int]) -> Fraction:
    # mean absolute difference over 2*mean: sum_i sum_j |x_i - x_j| / (2 n^2 mu)
    values = np.sort(_as_profile(profile))
    if np.any(values < 0):
        raise ValueError('Gini coefficient is defined for non-negative utilities only')
    n = int(values.size)
    total = int(values.sum())
    if total == 0:
        return Fraction(0)
    ranks = 2 * np.arange(n, dtype = np.int64) - n + 1
    abs_diff_sum = 2 * int((values * ranks).sum())
    return Fraction(abs_diff_sum, 2 * n * total)


def sa_score(profile: UtilityProfile | Sequence[int], n: int | None = None) -> int:
    values = _as_profile(profile)
    if n is None:
        n = int(values.size)
    elif n != values.size:
        raise ValueError(f'Score needs n equal to the profile length {values.size}, got {n}')
    low = values.min()
    return int(n * low - np.count_nonzero(values == low))


def metrics_report(profile: UtilityProfile | Sequence[int]) -> MetricsReport:
    values = _as_profile(profile)
    low = int(values.min())
    total, average = utilitarian_total_and_average(values)
    return MetricsReport(low, total, average, gini(values), int(np.count_nonzero(values == low)))


def evaluate(game: Game, cs: CoalitionStructure) -> MetricsReport:
    return metrics_report(utility_profile(game, cs))


def leximin_argmax(rows: npt.NDArray[np.int64]) -> int:
    """Index of the first row that is lexicographically largest.

    Rows are expected to be sorted ascending already, which makes this the
    leximin-best candidate among equally sized multisets.
    """
    candidates = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        column = rows[candidates, col]
        candidates = candidates[column == column.max()]
        if candidates.size == 1:
            break
    return int(candidates[0])


def leximin_greater(a: npt.NDArray[np.int64], b: npt.NDArray[np.int64]) -> bool:
    # both sorted ascending, same length
    diff = np.flatnonzero(a != b)
    return bool(diff.size) and bool(a[diff[0]] > b[diff[0]])

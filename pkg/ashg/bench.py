#
# Experiment harness: sweeps over player counts or coalition counts, several
# solver arms per instance, results aggregated to long-form CSV.
#
from __future__ import annotations

import csv
import itertools
import logging
import os
from fractions import Fraction
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

import numpy as np
import yaml
from tabulate import tabulate
from tqdm import tqdm

from .config import _non_negative_int, _positive_int
from .constants import DEFAULT_K, METRICS_PRECISION, Algorithm, InitKind, Preset
from .datagen import GenSpec, gen_circulant, gen_uniform_outdegree
from .errors import ParseError
from .game import Game, SizeConstraints
from .game_reader import read_edge_list
from .heuristics import SolverConfig, solve_pipeline
from .metrics import MetricsReport

logger = logging.getLogger(__name__)

SOURCES = ('uniform', 'circulant', 'file')

PER_RUN_FIELDS = ('label', 'n', 'k', 'repetition', 'seed', 'min', 'avg', 'total', 'gini', 'min_count', 'status')
AGGREGATE_FIELDS = (
    'label', 'algorithm', 'init', 'n', 'k', 'runs', 'failures',
    'min_mean', 'min_std', 'avg_mean', 'avg_std', 'total_mean', 'total_std', 'gini_mean', 'gini_std',
)


class Arm(NamedTuple):
    algorithm: Algorithm
    init: InitKind
    label: str
    restarts: int | None = None
    step_limit: int | None = None
    no_improve_limit: int | None = None

    def config(self, seed: int) -> SolverConfig:
        config = SolverConfig(step_limit = self.step_limit, no_improve_limit = self.no_improve_limit, seed = seed)
        return config if self.restarts is None else config._replace(restarts = self.restarts)


class ExperimentPlan(NamedTuple):
    name: str
    source: str
    sizes: tuple[int, ...]
    parts: tuple[int, ...]
    arms: tuple[Arm, ...]
    repetitions: int = 1
    seed: int | None = None
    d: int = 5
    weighted: bool = True
    path: str | None = None
    preset: Preset = Preset.EQUAL
    epsilon: str | None = None
    output: str | None = None
    per_run: str | None = None


class BenchResult(NamedTuple):
    rows: list[dict[str, Any]]
    per_run: list[dict[str, Any]]


def _parse_arm(raw: Any, index: int, path: os.PathLike[str] | str) -> Arm:
    if not isinstance(raw, dict):
        raise ParseError(f'Arm {index} must be a mapping', path)
    unknown = set(raw) - {'algorithm', 'init', 'label', 'restarts', 'step_limit', 'no_improve_limit'}
    if unknown:
        raise ParseError(f'Arm {index}: unknown keys {sorted(unknown)}', path)
    try:
        algorithm = Algorithm(raw.get('algorithm', Algorithm.NONE.value))
        init = InitKind(raw.get('init', InitKind.GREEDY.value))
    except ValueError as e:
        raise ParseError(f'Arm {index}: {e}', path) from e
    if init == InitKind.FILE:
        raise ParseError(f'Arm {index}: file initialization is not available in experiments', path)
    limits: dict[str, int | None] = {}
    for key, check in (('restarts', _non_negative_int), ('step_limit', _non_negative_int), ('no_improve_limit', _positive_int)):
        try:
            limits[key] = None if raw.get(key) is None else check(raw[key])
        except ValueError as e:
            raise ParseError(f'Arm {index}: {key}: {e}', path) from e
    default_label = init.value if algorithm == Algorithm.NONE else f'{algorithm.value}-{init.value}'
    return Arm(algorithm, init, str(raw.get('label', default_label)), **limits)


def _int_list(value: Any, key: str, path: os.PathLike[str] | str) -> tuple[int, ...]:
    values = value if isinstance(value, list) else [value]
    if not values or not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in values):
        raise ParseError(f'{key} must be a positive integer or a list of them, got {value!r}', path)
    return tuple(values)


def plan_from_mapping(props: Mapping[str, Any], path: os.PathLike[str] | str = '<plan>') -> ExperimentPlan:
    known = set(ExperimentPlan._fields)
    unknown = set(props) - known
    if unknown:
        raise ParseError(f'Unknown plan keys {sorted(unknown)}', path)
    source = props.get('source', 'uniform')
    if source not in SOURCES:
        raise ParseError(f'source must be one of {", ".join(SOURCES)}, got {source!r}', path)
    if source == 'file' and not props.get('path'):
        raise ParseError('A file source needs a path', path)
    arms_raw = props.get('arms') or []
    if not isinstance(arms_raw, list) or not arms_raw:
        raise ParseError('A plan needs at least one arm', path)
    repetitions = props.get('repetitions', 1)
    if not isinstance(repetitions, int) or repetitions < 1:
        raise ParseError(f'repetitions must be at least 1, got {repetitions!r}', path)
    seed = props.get('seed')
    if seed is not None and (not isinstance(seed, int) or seed < 0):
        raise ParseError(f'seed must be a non-negative integer, got {seed!r}', path)
    try:
        preset = Preset(props.get('preset', Preset.EQUAL.value))
    except ValueError as e:
        raise ParseError(str(e), path) from e
    if preset == Preset.AT_LEAST:
        raise ParseError('Experiments support the equal, balanced and free presets', path)
    weighted = props.get('weighted', True)
    if not isinstance(weighted, bool):
        raise ParseError(f'weighted must be true or false, got {weighted!r}', path)
    try:
        d = _positive_int(props.get('d', 5))
    except ValueError as e:
        raise ParseError(f'd: {e}', path) from e
    epsilon = props.get('epsilon')
    if preset == Preset.BALANCED and epsilon is None:
        raise ParseError('The balanced preset needs an epsilon', path)
    return ExperimentPlan(
        name = str(props.get('name', 'bench')),
        source = source,
        sizes = _int_list(props.get('sizes'), 'sizes', path) if source != 'file' else (),
        parts = _int_list(props.get('parts', DEFAULT_K), 'parts', path),
        arms = tuple(_parse_arm(raw, i, path) for i, raw in enumerate(arms_raw)),
        repetitions = repetitions,
        seed = seed,
        d = d,
        weighted = weighted,
        path = props.get('path'),
        preset = preset,
        epsilon = None if epsilon is None else str(epsilon),
        output = props.get('output'),
        per_run = props.get('per_run'),
    )


def load_plan(path: os.PathLike[str] | str) -> ExperimentPlan:
    with open(path, 'r', encoding = 'utf-8') as fp:
        try:
            props = yaml.safe_load(fp)
        except yaml.YAMLError as e:
            raise ParseError(f'Invalid YAML: {e}', path) from e
    if not isinstance(props, dict):
        raise ParseError('An experiment plan must be a mapping', path)
    return plan_from_mapping(props, path)


def _derived_seed(*entropy: int) -> int:
    return int(np.random.SeedSequence(list(entropy)).generate_state(1, np.uint64)[0])


def _instance(plan: ExperimentPlan, n: int, k: int, seed: int, cached: Game | None) -> Game:
    if plan.source == 'uniform':
        return gen_uniform_outdegree(GenSpec(n, plan.d, plan.weighted, seed))
    if plan.source == 'circulant':
        return gen_circulant(n, k)
    assert cached is not None
    return cached


def _failed_row(arm: Arm, n: int, k: int, repetition: int, seed: int, error: Exception) -> dict[str, Any]:
    row: dict[str, Any] = dict.fromkeys(PER_RUN_FIELDS, '')
    row.update(label = arm.label, n = n, k = k, repetition = repetition, seed = seed, status = f'error: {error}')
    return row


def run_plan(plan: ExperimentPlan, progress: bool = True) -> BenchResult:
    if plan.seed is None:
        raise ValueError('Experiments need a master seed')
    cached: Game | None = None
    sizes = plan.sizes
    if plan.source == 'file':
        assert plan.path is not None
        cached = read_edge_list(plan.path).game
        sizes = (cached.n,)
    points = list(itertools.product(sizes, plan.parts))
    reports: dict[tuple[int, int, int], list[MetricsReport]] = {}
    failures: dict[tuple[int, int, int], int] = {}
    per_run: list[dict[str, Any]] = []

    bar = tqdm(total = len(points) * plan.repetitions, desc = plan.name, unit = 'instance', disable = None if progress else True)
    for point, (n, k) in enumerate(points):
        for rep in range(plan.repetitions):
            instance_seed = _derived_seed(plan.seed, point, rep)
            try:
                game = _instance(plan, n, k, instance_seed, cached)
                constraints = SizeConstraints.from_preset(plan.preset, n, k, plan.epsilon)
            except ValueError as e:
                logger.warning(f'{plan.name}: n={n} k={k} repetition {rep}: {e}')
                for arm_index, arm in enumerate(plan.arms):
                    failures[(arm_index, n, k)] = failures.get((arm_index, n, k), 0) + 1
                    per_run.append(_failed_row(arm, n, k, rep, instance_seed, e))
                bar.update(1)
                continue
            for arm_index, arm in enumerate(plan.arms):
                seed = _derived_seed(plan.seed, point, rep, arm_index)
                try:
                    result = solve_pipeline(game, constraints, arm.config(seed), arm.algorithm, arm.init)
                except (ValueError, RuntimeError) as e:
                    logger.warning(f'{arm.label}: n={n} k={k} repetition {rep}: {e}')
                    failures[(arm_index, n, k)] = failures.get((arm_index, n, k), 0) + 1
                    per_run.append(_failed_row(arm, n, k, rep, seed, e))
                    continue
                reports.setdefault((arm_index, n, k), []).append(result.report)
                per_run.append({'label': arm.label, 'n': n, 'k': k, 'repetition': rep, 'seed': seed, **result.report.as_row(), 'status': 'ok'})
            bar.update(1)
    bar.close()

    rows = [
        _aggregate(arm, n, k, reports.get((arm_index, n, k), []), failures.get((arm_index, n, k), 0))
        for n, k in points for arm_index, arm in enumerate(plan.arms)
    ]
    return BenchResult(rows, per_run)


def _render(x: Fraction | float) -> str:
    return f'{float(x):.{METRICS_PRECISION}f}'


def _aggregate(arm: Arm, n: int, k: int, reports: Sequence[MetricsReport], failed: int) -> dict[str, Any]:
    row: dict[str, Any] = {
        'label': arm.label, 'algorithm': arm.algorithm.value, 'init': arm.init.value,
        'n': n, 'k': k, 'runs': len(reports), 'failures': failed,
    }
    columns = {
        'min':   [Fraction(r.egalitarian) for r in reports],
        'avg':   [r.average for r in reports],
        'total': [Fraction(r.total) for r in reports],
        'gini':  [r.gini for r in reports],
    }
    for name, values in columns.items():
        if not values:
            row[f'{name}_mean'] = row[f'{name}_std'] = ''
            continue
        mean = sum(values, Fraction(0)) / len(values)
        variance = sum(((v - mean) ** 2 for v in values), Fraction(0)) / len(values)
        row[f'{name}_mean'] = _render(mean)
        row[f'{name}_std'] = _render(float(variance) ** 0.5)
    return row


def write_csv(dest: os.PathLike[str] | str, rows: Iterable[Mapping[str, Any]], fields: Sequence[str]) -> None:
    with open(dest, 'w', encoding = 'utf-8', newline = '') as fp:
        writer = csv.DictWriter(fp, fieldnames = list(fields), lineterminator = '\n')
        writer.writeheader()
        writer.writerows(rows)


def summary_table(rows: Sequence[Mapping[str, Any]], tablefmt: str = 'pipe') -> str:
    headers = ['Arm', 'n', 'k', 'Runs', 'Min', 'Avg', 'Total', 'Gini']
    table = [
        [r['label'], r['n'], r['k'], r['runs']] + [float(r[f'{m}_mean']) if r[f'{m}_mean'] != '' else None for m in ('min', 'avg', 'total', 'gini')]
        for r in rows
    ]
    return tabulate(table, headers = headers, floatfmt = '.3f', tablefmt = tablefmt, missingval = '-')

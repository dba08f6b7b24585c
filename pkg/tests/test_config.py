from __future__ import annotations

from pathlib import Path

import pytest

from ashg import Algorithm, InitKind, ParseError, Schedule, SolverConfig
from ashg.config import load_solver_config, merge_overrides, parse_init, solver_config_from


def _yaml(tmp_path: Path, text: str) -> Path:
    path = tmp_path / 'solver.yaml'
    path.write_text(text, encoding = 'utf-8')
    return path


def test_parse_init() -> None:
    assert parse_init('greedy') == (InitKind.GREEDY, None)
    assert parse_init('random') == (InitKind.RANDOM, None)
    assert parse_init('file=runs/a.part') == (InitKind.FILE, 'runs/a.part')
    for bad in ('file', 'file=', 'greedy=x', 'kahip'):
        with pytest.raises(ValueError):
            parse_init(bad)


def test_load_solver_config(tmp_path: Path) -> None:
    path = _yaml(tmp_path, 'algorithm: sa\nstep-limit: 500\nrestarts: 3\nseed: 9\nschedule: literal\nepsilon: 0.1\nswaps: false\n')
    config = load_solver_config(path)
    assert config == {
        'algorithm': Algorithm.SA, 'step_limit': 500, 'restarts': 3, 'seed': 9,
        'schedule': Schedule.LITERAL, 'epsilon': '0.1', 'swaps': False,
    }
    solver = solver_config_from(config)
    assert solver == SolverConfig(step_limit = 500, restarts = 3, seed = 9, schedule = Schedule.LITERAL, swaps = False)


def test_empty_config(tmp_path: Path) -> None:
    assert load_solver_config(_yaml(tmp_path, '')) == {}
    assert solver_config_from({}) == SolverConfig()


@pytest.mark.parametrize('text, match', [
    ('steps: 10\n', 'Unknown key'),
    ('restarts: -1\n', 'restarts'),
    ('algorithm: tabu\n', 'algorithm'),
    ('swaps: 1\n', 'swaps'),
    ('init: file\n', 'init'),
    ('k: 0\n', 'k'),
    ('no-improve-limit: 0\n', 'no_improve_limit'),
    ('- 1\n- 2\n', 'mapping'),
    ('seed: [1\n', 'Invalid YAML'),
])
def test_config_errors(tmp_path: Path, text: str, match: str) -> None:
    with pytest.raises(ParseError, match = match):
        load_solver_config(_yaml(tmp_path, text))


def test_merge_overrides() -> None:
    merged = merge_overrides({'restarts': 3, 'seed': 1}, {'restarts': None, 'seed': 5, 'step_limit': 10})
    assert merged == {'restarts': 3, 'seed': 5, 'step_limit': 10}

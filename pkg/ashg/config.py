#
# Solver config files: a flat YAML mapping of the keys in constants.Keys.
# Property names do not differentiate between hyphens and underscores.
#
from __future__ import annotations

import logging
import os
from typing import Any, Callable, Mapping

import yaml

from .constants import Algorithm, InitKind, Keys, Schedule
from .errors import ParseError
from .heuristics import SolverConfig

logger = logging.getLogger(__name__)


def parse_init(text: str) -> tuple[InitKind, str | None]:
    # random, greedy or file=PATH
    kind, sep, path = text.partition('=')
    init = InitKind(kind.strip())
    if init == InitKind.FILE:
        if not sep or not path:
            raise ValueError('File initialization is written as file=PATH')
        return init, path
    if sep:
        raise ValueError(f'Init {kind!r} takes no argument')
    return init, None


def _non_negative_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(f'expected a non-negative integer, got {value!r}')
    return value


def _positive_int(value: Any) -> int:
    if _non_negative_int(value) < 1:
        raise ValueError(f'expected a positive integer, got {value!r}')
    return value


def _flag(value: Any) -> bool:
    if not isinstance(value, bool):
        raise ValueError(f'expected true or false, got {value!r}')
    return value


def _epsilon(value: Any) -> str:
    # kept as text so the balanced bound is computed from the exact decimal
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ValueError(f'expected a number, got {value!r}')
    return str(value)


def _init(value: Any) -> str:
    parse_init(str(value))
    return str(value)


_CONVERTERS: dict[str, Callable[[Any], Any]] = {
    Keys.ALGORITHM:        Algorithm,
    Keys.INIT:             _init,
    Keys.STEP_LIMIT:       _non_negative_int,
    Keys.NO_IMPROVE_LIMIT: _positive_int,
    Keys.RESTARTS:         _non_negative_int,
    Keys.SEED:             _non_negative_int,
    Keys.EPSILON:          _epsilon,
    Keys.K:                _positive_int,
    Keys.SCHEDULE:         Schedule,
    Keys.SWAPS:            _flag,
}


def load_solver_config(path: os.PathLike[str] | str) -> dict[str, Any]:
    with open(path, 'r', encoding = 'utf-8') as fp:
        try:
            props = yaml.safe_load(fp)
        except yaml.YAMLError as e:
            mark = getattr(e, 'problem_mark', None)
            raise ParseError(f'Invalid YAML: {e}', path, None if mark is None else mark.line + 1) from e
    if props is None:
        return {}
    if not isinstance(props, dict):
        raise ParseError('Solver config must be a mapping of key: value', path)
    config: dict[str, Any] = {}
    for key, value in props.items():
        name = str(key).replace('-', '_')
        if name not in _CONVERTERS:
            raise ParseError(f'Unknown key {key!r}, expected one of {", ".join(Keys.ALL)}', path)
        try:
            config[name] = _CONVERTERS[name](value)
        except ValueError as e:
            raise ParseError(f'{name}: {e}', path) from e
    logger.debug(f'{path}: {config}')
    return config


def merge_overrides(file_config: Mapping[str, Any], overrides: Mapping[str, Any]) -> dict[str, Any]:
    # command-line values win; None means "not given"
    merged = dict(file_config)
    merged.update({key: value for key, value in overrides.items() if value is not None})
    return merged


def solver_config_from(props: Mapping[str, Any]) -> SolverConfig:
    fields = {
        'step_limit':       props.get(Keys.STEP_LIMIT),
        'no_improve_limit': props.get(Keys.NO_IMPROVE_LIMIT),
        'restarts':         props.get(Keys.RESTARTS),
        'seed':             props.get(Keys.SEED),
        'schedule':         props.get(Keys.SCHEDULE),
        'swaps':            props.get(Keys.SWAPS),
    }
    return SolverConfig()._replace(**{key: value for key, value in fields.items() if value is not None})

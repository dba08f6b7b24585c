#
# Edge-list and partition file reading. Both formats are line based:
#
#   edge list:  [# key=value ...]   provenance comments, optional
#               n k_hint            header
#               i j [w]             one edge per line, 0-based, w defaults to 1
#
#   partition:  one coalition label per line, line i for player i
#
from __future__ import annotations

import logging
import os
from typing import Iterator, NamedTuple

from .errors import ParseError
from .game import CoalitionStructure, Game

logger = logging.getLogger(__name__)


class EdgeList(NamedTuple):
    game: Game
    k_hint: int
    # key=value pairs found in comment lines, e.g. generator and seed
    provenance: dict[str, str] = {}


def _numbered_lines(path: os.PathLike[str] | str) -> Iterator[tuple[int, str]]:
    with open(path, 'r', encoding = 'utf-8') as fp:
        for line_num, line in enumerate(fp, 1):
            yield line_num, line.strip()


def _parse_int(token: str, what: str, path: os.PathLike[str] | str, line_num: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f'{what} {token!r} is not an integer', path, line_num) from None


def read_edge_list(path: os.PathLike[str] | str) -> EdgeList:
    provenance: dict[str, str] = {}
    header: tuple[int, int] | None = None
    values: dict[tuple[int, int], int] = {}
    for line_num, line in _numbered_lines(path):
        if not line:
            continue
        if line.startswith('#'):
            for token in line[1:].split():
                key, sep, val = token.partition('=')
                if sep:
                    provenance[key] = val
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(f'Header must be "n k_hint", got {line!r}', path, line_num)
            n = _parse_int(parts[0], 'Player count', path, line_num)
            k_hint = _parse_int(parts[1], 'Coalition count hint', path, line_num)
            if n < 1 or k_hint < 0:
                raise ParseError(f'Invalid header values n={n}, k_hint={k_hint}', path, line_num)
            header = (n, k_hint)
            continue
        if len(parts) not in (2, 3):
            raise ParseError(f'Edge line must be "i j [w]", got {line!r}', path, line_num)
        i = _parse_int(parts[0], 'Player index', path, line_num)
        j = _parse_int(parts[1], 'Player index', path, line_num)
        w = _parse_int(parts[2], 'Weight', path, line_num) if len(parts) == 3 else 1
        n = header[0]
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f'Edge ({i}, {j}) out of range for {n} players', path, line_num)
        if i == j:
            raise ParseError(f'Self edge on player {i}', path, line_num)
        if w < 0:
            raise ParseError(f'Negative weight {w}', path, line_num)
        if (i, j) in values:
            raise ParseError(f'Duplicate edge ({i}, {j})', path, line_num)
        values[(i, j)] = w
    if header is None:
        raise ParseError('Missing "n k_hint" header', path)
    logger.debug(f'{path}: {header[0]} players, {len(values)} edges')
    return EdgeList(Game(header[0], values), header[1], provenance)


def read_partition(path: os.PathLike[str] | str, n: int, k: int | None = None) -> CoalitionStructure:
    labels: list[int] = []
    for line_num, line in _numbered_lines(path):
        if not line or line.startswith('#'):
            continue
        label = _parse_int(line, 'Coalition label', path, line_num)
        if label < 0 or (k is not None and label >= k):
            bound = '' if k is None else f' (k={k})'
            raise ParseError(f'Coalition label {label} out of range{bound}', path, line_num)
        labels.append(label)
    if len(labels) != n:
        raise ParseError(f'Partition lists {len(labels)} players, instance has {n}', path)
    try:
        return CoalitionStructure(labels, k if k is not None else max(labels) + 1)
    except ValueError as e:
        raise ParseError(str(e), path) from e


def read_id_map(path: os.PathLike[str] | str) -> list[str]:
    ids: list[str] = []
    for line_num, line in _numbered_lines(path):
        if not line:
            continue
        index, sep, ident = line.partition(',')
        if not sep or _parse_int(index, 'Index', path, line_num) != len(ids):
            raise ParseError(f'Expected "{len(ids)},<id>", got {line!r}', path, line_num)
        ids.append(ident)
    return ids

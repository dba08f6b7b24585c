from __future__ import annotations

import io
from pathlib import Path

import pytest

from ashg import (
    CoalitionStructure, Game, ParseError, read_edge_list, read_id_map, read_partition, write_edge_list,
    write_id_map, write_id_partition, write_partition,
)


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding='utf-8')
    return path


def test_read_edge_list(tmp_path: Path) -> None:
    path = _write(tmp_path / 'game.txt', '# generator=uniform seed=7\n3 2\n0 1 2\n1 0\n\n2 0 1\n')
    edges = read_edge_list(path)
    assert edges.k_hint == 2
    assert edges.provenance == {'generator': 'uniform', 'seed': '7'}
    assert edges.game == Game(3, {(0, 1): 2, (1, 0): 1, (2, 0): 1})


@pytest.mark.parametrize('body, line', [
    ('3 2\n0 3\n', 2),      # out of range
    ('3 2\n1 1\n', 2),      # self edge
    ('3 2\n0 1 -1\n', 2),   # negative weight
    ('3 2\n0 1\n0 1 2\n', 3),  # duplicate
    ('3 2\n0 x\n', 2),      # not an integer
    ('3\n', 1),             # bad header
    ('3 2\n0 1 1 1\n', 2),  # too many fields
])
def test_read_edge_list_errors(tmp_path: Path, body: str, line: int) -> None:
    path = _write(tmp_path / 'bad.txt', body)
    with pytest.raises(ParseError) as info:
        read_edge_list(path)
    assert info.value.line == line
    assert str(path) in str(info.value)


def test_read_edge_list_missing_header(tmp_path: Path) -> None:
    with pytest.raises(ParseError):
        read_edge_list(_write(tmp_path / 'empty.txt', '# only a comment\n'))


def test_edge_list_write_then_read(tmp_path: Path) -> None:
    game = Game(4, {(0, 1): 3, (1, 2): 1, (3, 0): 2})
    path = tmp_path / 'out.txt'
    write_edge_list(path, game, 2, {'generator': 'test'})
    lines = path.read_text(encoding='utf-8').splitlines()
    assert lines[0] == '# generator=test'
    assert lines[1] == '4 2'
    assert read_edge_list(path).game == game


def test_simple_games_omit_weights() -> None:
    buf = io.StringIO()
    write_edge_list(buf, Game(2, {(0, 1): 1}))
    assert buf.getvalue() == '2 0\n0 1\n'


def test_read_partition(tmp_path: Path) -> None:
    path = _write(tmp_path / 'p.txt', '0\n1\n# comment\n1\n0\n')
    assert read_partition(path, 4).as_tuple() == (0, 1, 1, 0)
    assert read_partition(path, 4, 2).k == 2


def test_read_partition_errors(tmp_path: Path) -> None:
    path = _write(tmp_path / 'p.txt', '0\n1\n1\n')
    with pytest.raises(ParseError, match='instance has 4'):
        read_partition(path, 4)
    with pytest.raises(ParseError) as info:
        read_partition(_write(tmp_path / 'q.txt', '0\n2\n'), 2, 2)
    assert info.value.line == 2
    # label 1 unused with k=3 leaves an empty coalition
    with pytest.raises(ParseError):
        read_partition(_write(tmp_path / 'r.txt', '0\n2\n'), 2, 3)


def test_partition_and_ids(tmp_path: Path) -> None:
    cs = CoalitionStructure([1, 0, 1], 2)
    write_partition(tmp_path / 'p.txt', cs)
    assert read_partition(tmp_path / 'p.txt', 3) == cs
    write_id_map(tmp_path / 'ids.txt', ['ann', 'bob', 'cy'])
    assert read_id_map(tmp_path / 'ids.txt') == ['ann', 'bob', 'cy']
    write_id_partition(tmp_path / 'named.txt', cs, ['ann', 'bob', 'cy'])
    assert (tmp_path / 'named.txt').read_text(encoding='utf-8') == 'ann,1\nbob,0\ncy,1\n'
    with pytest.raises(ValueError):
        write_id_partition(tmp_path / 'named.txt', cs, ['ann'])


def test_read_id_map_rejects_gaps(tmp_path: Path) -> None:
    with pytest.raises(ParseError):
        read_id_map(_write(tmp_path / 'ids.txt', '0,a\n2,b\n'))

from __future__ import annotations

import contextlib
import logging
import os
from typing import IO, Iterator, Mapping, Sequence

from .game import CoalitionStructure, Game

logger = logging.getLogger(__name__)


@contextlib.contextmanager
def _text_sink(dest: os.PathLike[str] | str | IO[str]) -> Iterator[IO[str]]:
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, 'w', encoding = 'utf-8', newline = '\n') as fp:
            yield fp
    else:
        yield dest


def write_edge_list(
    dest: os.PathLike[str] | str | IO[str], game: Game, k_hint: int = 0,
    provenance: Mapping[str, object] | None = None,
) -> None:
    # simple games omit the weight column
    simple = game.is_simple
    with _text_sink(dest) as fp:
        if provenance:
            fp.write('# ' + ' '.join(f'{key}={val}' for key, val in provenance.items()) + '\n')
        fp.write(f'{game.n} {k_hint}\n')
        for i, j, w in game.edges():
            fp.write(f'{i} {j}\n' if simple else f'{i} {j} {w}\n')
    logger.debug(f'Wrote edge list with {game.n} players')


def write_partition(dest: os.PathLike[str] | str | IO[str], cs: CoalitionStructure) -> None:
    with _text_sink(dest) as fp:
        for label in cs.assignment:
            fp.write(f'{label}\n')


def write_id_map(dest: os.PathLike[str] | str | IO[str], ids: Sequence[str]) -> None:
    with _text_sink(dest) as fp:
        for index, ident in enumerate(ids):
            fp.write(f'{index},{ident}\n')


def write_id_partition(dest: os.PathLike[str] | str | IO[str], cs: CoalitionStructure, ids: Sequence[str]) -> None:
    if len(ids) != cs.n:
        raise ValueError(f'Got {len(ids)} ids for {cs.n} players')
    with _text_sink(dest) as fp:
        for ident, label in zip(ids, cs.assignment):
            fp.write(f'{ident},{label}\n')

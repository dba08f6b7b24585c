from __future__ import annotations

import os


class ParseError(ValueError):
    def __init__(self, message: str, path: os.PathLike[str] | str | None = None, line: int | None = None):
        self.message = message
        self.path = None if path is None else str(path)
        self.line = line
        location = self.path or '<input>'
        if line is not None:
            location += f':{line}'
        super().__init__(f'{location}: {message}')


class InfeasibleError(ValueError):
    pass


class SizeGuardError(RuntimeError):
    pass

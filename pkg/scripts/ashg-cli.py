#!/usr/bin/env python3
from __future__ import annotations

import argparse
import os
import sys
from importlib import import_module
from pathlib import Path

# Necessary to load the local ashg package
if "NO_LOCAL_ASHG" not in os.environ and (Path(__file__).parent.parent / 'ashg').exists():
    sys.path.insert(0, str(Path(__file__).parent.parent))

from ashg.cli import UsageParser  # noqa: E402

COMMANDS = ("generate", "solve", "evaluate", "bench", "oracle")


def main(argv: list[str] | None = None) -> int:
    parser = UsageParser(prog="ashg", description="Egalitarian coalition structures for additively separable hedonic games")
    parser.add_argument("command", choices=COMMANDS, help="subcommand, see ashg <command> --help")
    parser.add_argument("args", nargs=argparse.REMAINDER, help="arguments of the subcommand")

    args = parser.parse_args(argv)
    command = import_module(f"scripts.ashg-{args.command}").main
    return command(args.args)


if __name__ == '__main__':
    sys.exit(main())

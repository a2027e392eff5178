# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

import sys
from importlib import import_module
from os.path import basename

from . import commandinfo
from .errors import NPCError


def print_version(file=None):
    from . import __version__
    version_info = sys.version_info
    pyver = '{0[0]}.{0[1]}.{0[2]}'.format(version_info)
    if version_info[3] != 'final':
        pyver += '{0[3][0]}{0[4]}'.format(version_info)
    print(f'npcgroups v{__version__} on Python {pyver}', file=file)


def print_commands(file=None) -> int:
    if file is None:
        file = sys.stderr
    print('Please provide a command as the first argument.', file=file)
    print('Available commands:', file=file)
    print(file=file)
    for cat, items in commandinfo.categories.items():
        print(cat, file=file)
        for item in items:
            info = commandinfo.get_command_info(item)
            print(f' - {item}: {info["name"]} ({info["info"]})', file=file)
    print(file=file)
    print('Additional options:', file=file)
    print('  --version                          print version', file=file)
    return 1


def run(command: str, args: list = None, prog: str = None) -> int:
    """Run one subcommand and return its exit status. Library errors become their exit codes."""
    if command in {'-v', '--version'}:
        print_version()
        return 0

    if command not in commandinfo.commands and command not in commandinfo.aliases:
        print_version(sys.stderr)
        return print_commands()

    name = commandinfo.aliases.get(command, command)
    module = import_module('.command.' + name, __package__)
    try:
        return module.main(prog=prog or f'npcgroups {name}', args=[] if args is None else args) or 0
    except NPCError as e:
        print(f'{type(e).__name__}: {e}', file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # --help
        return e.code or 0


def main():
    prog = basename(sys.argv[0])
    sys.exit(run(prog[4:].lower(), sys.argv[1:], prog=prog))


def cli():
    if len(sys.argv) < 2:
        print_version(sys.stderr)
        sys.exit(print_commands())
    sys.exit(run(sys.argv[1].lower(), sys.argv[2:]))

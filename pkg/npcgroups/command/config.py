# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Shows the caps and seed in effect, or writes them to the config file.
"""

from sys import argv

from . import _common as _c
from .. import confighandler


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Show or save the configuration.',
                              parents=(_c.default_argp,))
    parser.add_argument('--save', help=f'write the configuration to {confighandler.config_file}',
                        action='store_true')

    a = parser.parse_args(args)
    _c.setup_logging(a)

    if a.save:
        path = confighandler.save_config()
        print('Saved to:', path)
        return 0

    data = {section: dict(confighandler.parser[section]) for section in confighandler.parser.sections()}
    data['random']['seed'] = str(_c.resolve_seed(a))
    lines = [f'# {confighandler.config_file}']
    rows = []
    for section, values in data.items():
        lines.append(f'[{section}]')
        for key, value in values.items():
            lines.append(f'{key} = {value}')
            rows.append([section, key, value])
    _c.emit(a, data, '\n'.join(lines), ('section', 'key', 'value'), rows)
    return 0

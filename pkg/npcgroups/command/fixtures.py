# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Lists the built-in groups, or shows the generators of one.
"""

from sys import argv

from . import _common as _c
from .. import fixtures


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Built-in fixture groups.')
    sub = parser.add_subparsers(dest='action', metavar='ACTION')
    sub.required = True
    sub.add_parser('list', help='list the fixtures', parents=(_c.default_argp,))
    p = sub.add_parser('show', help='show the generators of a fixture', parents=(_c.default_argp,))
    p.add_argument('name', help='fixture name or alias')

    a = parser.parse_args(args)
    _c.setup_logging(a)

    if a.action == 'list':
        lines = []
        rows = []
        for cat, items in fixtures.categories.items():
            lines.append(cat)
            for item in items:
                info = fixtures.get_fixture_info(item)
                lines.append(f' - {item}: {info["name"]} ({info["info"]})')
                rows.append([item, cat, info['name']])
        data = {name: {'name': info['name'], 'info': info['info']} for name, info in fixtures.fixtures.items()}
        _c.emit(a, data, '\n'.join(lines), ('fixture', 'category', 'name'), rows)
        return 0

    group = fixtures.get_fixture(a.name)
    info = fixtures.get_fixture_info(a.name)
    data = group.describe()
    data['info'] = info['info']
    data['abelian_basis'] = info['abelian']
    lines = [f'{group.name}: {info["name"]}', info['info']]
    lines.extend(f'{name} = {g.format()}' for name, g in zip(group.names, group.gens))
    _c.emit(a, data, '\n'.join(lines))
    return 0

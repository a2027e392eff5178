# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

import logging
import sys
from argparse import ArgumentParser, SUPPRESS
from typing import TYPE_CHECKING

from .. import confighandler
from ..errors import UsageError

if TYPE_CHECKING:
    from argparse import Namespace
    from typing import Iterable, Optional, Sequence
    from ..distortion import MatGroup

FORMATS = ('text', 'json', 'csv', 'dot')


class CommandParser(ArgumentParser):
    """argparse, but usage errors raise :class:`UsageError` (exit status 1) instead of exiting with 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


default_argp = ArgumentParser(add_help=False)
default_argp.add_argument('-d', '--debug', help='debug logging on stderr', action='store_true')
default_argp.add_argument('--do', help=SUPPRESS, default=None)  # debug log to a file
default_argp.add_argument('--seed', help='random seed (default: $NPC_SEED or the config file)', type=int)
default_argp.add_argument('--format', help='output format', choices=FORMATS, default='text')

dot_argp = ArgumentParser(add_help=False)
dot_argp.add_argument('--dot', metavar='FILE', help='also write the graph as DOT to FILE')

group_argp = ArgumentParser(add_help=False)
group_argp_group = group_argp.add_mutually_exclusive_group(required=True)
group_argp_group.add_argument('--group', metavar='FILE', help='group JSON file')
group_argp_group.add_argument('--fixture', metavar='NAME', help='built-in group (see "fixtures list")')


def cap_argp(*names: str) -> ArgumentParser:
    """Parent parser with the named caps; unset values come from the config file."""
    parser = ArgumentParser(add_help=False)
    helps = {
        'cap': ('--cap', 'word length cap for breadth first search'),
        'tau_n': ('--N', 'largest power sampled for translation length'),
        'element_cap': ('--element-cap', 'cap on enumerated elements and candidates'),
        'search_radius': ('--search-radius', 'radius searched for fixed points and axes'),
        'order_cap': ('--order-cap', 'largest order reported exactly'),
        'bit_limit': ('--bit-limit', 'abort when matrix entries grow past this many bits'),
    }
    for name in names:
        flag, text = helps[name]
        parser.add_argument(flag, dest=name, help=text, type=int, default=None)
    return parser


def setup_logging(a: 'Namespace'):
    if a.do:
        logging.basicConfig(level=logging.DEBUG, filename=a.do)
    elif a.debug:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)


def resolve_seed(a: 'Namespace') -> int:
    return a.seed if a.seed is not None else confighandler.get_seed()


def resolve_cap(a: 'Namespace', name: str, group: 'Optional[MatGroup]' = None) -> int:
    value = getattr(a, name, None)
    if value is not None:
        if value < 0:
            raise UsageError(f'{name} must be nonnegative')
        return value
    if name == 'cap':
        key = 'bfs_radius' if group is None or len(group.gens) <= 2 else 'bfs_radius_3gens'
        return confighandler.get_int('caps', key)
    return confighandler.get_int('caps', name)


def load_group_arg(a: 'Namespace') -> 'MatGroup':
    if a.fixture:
        from ..fixtures import get_fixture
        return get_fixture(a.fixture)
    from ..jsonio import load_group
    return load_group(a.group)


def require_format(a: 'Namespace', allowed: 'Iterable[str]'):
    allowed = tuple(allowed)
    if a.format not in allowed:
        raise UsageError(f'--format {a.format} is not available here (use {", ".join(allowed)})')


def emit(a: 'Namespace', data: dict, text: 'Optional[str]' = None, header: 'Sequence[str]' = (),
         rows: 'Iterable[Sequence]' = (), graph=None):
    """Print ``data`` in the requested format. ``text``, ``header``/``rows`` and ``graph`` back the text, csv and
    dot formats. With ``--dot FILE`` the graph is also written to that file."""
    from ..jsonio import dump_csv, dump_json, emit_graph
    if graph is not None and getattr(a, 'dot', None):
        try:
            with open(a.dot, 'w', encoding='utf-8') as f:
                f.write(emit_graph(graph))
        except OSError as e:
            raise UsageError(f'cannot write {a.dot}: {e.strerror}')
    if a.format == 'json':
        out = dump_json(data) + '\n'
    elif a.format == 'csv':
        if not header:
            raise UsageError('--format csv is not available here')
        out = dump_csv(header, rows)
    elif a.format == 'dot':
        if graph is None:
            raise UsageError('--format dot is not available here')
        out = emit_graph(graph)
    else:
        out = (text if text is not None else dump_json(data)) + '\n'
    print(out, end='')

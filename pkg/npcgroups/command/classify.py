# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Classifies an invertible matrix as the identity, finite order, unipotent of infinite order, virtually unipotent of
infinite order, or other.
"""

from sys import argv

from . import _common as _c
from ..blocks import classify_element, twist_obstruction
from ..errors import UsageError


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Classify an element by order and unipotence.',
                              parents=(_c.default_argp, _c.cap_argp('order_cap')))
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--matrix', metavar='FILE', help='matrix JSON file')
    source.add_argument('--group', metavar='FILE', help='group JSON file (with --word)')
    source.add_argument('--fixture', metavar='NAME', help='built-in group (with --word)')
    parser.add_argument('--word', help='word in the generators of the group')
    parser.add_argument('--twist', help='also report whether the element has finite order or is virtually '
                                        'unipotent', action='store_true')

    a = parser.parse_args(args)
    _c.setup_logging(a)
    seed = _c.resolve_seed(a)
    order_cap = _c.resolve_cap(a, 'order_cap')

    if a.matrix:
        from ..jsonio import load_matrix
        g = load_matrix(a.matrix)
    else:
        if a.word is None:
            raise UsageError('--word is required with --group or --fixture')
        g = _c.load_group_arg(a).element(a.word)

    result = classify_element(g, order_cap, seed)
    data = result.to_dict()
    data['element'] = g.format()
    text = str(result)
    if a.twist:
        verdict = twist_obstruction(g, order_cap)
        data['twist'] = verdict.to_dict()
        text += '\n' + ('finite order or virtually unipotent' if verdict.passes else 'obstructed')
    _c.emit(a, data, text)
    return 0

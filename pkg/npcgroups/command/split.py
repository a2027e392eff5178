# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Given a free abelian subgroup A of Z^r + torsion by the images of a basis, finds a projection that stays injective
on A and the index of A's image, so A is a direct factor of a finite index subgroup.
"""

from sys import argv

from . import _common as _c
from ..blocks import split_direct_factor
from ..jsonio import load_presentation


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Split a free abelian subgroup off as a direct factor.',
                              parents=(_c.default_argp,))
    parser.add_argument('--presentation', metavar='FILE', help='presentation JSON file', required=True)

    a = parser.parse_args(args)
    _c.setup_logging(a)

    pres = load_presentation(a.presentation)
    phi, index = split_direct_factor(pres, len(pres.images))
    data = {'presentation': pres.to_dict(), 'projection': phi, 'index': index}
    lines = [f'index {index}'] + ['phi ' + ' '.join(map(str, row)) for row in phi]
    _c.emit(a, data, '\n'.join(lines), ('row',) + tuple(f'c{i}' for i in range(pres.rank)),
            ([i] + row for i, row in enumerate(phi)))
    return 0

# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Valuation families of rings F_p[t, 1/P_1, ...] and the finite sets of ring elements bounded below by every
valuation of the family.
"""

from sys import argv
from typing import TYPE_CHECKING

from . import _common as _c
from ..core.parse import parse_scalar
from ..errors import MalformedInputError, UnsupportedFieldError
from ..jsonio import dump_ring, load_ring
from ..valuation import (bounded_count, build_valuation_family, enumerate_bounded, ultrametric_distance,
                         valuate)

if TYPE_CHECKING:
    from argparse import Namespace
    from ..valuation import RingDesc


def _ring(a: 'Namespace') -> 'RingDesc':
    from ..core.field import PrimeField
    from ..core.ratfunc import RationalFunctionField
    from ..valuation import make_ring
    if a.ring:
        return load_ring(a.ring)
    field = RationalFunctionField(PrimeField(a.char), a.var)
    primes = []
    for text in a.invert or ():
        x = parse_scalar(text, field)
        if not x.den.is_one():
            raise MalformedInputError(f'{text!r} is not a polynomial')
        primes.append(x.num)
    return make_ring(field, [primes])


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='List or count ring elements bounded below by a valuation '
                                                     'family, or valuate single elements.',
                              parents=(_c.default_argp, _c.cap_argp('element_cap')))
    ring_group = parser.add_mutually_exclusive_group(required=True)
    ring_group.add_argument('--ring', metavar='FILE', help='ring JSON file')
    ring_group.add_argument('--char', help='characteristic p of F_p[t]', type=int)
    parser.add_argument('--var', help='name of the transcendental (with --char)', default='t')
    parser.add_argument('--invert', help='monic irreducible polynomial to invert (with --char)', action='append')
    parser.add_argument('--m', help='lower bound for every valuation', type=int)
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument('--count', help='only print the number of elements', action='store_true')
    mode.add_argument('--list', help='print the elements (default)', action='store_true')
    mode.add_argument('--family', help='print the valuation family', action='store_true')
    mode.add_argument('--element', metavar='X', help='print the valuations of one element')
    parser.add_argument('--distance', metavar='Y', help='with --element, also the ultrametric distance to Y')

    a = parser.parse_args(args)
    _c.setup_logging(a)

    ring = _ring(a)
    fam = build_valuation_family(ring)
    field = ring.field

    if a.family:
        _c.emit(a, {'ring': dump_ring(ring), 'family': fam.names}, '\n'.join(fam.names),
                ('valuation',), ([x] for x in fam.names))
        return 0

    if a.element is not None:
        x = parse_scalar(a.element, field)
        y = parse_scalar(a.distance, field) if a.distance is not None else None
        rows = []
        for v in fam:
            row = [v.name, str(valuate(v, x))]
            if y is not None:
                row.append(str(ultrametric_distance(v, x, y)))
            rows.append(row)
        header = ('valuation', 'value') + (('distance',) if y is not None else ())
        data = {'element': field.format(x), 'valuations': {r[0]: r[1] for r in rows}}
        if y is not None:
            data['distances'] = {r[0]: r[2] for r in rows}
        _c.emit(a, data, '\n'.join(' '.join(r) for r in rows), header, rows)
        return 0

    if a.m is None:
        parser.error('--m is required to list or count elements')
    cap = _c.resolve_cap(a, 'element_cap')
    elements = enumerate_bounded(ring, fam, a.m, cap)
    data = {'ring': dump_ring(ring), 'family': fam.names, 'm': a.m, 'count': len(elements)}
    if a.count:
        try:
            data['closed_form'] = bounded_count(ring, a.m)
        except UnsupportedFieldError:
            pass
        _c.emit(a, data, str(len(elements)), ('count',), [[len(elements)]])
        return 0
    labels = [field.format(x) for x in elements]
    data['elements'] = labels
    _c.emit(a, data, '\n'.join(labels), ('element',), ([x] for x in labels))
    return 0

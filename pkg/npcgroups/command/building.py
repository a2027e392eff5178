# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Lattice classes over F_p(t): balls in the tree of SL(2), elliptic and hyperbolic certificates for elements,
displacement at the standard point of a product of buildings, and stabilizers of that point. Elements of GL(n)
with determinant other than one act through diag(g, det(g)^-1) in SL(n + 1).
"""

from argparse import ArgumentParser
from logging import getLogger
from sys import argv

from . import _common as _c
from ..building import (ball, classify_isometry, coordinate_distances, embed_special_linear, product_displacement,
                        standard_product_point, standard_vertex, stabilizer_elements, stabilizer_entry_bound)
from ..core.field import PrimeField
from ..core.ratfunc import RationalFunctionField
from ..errors import UnsupportedFieldError, UsageError
from ..valuation import build_valuation_family, ring_of_group, valuation_from_text

log = getLogger(__name__)


def _ball(a):
    field = RationalFunctionField(PrimeField(a.char), a.var)
    val = valuation_from_text(field, a.val)
    result = ball(standard_vertex(val), a.radius)
    labels = result.labels()
    data = {'valuation': val.name, 'radius': a.radius, 'layer_sizes': result.layer_sizes, 'vertices': labels,
            'edges': [[labels[i], labels[j]] for i, j in result.edges], 'is_tree': result.is_tree()}
    text = '\n'.join([
        'layers ' + ' '.join(map(str, result.layer_sizes)),
        f'vertices {len(labels)}',
        f'edges {len(result.edges)}',
        f'tree {"yes" if data["is_tree"] else "no"}',
    ])
    rows = [[labels[i], labels[j]] for i, j in result.edges]
    _c.emit(a, data, text, ('source', 'target'), rows, graph=result)


def _element(a):
    if a.matrix:
        from ..jsonio import load_matrix
        return load_matrix(a.matrix)
    if not (a.group or a.fixture) or a.word is None:
        raise UsageError('give --matrix FILE, or --word with --group or --fixture')
    return _c.load_group_arg(a).element(a.word)


def _classify(a):
    g = _element(a)
    if not isinstance(g.field, RationalFunctionField):
        raise UnsupportedFieldError('isometries are classified over F_p(t) only')
    val = valuation_from_text(g.field, a.val)
    radius = _c.resolve_cap(a, 'search_radius')
    result = classify_isometry(g, val, radius)
    data = result.to_dict()
    data['element'] = g.format()
    data['valuation'] = val.name
    text = f'{result.kind} {result.translation_length}'
    _c.emit(a, data, text)


def _displace(a):
    g = _element(a)
    if not isinstance(g.field, RationalFunctionField):
        raise UnsupportedFieldError('buildings are only built over F_p(t)')
    if a.ring:
        from ..jsonio import load_ring
        ring = load_ring(a.ring)
    elif a.group or a.fixture:
        ring = ring_of_group(_c.load_group_arg(a).gens)
    else:
        ring = ring_of_group([g])
    embedded = not g.field.is_one(g.det())
    if embedded:
        g = embed_special_linear(g)
        log.debug('determinant is not one, acting by %s', g.format())
    fam = build_valuation_family(ring)
    point = standard_product_point(fam, g.n)
    distances = coordinate_distances(g, point)
    displacement = product_displacement(g, point)
    data = {'element': g.format(), 'embedded': embedded, 'family': fam.names, 'distances': distances,
            'squared_displacement': displacement.squared, 'displacement': str(displacement)}
    lines = [f'embedded in SL({g.n})'] if embedded else []
    lines.extend(f'{name} {d}' for name, d in zip(fam.names, distances))
    lines.append(f'displacement {displacement}')
    _c.emit(a, data, '\n'.join(lines), ('valuation', 'distance'), zip(fam.names, distances))


def _stabilizer(a):
    from ..jsonio import dump_ring, load_ring
    if a.ring:
        group = None
        ring = load_ring(a.ring)
    elif a.group or a.fixture:
        group = _c.load_group_arg(a)
        ring = ring_of_group(group.gens)
    else:
        raise UsageError('give --ring FILE, --group FILE or --fixture NAME')
    fam = build_valuation_family(ring)
    point = standard_product_point(fam, group.n if group else a.n)
    cap = _c.resolve_cap(a, 'element_cap')
    found = stabilizer_elements(group, point, fam, ring, cap)
    bound = min(stabilizer_entry_bound(c.rep.inverse(), c.val) for c in point.coords)
    labels = [g.format() for g in found]
    data = {'ring': dump_ring(ring), 'family': fam.names, 'point': point.labels(), 'entry_bound': bound,
            'count': len(found), 'elements': labels}
    text = '\n'.join([str(len(found))] + labels)
    _c.emit(a, data, text, ('element',), ([x] for x in labels))


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Buildings of SL(n) over F_p(t).')
    sub = parser.add_subparsers(dest='action', metavar='ACTION')
    sub.required = True

    field_argp = ArgumentParser(add_help=False)
    field_argp.add_argument('--char', help='characteristic p', type=int, default=2)
    field_argp.add_argument('--var', help='name of the transcendental', default='t')

    source_argp = ArgumentParser(add_help=False)
    source = source_argp.add_mutually_exclusive_group()
    source.add_argument('--group', metavar='FILE', help='group JSON file')
    source.add_argument('--fixture', metavar='NAME', help='built-in group (see "fixtures list")')

    val_help = 'valuation: a monic irreducible polynomial, or mu0 for the degree valuation'

    p = sub.add_parser('ball', help='ball around the standard vertex of the tree',
                       parents=(_c.default_argp, field_argp, _c.dot_argp))
    p.add_argument('--val', help=val_help, default='t')
    p.add_argument('--radius', help='ball radius', type=int, default=2)

    p = sub.add_parser('classify', help='elliptic or hyperbolic certificate for an element of SL(2)',
                       parents=(_c.default_argp, source_argp, _c.cap_argp('search_radius')))
    p.add_argument('--matrix', metavar='FILE', help='matrix JSON file')
    p.add_argument('--word', help='word in the generators of the group')
    p.add_argument('--val', help=val_help, default='t')

    p = sub.add_parser('displace', help='displacement at the standard point of the product of buildings',
                       parents=(_c.default_argp, source_argp))
    p.add_argument('--matrix', metavar='FILE', help='matrix JSON file')
    p.add_argument('--word', help='word in the generators of the group')
    p.add_argument('--ring', metavar='FILE', help='ring JSON file (default: the ring of the group or matrix)')

    p = sub.add_parser('stabilizer', help='stabilizer of the standard point in the product of buildings',
                       parents=(_c.default_argp, source_argp, _c.cap_argp('element_cap')))
    p.add_argument('--ring', metavar='FILE', help='ring JSON file (instead of a group)')
    p.add_argument('--n', help='matrix size when only a ring is given', type=int, default=2)

    a = parser.parse_args(args)
    _c.setup_logging(a)
    {'ball': _ball, 'classify': _classify, 'displace': _displace, 'stabilizer': _stabilizer}[a.action](a)
    return 0

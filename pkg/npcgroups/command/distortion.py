# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Word metrics: exact word length, translation length estimates, scans for small estimates, and distortion of free
abelian subgroups.
"""

from argparse import ArgumentParser
from sys import argv

from . import _common as _c
from ..distortion import (EXCEEDS_CAP, AbelianEmbedding, abelian_distortion, cayley_ball,
                          estimate_tau, lattice_box, translation_consistency, uniform_lower_bound_scan,
                          word_length, znorm_check)
from ..errors import UnsupportedFieldError, UsageError


def _basis(a, group):
    if a.basis:
        from ..jsonio import load_basis
        return load_basis(a.basis, group)
    if a.fixture:
        from ..fixtures import fixture_abelian_basis
        return fixture_abelian_basis(a.fixture)
    raise UsageError('--basis is required with --group')


def _length(a, group):
    cap = _c.resolve_cap(a, 'cap', group)
    g = group.element(a.word)
    length = word_length(group, g, cap)
    data = {'element': g.format(), 'word': a.word, 'cap': cap,
            'length': str(length) if length is EXCEEDS_CAP else length}
    _c.emit(a, data, str(length))


def _tau(a, group):
    cap = _c.resolve_cap(a, 'cap', group)
    big_n = _c.resolve_cap(a, 'tau_n')
    est = estimate_tau(group, group.element(a.word), big_n, cap, bit_limit=_c.resolve_cap(a, 'bit_limit'))
    data = est.to_dict()
    data.update(word=a.word, cap=cap, N=big_n)
    text = '\n'.join([f'tau_hat {est.tau_hat}'] + [f'{n} {l}' for n, l in est.samples])
    _c.emit(a, data, text, ('n', 'length', 'ratio'), ([n, l, str(r)] for n, l, r in est.curve()))


def _scan(a, group):
    cap = _c.resolve_cap(a, 'cap', group)
    big_n = _c.resolve_cap(a, 'tau_n')
    result = uniform_lower_bound_scan(group, a.radius, big_n, cap, _c.resolve_cap(a, 'order_cap'),
                                      bit_limit=_c.resolve_cap(a, 'bit_limit'))
    data = result.to_dict()
    data.update(radius=a.radius, cap=cap, N=big_n)
    witness = 'none' if result.witness is None else result.witness.format()
    text = f'min tau_hat {result.tau_hat}\nwitness {witness}'
    _c.emit(a, data, text, ('element', 'tau_hat'), ([e.element.format(), str(e.tau_hat)] for e in result.estimates))


def _abelian(a, group):
    cap = _c.resolve_cap(a, 'cap', group)
    emb = AbelianEmbedding(group, tuple(_basis(a, group)))
    table = abelian_distortion(group, emb, cap, a.box)
    data = table.to_dict()
    data.update(box=a.box, cap=cap)
    rows = [[' '.join(map(str, p)), norm, str(l)] for p, norm, l in table.rows]
    text = '\n'.join([f'k {table.k}'] + [' '.join(map(str, r)) for r in rows])
    _c.emit(a, data, text, ('point', 'norm1', 'word_length'), rows)


def _znorm(a, group):
    cap = _c.resolve_cap(a, 'cap', group)
    big_n = _c.resolve_cap(a, 'tau_n')
    emb = AbelianEmbedding(group, tuple(_basis(a, group)))
    report = znorm_check(group, emb, lattice_box(emb.rank, a.box), big_n, cap)
    text = '\n'.join([
        f'subadditive {report.subadditive_checks} checks, {report.subadditive_tight} tight',
        f'homogeneity {report.homogeneity_checks} checks, {report.homogeneity_tight} tight',
        f'violations {len(report.violations)}',
    ] + report.violations)
    _c.emit(a, report.to_dict(), text)


def _ball(a, group):
    result = cayley_ball(group, a.radius)
    data = {'radius': a.radius, 'sphere_sizes': result.sphere_sizes(), 'elements': result.labels(),
            'edges': [[g.format(), h.format(), name] for g, h, name in result.edges]}
    text = 'spheres ' + ' '.join(map(str, result.sphere_sizes()))
    rows = [[g.format(), result.lengths[g]] for g in result.elements]
    _c.emit(a, data, text, ('element', 'length'), rows, graph=result)


def _consistency(a, group):
    from ..core.ratfunc import RationalFunctionField
    from ..valuation import valuation_from_text
    if not isinstance(group.field, RationalFunctionField):
        raise UnsupportedFieldError('tree translation lengths need a group over F_p(t)')
    cap = _c.resolve_cap(a, 'cap', group)
    big_n = _c.resolve_cap(a, 'tau_n')
    val = valuation_from_text(group.field, a.val)
    report = translation_consistency(group, group.element(a.word), val, big_n, cap,
                                     search_radius=_c.resolve_cap(a, 'search_radius'))
    text = (f'translation length {report.translation_length} <= {report.edge_scale} * {report.tau_hat}: '
            f'{"yes" if report.consistent else "no"}')
    _c.emit(a, report.to_dict(), text)


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Word metrics on matrix groups.')
    sub = parser.add_subparsers(dest='action', metavar='ACTION')
    sub.required = True

    word_argp = ArgumentParser(add_help=False)
    word_argp.add_argument('--word', help='word in the generators, like "t^2 a t^-2" or "[x,y]"', required=True)

    basis_argp = ArgumentParser(add_help=False)
    basis_argp.add_argument('--basis', metavar='FILE', help='abelian basis JSON file (fixtures have a default)')
    basis_argp.add_argument('--box', help='radius of the box of lattice points', type=int, default=2)

    common = (_c.default_argp, _c.group_argp)
    sub.add_parser('length', help='exact word length up to the cap',
                   parents=common + (word_argp, _c.cap_argp('cap')))
    sub.add_parser('tau', help='translation length estimate min l(g^n)/n',
                   parents=common + (word_argp, _c.cap_argp('cap', 'tau_n', 'bit_limit')))
    p = sub.add_parser('scan', help='smallest estimate over the infinite order elements of a word ball',
                       parents=common + (_c.cap_argp('cap', 'tau_n', 'order_cap', 'bit_limit'),))
    p.add_argument('--radius', help='word ball radius', type=int, default=2)
    sub.add_parser('abelian', help='word length against the l1 norm on a free abelian subgroup',
                   parents=common + (basis_argp, _c.cap_argp('cap')))
    sub.add_parser('znorm', help='check the seminorm laws of the estimates on a free abelian subgroup',
                   parents=common + (basis_argp, _c.cap_argp('cap', 'tau_n')))
    p = sub.add_parser('ball', help='ball in the Cayley graph', parents=common + (_c.dot_argp,))
    p.add_argument('--radius', help='ball radius', type=int, default=2)
    p = sub.add_parser('consistency', help='tree translation length against the word length growth',
                       parents=common + (word_argp, _c.cap_argp('cap', 'tau_n', 'search_radius')))
    p.add_argument('--val', help='valuation (monic irreducible polynomial or mu0)', default='t')

    a = parser.parse_args(args)
    _c.setup_logging(a)
    group = _c.load_group_arg(a)
    actions = {'length': _length, 'tau': _tau, 'scan': _scan, 'abelian': _abelian, 'znorm': _znorm, 'ball': _ball,
               'consistency': _consistency}
    actions[a.action](a, group)
    return 0

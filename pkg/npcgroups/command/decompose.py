# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Simultaneous block decomposition of a commuting family, its block determinants, and (over Q) the direct factor
splitting of the subgroup the family generates.
"""

from sys import argv

from . import _common as _c
from ..blocks import (kernel_torsion_check, simultaneous_blocks, split_direct_factor, theta,
                      theta_presentation)
from ..errors import UsageError


def main(prog: str = None, args: list = None):
    if args is None:
        args = argv[1:]
    parser = _c.CommandParser(prog=prog, description='Decompose a commuting family into simultaneous '
                                                     'generalized eigenspaces.',
                              parents=(_c.default_argp, _c.cap_argp('order_cap')))
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--family', metavar='FILE', help='JSON file with commuting "matrices"')
    source.add_argument('--group', metavar='FILE', help='group JSON file; the generators must commute')
    source.add_argument('--fixture', metavar='NAME', help='built-in group; the generators must commute')
    parser.add_argument('--rational', action='store_true',
                        help='over Q, allow blocks for irreducible factors of higher degree; those blocks are not '
                             'triangularized')
    parser.add_argument('--split', help='over Q, split the generated subgroup off as a direct factor',
                        action='store_true')
    parser.add_argument('--kernel-radius', metavar='R', type=int,
                        help='check torsion of the block determinant kernel on words up to length R')

    a = parser.parse_args(args)
    _c.setup_logging(a)
    seed = _c.resolve_seed(a)

    if a.family:
        from ..jsonio import load_matrices
        gens = load_matrices(a.family)
    else:
        gens = list(_c.load_group_arg(a).gens)

    decomp = simultaneous_blocks(gens, allow_rational=a.rational, seed=seed)
    data = decomp.to_dict()
    values = [theta(g, decomp).to_list() for g in gens]
    data['theta'] = values
    lines = ['blocks ' + ' '.join(map(str, decomp.sizes))]
    lines.extend('theta ' + ' '.join(v) for v in values)

    if a.split:
        pres = theta_presentation(gens, decomp)
        phi, index = split_direct_factor(pres, len(gens))
        data['presentation'] = pres.to_dict()
        data['projection'] = phi
        data['index'] = index
        lines.append(f'index {index}')

    if a.kernel_radius is not None:
        if a.kernel_radius < 0:
            raise UsageError('--kernel-radius must be nonnegative')
        report = kernel_torsion_check(gens, decomp, a.kernel_radius, _c.resolve_cap(a, 'order_cap'))
        data['kernel'] = report.to_dict()
        counts = f'({report.words_checked} words, {len(report.kernel)} in the kernel)'
        if report.violations:
            lines.append(f'kernel torsion violated {counts}')
        elif report.unipotent_flags:
            lines.append(f'kernel not torsion: {len(report.unipotent_flags)} unipotent elements {counts}')
        else:
            lines.append(f'kernel torsion verified {counts}')

    _c.emit(a, data, '\n'.join(lines))
    return 0

# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

from typing import TYPE_CHECKING

from .core.field import PrimeField, RationalField
from .core.matrix import Mat
from .core.parse import parse_scalar
from .core.ratfunc import make_tower
from .distortion import MatGroup
from .errors import UsageError

if TYPE_CHECKING:
    from typing import List

fixtures = {
    'heisenberg': {
        'name': 'Heisenberg group',
        'info': 'upper unitriangular 3x3 over Z; the center [x,y] is distorted',
        'char': 0,
        'gens': {
            'x': [['1', '1', '0'], ['0', '1', '0'], ['0', '0', '1']],
            'y': [['1', '0', '0'], ['0', '1', '1'], ['0', '0', '1']],
        },
        'abelian': ['[x,y]'],
    },
    'baumslag_solitar': {
        'name': 'Baumslag-Solitar BS(1,2)',
        'info': 'a = [[1,1],[0,1]], t = diag(2,1) in GL(2,Q); a^(2^n) = t^n a t^-n',
        'char': 0,
        'gens': {
            'a': [['1', '1'], ['0', '1']],
            't': [['2', '0'], ['0', '1']],
        },
        'abelian': ['a'],
    },
    'lamplighter': {
        'name': 'Lamplighter C_2 wr Z',
        'info': 'diag(t,1) acting on the unipotent [[1,1],[0,1]] in GL(2,F_2(t))',
        'char': 2,
        'transcendentals': ['t'],
        'gens': {
            'a': [['1', '1'], ['0', '1']],
            's': [['t', '0'], ['0', '1']],
        },
        'abelian': ['s'],
    },
    'diagonal_z2': {
        'name': 'Diagonal Z^2',
        'info': 'diag(2,1) and diag(1,2) in GL(2,Q); undistorted, word length is the l1 norm',
        'char': 0,
        'gens': {
            'a': [['2', '0'], ['0', '1']],
            'b': [['1', '0'], ['0', '2']],
        },
        'abelian': ['a', 'b'],
    },
    'free_pair': {
        'name': 'Free group of rank 2',
        'info': 'Sanov matrices [[1,2],[0,1]] and [[1,0],[2,1]] over Q; spheres grow like 4*3^(d-1)',
        'char': 0,
        'gens': {
            'x': [['1', '2'], ['0', '1']],
            'y': [['1', '0'], ['2', '1']],
        },
        'abelian': ['x'],
    },
    'tree_sl2': {
        'name': 'Diagonal and unipotent in SL(2,F_2[t,1/t])',
        'info': 'diag(t,1/t) and [[1,1],[0,1]]; acts on the trees of nu_t and mu0',
        'char': 2,
        'transcendentals': ['t'],
        'gens': {
            'd': [['t', '0'], ['0', '1 | t']],
            'u': [['1', '1'], ['0', '1']],
        },
        'abelian': ['d'],
    },
}

aliases = {
    'bs12': 'baumslag_solitar',
    'bs': 'baumslag_solitar',
    'heis': 'heisenberg',
    'z2': 'diagonal_z2',
    'f2': 'free_pair',
    'free': 'free_pair',
}

categories = {
    'Nilpotent': ['heisenberg'],
    'Solvable, distorted': ['baumslag_solitar', 'lamplighter'],
    'Undistorted': ['diagonal_z2', 'free_pair'],
    'Acting on trees': ['tree_sl2'],
}


def get_fixture_info(name: str) -> dict:
    try:
        return fixtures[aliases.get(name, name)]
    except KeyError:
        raise UsageError(f'unknown fixture {name!r}; see "npcgroups fixtures list"')


def _fixture_field(info: dict):
    ground = RationalField() if info['char'] == 0 else PrimeField(info['char'])
    return make_tower(ground, info.get('transcendentals', ()))


def get_fixture(name: str) -> 'MatGroup':
    canonical = aliases.get(name, name)
    info = get_fixture_info(name)
    field = _fixture_field(info)
    gens = [Mat(field, ((parse_scalar(x, field) for x in row) for row in rows)) for rows in info['gens'].values()]
    return MatGroup(tuple(gens), tuple(info['gens']), canonical)


def fixture_abelian_basis(name: str) -> 'List[Mat]':
    group = get_fixture(name)
    return [group.element(w) for w in get_fixture_info(name)['abelian']]

# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Input documents and output writers.

Every input file is a JSON object with ``"schema": 1``. Unknown keys are rejected. Scalars are strings in the text
format of :mod:`npcgroups.core.parse` (plain integers are accepted too). The field is given as
``{"char": p, "transcendentals": ["t", ...]}`` under ``field``; ring documents carry those two keys at the top
level instead.
"""

import csv
import json
from io import StringIO
from typing import TYPE_CHECKING

from .blocks import AbelianPresentation
from .core.field import PrimeField, RationalField
from .core.matrix import Mat
from .core.parse import parse_scalar
from .core.ratfunc import RationalFunctionField, field_tower, make_tower
from .distortion import MatGroup
from .errors import MalformedInputError
from .valuation import make_ring

if TYPE_CHECKING:
    from typing import Any, Iterable, List, Optional, Sequence
    from .core.field import Field
    from .valuation import RingDesc

__all__ = ['SCHEMA_VERSION', 'load_document', 'parse_field', 'parse_matrix', 'load_matrix', 'load_matrices',
           'load_group', 'load_basis', 'load_ring', 'dump_ring', 'load_presentation', 'dump_json', 'dump_csv',
           'emit_graph']

SCHEMA_VERSION = 1


def _check_keys(doc: dict, required: 'Iterable[str]', optional: 'Iterable[str]' = (), what: str = 'document'):
    if not isinstance(doc, dict):
        raise MalformedInputError(f'{what} must be a JSON object')
    required = set(required)
    allowed = required | set(optional)
    missing = sorted(required - set(doc))
    if missing:
        raise MalformedInputError(f'{what} is missing {", ".join(missing)}')
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise MalformedInputError(f'{what} has unknown keys: {", ".join(unknown)}')


def load_document(path: str, required: 'Iterable[str]', optional: 'Iterable[str]' = ()) -> dict:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            doc = json.load(f)
    except OSError as e:
        raise MalformedInputError(f'cannot read {path}: {e.strerror}')
    except json.JSONDecodeError as e:
        raise MalformedInputError(f'{path} is not valid JSON: {e}')
    _check_keys(doc, {'schema'} | set(required), optional, path)
    if doc['schema'] != SCHEMA_VERSION:
        raise MalformedInputError(f'{path}: unsupported schema {doc["schema"]!r} (expected {SCHEMA_VERSION})')
    return doc


def parse_field(doc: 'Any') -> 'Field':
    _check_keys(doc, {'char'}, {'transcendentals'}, 'field')
    char = doc['char']
    if not isinstance(char, int) or isinstance(char, bool):
        raise MalformedInputError('field char must be an integer')
    names = doc.get('transcendentals', [])
    if not isinstance(names, list) or not all(isinstance(x, str) and x.isidentifier() for x in names):
        raise MalformedInputError('transcendentals must be a list of names')
    if len(set(names)) != len(names):
        raise MalformedInputError('transcendental names must be distinct')
    ground = RationalField() if char == 0 else PrimeField(char)
    return make_tower(ground, names)


def parse_matrix(rows: 'Any', field: 'Field') -> 'Mat':
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedInputError('a matrix is a nonempty list of rows')
    if any(len(r) != len(rows) for r in rows):
        raise MalformedInputError('matrices must be square')
    return Mat(field, ((parse_scalar(x, field) for x in r) for r in rows))


def load_matrix(path: str) -> 'Mat':
    doc = load_document(path, {'field', 'matrix'}, {'name'})
    return parse_matrix(doc['matrix'], parse_field(doc['field']))


def _named_matrices(value: 'Any', field: 'Field', what: str):
    if isinstance(value, dict):
        names = list(value)
        mats = [parse_matrix(value[k], field) for k in names]
    elif isinstance(value, list):
        names = []
        mats = [parse_matrix(m, field) for m in value]
    else:
        raise MalformedInputError(f'{what} must be a list or an object of matrices')
    if not mats:
        raise MalformedInputError(f'{what} is empty')
    return names, mats


def load_matrices(path: str) -> 'List[Mat]':
    """A commuting family: ``{"schema": 1, "field": ..., "matrices": [...]}``."""
    doc = load_document(path, {'field', 'matrices'}, {'name'})
    return _named_matrices(doc['matrices'], parse_field(doc['field']), 'matrices')[1]


def load_group(path: str) -> 'MatGroup':
    """``{"schema": 1, "field": ..., "generators": {"a": [[...]], ...}}``; a list gives the names g0, g1, ..."""
    doc = load_document(path, {'field', 'generators'}, {'name'})
    names, gens = _named_matrices(doc['generators'], parse_field(doc['field']), 'generators')
    return MatGroup(tuple(gens), tuple(names), doc.get('name'))


def load_basis(path: str, group: 'MatGroup') -> 'List[Mat]':
    """``{"schema": 1, "basis": ["[x,y]", "a^2"]}`` with words in the generators, or matrices."""
    doc = load_document(path, {'basis'})
    basis = doc['basis']
    if not isinstance(basis, list) or not basis:
        raise MalformedInputError('basis must be a nonempty list')
    return [group.element(b) if isinstance(b, str) else parse_matrix(b, group.field) for b in basis]


def _poly(text: 'Any', level: 'RationalFunctionField'):
    x = parse_scalar(text, level)
    if not x.den.is_one():
        raise MalformedInputError(f'{text!r} is not a polynomial in {level.var}')
    return x.num


def load_ring(path: str) -> 'RingDesc':
    """``{"schema": 1, "char": p, "transcendentals": [...], "inverted": [...], "extra": [...]}``.

    ``inverted`` lists polynomials in the last transcendental, or one list per transcendental (innermost first).
    """
    doc = load_document(path, {'char', 'transcendentals'}, {'inverted', 'extra'})
    field = parse_field({'char': doc['char'], 'transcendentals': doc['transcendentals']})
    levels = field_tower(field)
    if not levels:
        raise MalformedInputError('a ring needs at least one transcendental')
    inverted = doc.get('inverted', [])
    if not isinstance(inverted, list):
        raise MalformedInputError('inverted must be a list')
    if inverted and all(isinstance(x, list) for x in inverted):
        if len(inverted) > len(levels):
            raise MalformedInputError('more inverted levels than transcendentals')
        per_level = [[_poly(p, levels[i]) for p in ps] for i, ps in enumerate(inverted)]
    else:
        per_level = [[] for _ in levels]
        per_level[-1] = [_poly(p, levels[-1]) for p in inverted]
    extra = doc.get('extra', [])
    if not isinstance(extra, list):
        raise MalformedInputError('extra must be a list')
    return make_ring(field, per_level, [parse_scalar(x, field) for x in extra])


def dump_ring(ring: 'RingDesc') -> dict:
    """The document :func:`load_ring` reads back to ``ring``. One transcendental gives a flat ``inverted`` list."""
    desc = ring.describe()
    inverted = desc['inverted']
    return {'schema': SCHEMA_VERSION, 'char': desc['characteristic'], 'transcendentals': desc['transcendentals'],
            'inverted': inverted[0] if len(inverted) == 1 else inverted, 'extra': desc['extra']}


def load_presentation(path: str) -> 'AbelianPresentation':
    """``{"schema": 1, "rank": r, "torsion": [...], "images": [[...], ...]}``"""
    doc = load_document(path, {'rank', 'images'}, {'torsion'})
    try:
        rank = int(doc['rank'])
        torsion = tuple(int(t) for t in doc.get('torsion', []))
        images = tuple(tuple(int(x) for x in row) for row in doc['images'])
    except (TypeError, ValueError):
        raise MalformedInputError('presentation entries must be integers')
    return AbelianPresentation(rank, torsion, images)


def dump_json(obj: 'Any') -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def dump_csv(header: 'Sequence[str]', rows: 'Iterable[Sequence]') -> str:
    out = StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def _quote(label: str) -> str:
    return '"' + label.replace('\\', '\\\\').replace('"', '\\"') + '"'


def emit_graph(obj, name: 'Optional[str]' = None) -> str:
    """DOT text for anything with a ``graph()`` method (building balls and Cayley balls). Nodes and edges are
    sorted by label."""
    graph = obj.graph()
    lines = [f'graph {_quote(name or "ball")} {{']
    for node in sorted(graph.nodes):
        lines.append(f'  {_quote(node)};')
    edges = []
    for u, v, data in graph.edges(data=True):
        u, v = sorted((u, v))
        attr = f' [label={_quote(data["label"])}]' if 'label' in data else ''
        edges.append(f'  {_quote(u)} -- {_quote(v)}{attr};')
    lines.extend(sorted(edges))
    lines.append('}')
    return '\n'.join(lines) + '\n'

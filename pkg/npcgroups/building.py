# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Homothety classes of lattices over a discrete valuation ring: the vertices of the building of SL(n), the SL(n)
action on them, balls in the tree for n = 2, and stabilizers of points in products of buildings.
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from logging import getLogger
from typing import TYPE_CHECKING

import networkx as nx
from sympy import sqrt

from .core.matrix import Mat
from .core.poly import Poly, poly_xgcd
from .errors import CapExceededError, DomainError, InconclusiveError, UnsupportedFieldError
from .valuation import (DEFAULT_ELEMENT_CAP, enumerate_bounded, in_ring, in_valuation_ring, matrix_valuation_floor,
                        ring_of_group, uniformizer, valuate)

if TYPE_CHECKING:
    from typing import Dict, List, Optional, Sequence, Tuple
    from .core.ratfunc import RatFunc, RationalFunctionField
    from .valuation import RingDesc, ValFamily, Valuation

__all__ = ['LatticeClass', 'normalize_lattice_class', 'standard_vertex', 'tree_distance',
           'elementary_divisor_exponents', 'simplex_test', 'act', 'neighbors', 'BuildingBall', 'ball',
           'embed_special_linear', 'is_vertex_stabilized', 'Elliptic', 'Hyperbolic', 'classify_isometry',
           'trace_oracle', 'stabilizer_entry_bound', 'ProductPoint', 'standard_product_point', 'act_product',
           'Displacement', 'coordinate_distances', 'product_displacement', 'stabilizer_elements',
           'DEFAULT_SEARCH_RADIUS']

log = getLogger(__name__)

DEFAULT_SEARCH_RADIUS = 6


@dataclass(frozen=True)
class LatticeClass:
    """A homothety class of lattices. ``rep`` holds an O-basis as columns, in canonical form, so two classes are
    equal exactly when their representatives are."""

    rep: 'Mat'
    val: 'Valuation'

    @property
    def n(self) -> int:
        return self.rep.n

    def label(self) -> str:
        return self.rep.format()


class _Chart:
    # Coordinates in which the valuation is the order at a monic prime of the polynomial ring.
    # The degree valuation is moved to the order at t by t -> 1/t.

    def __init__(self, val: 'Valuation'):
        if val.kind == 'extension':
            raise UnsupportedFieldError('lattice classes need a valuation with a polynomial uniformizer, '
                                        f'not {val.name}')
        self.val = val
        self.field = field = val.field
        self.flip = val.kind == 'degree'
        self.prime = Poly.x(field.base) if self.flip else val.prime
        self.pi = field.from_poly(self.prime)

    def to_chart(self, x):
        return self.field.invert_variable(x) if self.flip else x

    from_chart = to_chart

    def nu(self, x) -> int:
        def order(f):
            k = 0
            while True:
                q, r = divmod(f, self.prime)
                if r.coeffs:
                    return k
                f = q
                k += 1
        return order(x.num) - order(x.den)

    def pi_power(self, k: int):
        return self.field.pow(self.pi, k)

    def residue(self, x) -> 'Poly':
        """Residue of a unit ``x`` as a polynomial of degree below ``deg P``."""
        a = x.num % self.prime
        b = x.den % self.prime
        _, s, _ = poly_xgcd(b, self.prime)
        return (a * s) % self.prime

    def reduce(self, c, bound: int):
        """Canonical representative of ``c`` modulo ``pi^bound * O``: its pi-adic digits below ``bound``."""
        field = self.field
        out = field.zero
        rem = c
        while not field.is_zero(rem):
            k = self.nu(rem)
            if k >= bound:
                break
            digit = field.mul(field.from_poly(self.residue(field.mul(rem, self.pi_power(-k)))), self.pi_power(k))
            out = field.add(out, digit)
            rem = field.sub(rem, digit)
        return out

    def residue_reps(self) -> list:
        base = self.field.base
        if not base.is_finite:
            raise UnsupportedFieldError(f'the residue field of {self.val.name} is infinite')
        reps = []
        for coeffs in product(sorted(base.elements(), key=base.sort_key), repeat=self.prime.degree):
            reps.append(self.field.from_poly(Poly(base, coeffs)))
        return reps


@lru_cache(maxsize=None)
def _chart(val: 'Valuation') -> '_Chart':
    return _Chart(val)


def normalize_lattice_class(basis: 'Mat', val: 'Valuation') -> 'LatticeClass':
    """Canonical representative of the class of the lattice spanned by the columns of ``basis``.

    The result is lower triangular with diagonal ``pi^d_1, ..., pi^d_n``, ``d_1 = 0``, and each entry below the
    diagonal in row ``i`` reduced modulo ``pi^d_i``.
    """
    chart = _chart(val)
    field = chart.field
    if basis.field != field:
        raise DomainError(f'basis lives over {basis.field}, valuation over {field}')
    n = basis.n
    cols = [[chart.to_chart(x) for x in col] for col in basis.columns()]
    if field.is_zero(Mat.from_columns(field, cols).det()):
        raise DomainError('basis is singular')
    sub, mul, div = field.sub, field.mul, field.div

    def axpy(a, x, y):
        # y - a*x
        return [sub(yi, mul(a, xi)) for xi, yi in zip(x, y)]

    exps = []
    for i in range(n):
        j0 = min((j for j in range(i, n) if not field.is_zero(cols[j][i])), key=lambda j: (chart.nu(cols[j][i]), j))
        cols[i], cols[j0] = cols[j0], cols[i]
        d = chart.nu(cols[i][i])
        unit = div(chart.pi_power(d), cols[i][i])
        cols[i] = [mul(unit, x) for x in cols[i]]
        exps.append(d)
        for j in range(i + 1, n):
            if not field.is_zero(cols[j][i]):
                cols[j] = axpy(div(cols[j][i], cols[i][i]), cols[i], cols[j])
    shift = chart.pi_power(-exps[0])
    cols = [[mul(shift, x) for x in col] for col in cols]
    exps = [d - exps[0] for d in exps]
    for i in range(1, n):
        for j in range(i):
            c = cols[j][i]
            r = chart.reduce(c, exps[i])
            if c != r:
                q = div(sub(c, r), chart.pi_power(exps[i]))
                cols[j] = axpy(q, cols[i], cols[j])
    rep = Mat.from_columns(field, [[chart.from_chart(x) for x in col] for col in cols])
    return LatticeClass(rep, val)


def standard_vertex(val: 'Valuation', n: int = 2) -> 'LatticeClass':
    """The class of ``O^n``."""
    return normalize_lattice_class(Mat.identity(val.field, n), val)


def _check_same(v: 'LatticeClass', w: 'LatticeClass'):
    if v.val != w.val:
        raise DomainError(f'lattice classes for different valuations ({v.val.name}, {w.val.name})')
    if v.n != w.n:
        raise DomainError('lattice classes of different rank')


def elementary_divisor_exponents(v: 'LatticeClass', w: 'LatticeClass') -> 'Tuple[int, ...]':
    """Exponents ``0 = e_1 <= ... <= e_n`` with ``w = diag(pi^e_i)`` relative to ``v`` in adapted bases."""
    _check_same(v, w)
    val = v.val
    field = val.field
    m = [list(r) for r in (v.rep.inverse() @ w.rep).rows]
    exps = []
    while m:
        size = len(m)
        _, pi, pj = min((valuate(val, m[i][j]), i, j) for i in range(size) for j in range(size)
                        if not field.is_zero(m[i][j]))
        m[0], m[pi] = m[pi], m[0]
        for row in m:
            row[0], row[pj] = row[pj], row[0]
        pivot = m[0][0]
        exps.append(valuate(val, pivot))
        for i in range(1, size):
            f = field.div(m[i][0], pivot)
            m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[0])]
        m = [row[1:] for row in m[1:]]
    exps.sort()
    return tuple(e - exps[0] for e in exps)


def tree_distance(v: 'LatticeClass', w: 'LatticeClass') -> int:
    """Graph distance between two vertices of the building of SL(2)."""
    _check_same(v, w)
    if v.n != 2:
        return max(elementary_divisor_exponents(v, w))
    m = v.rep.inverse() @ w.rep
    return int(valuate(v.val, m.det()) - 2 * matrix_valuation_floor(v.val, m))


def _contains(val, outer: 'Mat', inner: 'Mat') -> bool:
    return matrix_valuation_floor(val, outer.inverse() @ inner) >= 0


def simplex_test(classes: 'Sequence[LatticeClass]') -> bool:
    """Whether the classes span a simplex: representatives ``L_0 ⊂ L_1 ⊂ ... ⊂ L_j`` with ``pi L_j ⊂ L_0``."""
    if not classes:
        raise DomainError('simplex_test needs at least one class')
    val = classes[0].val
    if any(c.val != val for c in classes):
        raise DomainError('simplex_test needs a single valuation')
    n = classes[0].n
    if len(classes) > n:
        raise DomainError(f'a simplex in the building of SL({n}) has at most {n} vertices')
    distinct = sorted(set(classes), key=LatticeClass.label)
    base = distinct[0].rep
    field = val.field
    pi = uniformizer(val)
    scaled = []
    for c in distinct:
        s = matrix_valuation_floor(val, c.rep.inverse() @ base)
        scaled.append(c.rep.scale(field.pow(pi, s)))
    for rep in scaled:
        if not _contains(val, base, rep.scale(pi)):
            return False
    for i, a in enumerate(scaled):
        for b in scaled[i + 1:]:
            if not (_contains(val, a, b) or _contains(val, b, a)):
                return False
    return True


def act(g: 'Mat', v: 'LatticeClass') -> 'LatticeClass':
    """``g . v`` for ``g`` in SL(n, k)."""
    if not v.val.field.is_one(g.det()):
        raise DomainError('only determinant one matrices act on lattice classes')
    return normalize_lattice_class(g @ v.rep, v.val)


def _act_unchecked(g: 'Mat', v: 'LatticeClass') -> 'LatticeClass':
    return normalize_lattice_class(g @ v.rep, v.val)


def embed_special_linear(g: 'Mat') -> 'Mat':
    """``diag(g, det(g)^-1)``, which lies in SL(n + 1)."""
    f = g.field
    if not g.is_invertible():
        raise DomainError('matrix is singular')
    return Mat.block_diag(f, [g, Mat(f, [[f.inv(g.det())]])])


def neighbors(v: 'LatticeClass') -> 'List[LatticeClass]':
    """The ``q + 1`` vertices adjacent to ``v`` in the tree of SL(2)."""
    if v.n != 2:
        raise UnsupportedFieldError('neighbors are only enumerated for SL(2)')
    chart = _chart(v.val)
    field = chart.field
    pi = uniformizer(v.val)
    b1, b2 = v.rep.columns()
    out = []
    for r in chart.residue_reps():
        r = chart.from_chart(r)
        col1 = [field.add(x, field.mul(r, y)) for x, y in zip(b1, b2)]
        col2 = [field.mul(pi, y) for y in b2]
        out.append(normalize_lattice_class(Mat.from_columns(field, [col1, col2]), v.val))
    out.append(normalize_lattice_class(Mat.from_columns(field, [[field.mul(pi, x) for x in b1], b2]), v.val))
    return out


@dataclass
class BuildingBall:
    """Vertices within ``radius`` of ``center``, grouped by distance, with the induced edges (index pairs)."""

    center: 'LatticeClass'
    radius: int
    vertices: 'List[LatticeClass]' = dc_field(default_factory=list)
    layers: 'List[List[int]]' = dc_field(default_factory=list)
    edges: 'List[Tuple[int, int]]' = dc_field(default_factory=list)

    @property
    def layer_sizes(self) -> 'List[int]':
        return [len(layer) for layer in self.layers]

    def labels(self) -> 'List[str]':
        return [v.label() for v in self.vertices]

    def graph(self) -> 'nx.Graph':
        g = nx.Graph()
        labels = self.labels()
        g.add_nodes_from(labels)
        g.add_edges_from((labels[i], labels[j]) for i, j in self.edges)
        return g

    def is_tree(self) -> bool:
        return nx.is_tree(self.graph())


def ball(center: 'LatticeClass', radius: int) -> 'BuildingBall':
    """Breadth-first ball in the tree of SL(2)."""
    if radius < 0:
        raise DomainError('radius must be nonnegative')
    result = BuildingBall(center, radius, [center], [[0]])
    index = {center: 0}
    edges = set()
    frontier = [0]
    # the outer layer is expanded too, keeping only edges between known vertices
    for d in range(radius + 1):
        nxt = []
        for i in frontier:
            for w in neighbors(result.vertices[i]):
                j = index.get(w)
                if j is None:
                    if d == radius:
                        continue
                    j = index[w] = len(result.vertices)
                    result.vertices.append(w)
                    nxt.append(j)
                edges.add((min(i, j), max(i, j)))
        if nxt:
            result.layers.append(nxt)
        frontier = nxt
    result.edges = sorted(edges)
    log.debug('ball of radius %d: layers %s, %d edges', radius, result.layer_sizes, len(edges))
    return result


def is_vertex_stabilized(g: 'Mat', v: 'LatticeClass') -> bool:
    return act(g, v) == v


@dataclass(frozen=True)
class Elliptic:
    fixed: 'LatticeClass'
    inverted_edge: 'Optional[Tuple[LatticeClass, LatticeClass]]' = None
    trace_oracle: int = 0
    kind = 'elliptic'

    translation_length = 0

    def to_dict(self) -> dict:
        out = {'kind': self.kind, 'translation_length': 0, 'fixed_vertex': self.fixed.label(),
               'trace_oracle': self.trace_oracle}
        if self.inverted_edge:
            out['inverted_edge'] = [v.label() for v in self.inverted_edge]
        return out


@dataclass(frozen=True)
class Hyperbolic:
    translation_length: int
    axis: 'Tuple[LatticeClass, ...]'
    trace_oracle: int = 0
    kind = 'hyperbolic'

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'translation_length': self.translation_length,
                'axis_sample': [v.label() for v in self.axis], 'trace_oracle': self.trace_oracle}


def trace_oracle(g: 'Mat', val: 'Valuation') -> int:
    """Translation length predicted by the trace: 0 when ``v(tr g) >= 0``, otherwise ``-2 v(tr g)``."""
    tr = g.trace()
    if in_valuation_ring(val, tr):
        return 0
    return int(-2 * valuate(val, tr))


def classify_isometry(g: 'Mat', val: 'Valuation', search_radius: int = DEFAULT_SEARCH_RADIUS,
                      start: 'Optional[LatticeClass]' = None):
    """Find a certificate that ``g`` in SL(2, k) is elliptic (a fixed vertex) or hyperbolic (a vertex on its axis).

    Vertices are scanned breadth first from ``start`` out to ``search_radius``.
    """
    if g.n != 2:
        raise UnsupportedFieldError('isometries are only classified on the tree of SL(2)')
    if not val.field.is_one(g.det()):
        raise DomainError('only determinant one matrices act on lattice classes')
    oracle = trace_oracle(g, val)
    start = start or standard_vertex(val)
    seen = {start}
    frontier = [start]
    for depth in range(search_radius + 1):
        nxt = []
        for v in frontier:
            gv = _act_unchecked(g, v)
            d1 = tree_distance(v, gv)
            if d1 == 0:
                return Elliptic(v, trace_oracle=oracle)
            ggv = _act_unchecked(g, gv)
            d2 = tree_distance(v, ggv)
            if d1 == 1 and d2 == 0:
                return Elliptic(v, inverted_edge=(v, gv), trace_oracle=oracle)
            if d2 == 2 * d1:
                return Hyperbolic(d1, (v, gv, ggv), trace_oracle=oracle)
            if depth < search_radius:
                for w in neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    raise InconclusiveError(f'no fixed vertex or axis vertex within radius {search_radius}', search_radius)


def stabilizer_entry_bound(h: 'Mat', val: 'Valuation') -> int:
    """Lower bound on the entry valuations of any ``g`` fixing ``h^-1 . [O^n]``."""
    if not h.is_invertible():
        raise DomainError('conjugator is singular')
    return int(matrix_valuation_floor(val, h.inverse()) + matrix_valuation_floor(val, h))


@dataclass(frozen=True)
class ProductPoint:
    """One vertex per valuation of a family; a vertex of the product of buildings."""

    coords: 'Tuple[LatticeClass, ...]'

    def __post_init__(self):
        if not self.coords:
            raise DomainError('a product point needs at least one coordinate')
        if len({c.n for c in self.coords}) != 1:
            raise DomainError('product point coordinates have different ranks')

    @property
    def n(self) -> int:
        return self.coords[0].n

    def labels(self) -> 'List[str]':
        return [c.label() for c in self.coords]


def standard_product_point(fam: 'ValFamily', n: int = 2) -> 'ProductPoint':
    return ProductPoint(tuple(standard_vertex(v, n) for v in fam))


def act_product(g: 'Mat', point: 'ProductPoint') -> 'ProductPoint':
    return ProductPoint(tuple(act(g, c) for c in point.coords))


@dataclass(frozen=True)
class Displacement:
    """Euclidean displacement in a product of trees, kept exact as its square."""

    squared: int

    @property
    def value(self):
        return sqrt(self.squared)

    def __str__(self):
        return str(self.value)


def coordinate_distances(g: 'Mat', point: 'ProductPoint') -> 'List[int]':
    """Distance moved by ``g`` in each factor of the product."""
    moved = act_product(g, point)
    return [tree_distance(c, m) for c, m in zip(point.coords, moved.coords)]


def product_displacement(g: 'Mat', point: 'ProductPoint') -> 'Displacement':
    return Displacement(sum(d ** 2 for d in coordinate_distances(g, point)))


def stabilizer_elements(group, point: 'ProductPoint', fam: 'ValFamily', ring: 'Optional[RingDesc]' = None,
                        cap: int = DEFAULT_ELEMENT_CAP) -> 'List[Mat]':
    """All of SL(n, R) fixing every coordinate of ``point``, by searching the box of entries the valuation bound
    allows.

    ``R`` is ``ring``, or the ring generated by the entries of ``group`` and their inverses. The generators of
    ``group`` must have entries in ``R``; ``group`` may be None when ``ring`` is given.
    """
    if ring is None:
        if group is None:
            raise DomainError('stabilizer_elements needs a group or a ring')
        ring = ring_of_group(group.gens)
    if len(point.coords) != len(fam):
        raise DomainError(f'point has {len(point.coords)} coordinates, family has {len(fam)} valuations')
    if tuple(c.val for c in point.coords) != tuple(fam):
        raise DomainError('point coordinates do not follow the valuation family')
    field = fam.field
    if group is not None:
        for gen in group.gens:
            if not all(in_ring(ring, x) for x in gen.entries()):
                raise DomainError(f'generator {gen.format()} has entries outside the ring')
    n = point.n
    m = min(stabilizer_entry_bound(c.rep.inverse(), c.val) for c in point.coords)
    box = enumerate_bounded(ring, fam, m, cap)
    box_set = set(box)
    free = n * n - 1
    if len(box) ** free > cap:
        raise CapExceededError(f'stabilizer search needs {len(box)}^{free} candidates (cap {cap})', cap)
    log.debug('stabilizer search: m=%d, %d entries per position', m, len(box))
    one = field.one
    found = []
    for entries in product(box, repeat=free):
        rows = [list(entries[i * n:(i + 1) * n]) for i in range(n - 1)]
        rows.append(list(entries[(n - 1) * n:]) + [field.zero])
        # det is affine in the last entry: det = c*x + d
        d = Mat(field, rows).det()
        rows[-1][-1] = one
        c = field.sub(Mat(field, rows).det(), d)
        if field.is_zero(c):
            if not field.is_one(d):
                continue
            lasts = box
        else:
            x = field.div(field.sub(one, d), c)
            if x not in box_set:
                continue
            lasts = [x]
        for x in lasts:
            rows[-1][-1] = x
            g = Mat(field, rows)
            if all(_act_unchecked(g, coord) == coord for coord in point.coords):
                found.append(g)
    found.sort(key=Mat.format)
    log.debug('stabilizer has %d elements', len(found))
    return found

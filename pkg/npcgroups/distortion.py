# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Word metrics on finitely generated matrix groups: exact breadth first word length, estimates of the stable
translation length ``lim l(g^n)/n``, and distortion of free abelian subgroups.

Everything here is an estimator. Word lengths are exact up to the BFS cap, so ``l(g^n)/n`` gives upper bounds on the
translation length and nothing more.
"""

import re
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from itertools import product
from logging import getLogger
from typing import TYPE_CHECKING

import networkx as nx

from .blocks import DEFAULT_ORDER_CAP, classify_element
from .building import act, classify_isometry, standard_vertex, tree_distance
from .core.matrix import Mat
from .errors import CapExceededError, DomainError, MalformedInputError

if TYPE_CHECKING:
    from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
    from .valuation import Valuation

    Length = Union[int, 'CapSentinel']

__all__ = ['EXCEEDS_CAP', 'MatGroup', 'WordMetric', 'word_length', 'TauEstimate', 'estimate_tau', 'ScanResult',
           'uniform_lower_bound_scan', 'lattice_box', 'AbelianEmbedding', 'ZNormReport', 'znorm_check',
           'DistortionTable', 'abelian_distortion', 'CayleyBall', 'cayley_ball', 'ConsistencyReport',
           'translation_consistency', 'DEFAULT_TAU_N', 'default_radius']

log = getLogger(__name__)

DEFAULT_TAU_N = 16


class CapSentinel(Enum):
    EXCEEDS_CAP = 'exceeds_cap'

    def __str__(self):
        return self.value


EXCEEDS_CAP = CapSentinel.EXCEEDS_CAP


def default_radius(ngens: int, two_gens: int = 10, more_gens: int = 8) -> int:
    return two_gens if ngens <= 2 else more_gens


_token_re = re.compile(r'\[([^\[\],]+),([^\[\],]+)\]|([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?')


@dataclass(frozen=True)
class MatGroup:
    """A group given by invertible generators. Word letters ``0..r-1`` are the generators, ``r..2r-1`` their
    inverses."""

    gens: 'Tuple[Mat, ...]'
    names: 'Tuple[str, ...]' = ()
    name: 'Optional[str]' = None
    inverses: 'Tuple[Mat, ...]' = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.gens)
        if not gens:
            raise DomainError('a group needs at least one generator')
        first = gens[0]
        for g in gens:
            if g.n != first.n or g.field != first.field:
                raise DomainError('generators must share size and field')
            if not g.is_invertible():
                raise DomainError(f'generator {g.format()} is singular')
        names = tuple(self.names) or tuple(f'g{i}' for i in range(len(gens)))
        if len(names) != len(gens) or len(set(names)) != len(names):
            raise DomainError('generator names must be distinct, one per generator')
        object.__setattr__(self, 'gens', gens)
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, 'inverses', tuple(g.inverse() for g in gens))

    @property
    def field(self):
        return self.gens[0].field

    @property
    def n(self) -> int:
        return self.gens[0].n

    @property
    def letters(self) -> 'Tuple[Mat, ...]':
        return self.gens + self.inverses

    @property
    def letter_names(self) -> 'List[str]':
        return list(self.names) + [f'{x}^-1' for x in self.names]

    def identity(self) -> 'Mat':
        return Mat.identity(self.field, self.n)

    def evaluate(self, word: 'Iterable[int]') -> 'Mat':
        letters = self.letters
        out = self.identity()
        for i in word:
            if not 0 <= i < len(letters):
                raise DomainError(f'letter {i} is out of range')
            out = out @ letters[i]
        return out

    def parse_word(self, text: str) -> 'List[int]':
        """Words like ``t^2 a t^-2`` or ``[x,y]``. ``1`` and the empty string are the identity."""
        r = len(self.gens)
        index = {x: i for i, x in enumerate(self.names)}

        def letter(name, exp):
            name = name.strip()
            if name not in index:
                raise MalformedInputError(f'unknown generator {name!r} (have {", ".join(self.names)})')
            i = index[name]
            return [i if exp > 0 else i + r] * abs(exp)

        text = text.replace('*', ' ').strip()
        if text in {'', '1'}:
            return []
        word = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _token_re.match(text, pos)
            if not m:
                raise MalformedInputError(f'cannot parse word at {text[pos:]!r}')
            if m.group(1) is not None:
                a, b = m.group(1), m.group(2)
                word += letter(a, 1) + letter(b, 1) + letter(a, -1) + letter(b, -1)
            else:
                word += letter(m.group(3), int(m.group(4) or 1))
            pos = m.end()
        return word

    def element(self, text: str) -> 'Mat':
        return self.evaluate(self.parse_word(text))

    def describe(self) -> dict:
        return {'name': self.name, 'generators': dict(zip(self.names, (g.format() for g in self.gens))),
                'field': self.field.desc.to_dict(), 'n': self.n}


class WordMetric:
    """Breadth first search in the Cayley graph, grown lazily and shared between queries.

    Elements are keyed by their exact matrices, so two words are merged only when they are equal in the group.
    """

    def __init__(self, group: 'MatGroup'):
        self.group = group
        identity = group.identity()
        self.lengths: 'Dict[Mat, int]' = {identity: 0}
        self.order: 'List[Mat]' = [identity]
        self._frontier = [identity]
        self.radius = 0

    @property
    def complete(self) -> bool:
        """True once the whole group has been enumerated."""
        return not self._frontier

    def grow(self, radius: int):
        letters = self.group.letters
        while self.radius < radius and self._frontier:
            nxt = []
            r = self.radius + 1
            for w in self._frontier:
                for s in letters:
                    h = w @ s
                    if h not in self.lengths:
                        self.lengths[h] = r
                        self.order.append(h)
                        nxt.append(h)
            self._frontier = nxt
            self.radius = r
            log.debug('word ball radius %d: %d new, %d total', r, len(nxt), len(self.order))

    def length(self, g: 'Mat', cap: int) -> 'Length':
        if g.n != self.group.n or g.field != self.group.field:
            raise DomainError('element is not in the matrix algebra of the group')
        found = self.lengths.get(g)
        if found is not None:
            return found if found <= cap else EXCEEDS_CAP
        while self.radius < cap and not self.complete:
            self.grow(self.radius + 1)
            found = self.lengths.get(g)
            if found is not None:
                return found
        if self.complete:
            raise DomainError(f'{g.format()} is not in the group')
        return EXCEEDS_CAP

    def ball(self, radius: int) -> 'List[Mat]':
        self.grow(radius)
        return [g for g in self.order if self.lengths[g] <= radius]

    def sphere_sizes(self, radius: int) -> 'List[int]':
        self.grow(radius)
        sizes = [0] * (radius + 1)
        for d in self.lengths.values():
            if d <= radius:
                sizes[d] += 1
        return sizes


def word_length(group: 'MatGroup', g: 'Mat', cap: int, metric: 'Optional[WordMetric]' = None) -> 'Length':
    """Exact word length of ``g``, or :data:`EXCEEDS_CAP` when it is longer than ``cap``."""
    return (metric or WordMetric(group)).length(g, cap)


@dataclass(frozen=True)
class TauEstimate:
    element: 'Mat'
    samples: 'Tuple[Tuple[int, int], ...]'
    tau_hat: 'Fraction'
    skipped: 'Tuple[int, ...]' = ()

    def curve(self) -> 'List[Tuple[int, int, Fraction]]':
        return [(n, l, Fraction(l, n)) for n, l in self.samples]

    def to_dict(self) -> dict:
        return {'element': self.element.format(), 'tau_hat': str(self.tau_hat),
                'samples': [{'n': n, 'length': l, 'ratio': str(r)} for n, l, r in self.curve()],
                'exceeds_cap': list(self.skipped)}


def estimate_tau(group: 'MatGroup', g: 'Mat', big_n: int = DEFAULT_TAU_N, cap: int = 10,
                 metric: 'Optional[WordMetric]' = None, bit_limit: 'Optional[int]' = None) -> 'TauEstimate':
    """``min l(g^n)/n`` over ``1 <= n <= big_n`` with ``l(g^n) <= cap``; an upper bound for the translation length
    by subadditivity."""
    if big_n < 1:
        raise DomainError('N must be at least 1')
    metric = metric or WordMetric(group)
    samples = []
    skipped = []
    power = group.identity()
    for n in range(1, big_n + 1):
        power = power @ g
        if bit_limit is not None and power.max_entry_size() > bit_limit:
            log.debug('g^%d has entries past %d bits, stopping', n, bit_limit)
            skipped.extend(range(n, big_n + 1))
            break
        length = metric.length(power, cap)
        if length is EXCEEDS_CAP:
            skipped.append(n)
        else:
            samples.append((n, length))
    if not samples:
        raise CapExceededError(f'no power of {g.format()} up to {big_n} has word length within {cap}', cap)
    tau_hat = min(Fraction(length, n) for n, length in samples)
    return TauEstimate(g, tuple(samples), tau_hat, tuple(skipped))


@dataclass(frozen=True)
class ScanResult:
    tau_hat: 'Optional[Fraction]'
    witness: 'Optional[Mat]'
    scanned: int
    finite_skipped: int
    estimates: 'Tuple[TauEstimate, ...]' = ()

    def to_dict(self) -> dict:
        return {'min_tau_hat': None if self.tau_hat is None else str(self.tau_hat),
                'witness': None if self.witness is None else self.witness.format(),
                'scanned': self.scanned, 'finite_order_skipped': self.finite_skipped,
                'estimates': [{'element': e.element.format(), 'tau_hat': str(e.tau_hat)} for e in self.estimates]}


def uniform_lower_bound_scan(group: 'MatGroup', ball_radius: int, big_n: int = DEFAULT_TAU_N, cap: int = 10,
                             order_cap: int = DEFAULT_ORDER_CAP, metric: 'Optional[WordMetric]' = None,
                             bit_limit: 'Optional[int]' = None) -> 'ScanResult':
    """Smallest translation length estimate over the infinite order elements of the word ball. A small value is
    evidence of distorted cyclic subgroups; it never certifies a lower bound."""
    if ball_radius > cap:
        raise DomainError(f'ball radius {ball_radius} is larger than the word length cap {cap}')
    metric = metric or WordMetric(group)
    best = None
    witness = None
    scanned = 0
    finite = 0
    estimates = []
    for g in metric.ball(ball_radius):
        if g.is_identity():
            continue
        scanned += 1
        if classify_element(g, order_cap).is_finite:
            finite += 1
            continue
        est = estimate_tau(group, g, big_n, cap, metric, bit_limit)
        estimates.append(est)
        if best is None or est.tau_hat < best:
            best = est.tau_hat
            witness = g
    log.debug('scan: %d elements, %d of finite order, min %s', scanned, finite, best)
    return ScanResult(best, witness, scanned, finite, tuple(estimates))


def lattice_box(rank: int, radius: int) -> 'List[Tuple[int, ...]]':
    """Nonzero integer points of ``[-radius, radius]^rank`` in lexicographic order."""
    return [p for p in product(range(-radius, radius + 1), repeat=rank) if any(p)]


def _norm1(point: 'Sequence[int]') -> int:
    return sum(abs(x) for x in point)


@dataclass(frozen=True)
class AbelianEmbedding:
    """``(n_1, ..., n_m) -> a_1^n_1 ... a_m^n_m`` for pairwise commuting ``a_i`` in ``group``."""

    group: 'MatGroup'
    basis: 'Tuple[Mat, ...]'

    def __post_init__(self):
        basis = tuple(self.basis)
        if not basis:
            raise DomainError('an abelian basis needs at least one element')
        for a in basis:
            if a.n != self.group.n or a.field != self.group.field:
                raise DomainError('basis elements must live in the matrix algebra of the group')
        for i, a in enumerate(basis):
            for b in basis[i + 1:]:
                if not a.commutes(b):
                    raise DomainError(f'{a.format()} and {b.format()} do not commute')
        object.__setattr__(self, 'basis', basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def point(self, coords: 'Sequence[int]') -> 'Mat':
        if len(coords) != self.rank:
            raise DomainError(f'expected {self.rank} coordinates')
        out = self.group.identity()
        for a, k in zip(self.basis, coords):
            if k:
                out = out @ a.power(k)
        return out

    def check_injective(self, box: 'Iterable[Sequence[int]]'):
        seen = {self.group.identity(): (0,) * self.rank}
        for p in box:
            g = self.point(p)
            if g in seen:
                raise DomainError(f'basis is not free: {tuple(p)} and {seen[g]} give the same element')
            seen[g] = tuple(p)


@dataclass
class ZNormReport:
    subadditive_checks: int = 0
    subadditive_tight: int = 0
    homogeneity_checks: int = 0
    homogeneity_tight: int = 0
    tau_checks: int = 0
    skipped: int = 0
    violations: 'List[str]' = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {'subadditive': {'checks': self.subadditive_checks, 'tight': self.subadditive_tight},
                'homogeneity': {'checks': self.homogeneity_checks, 'tight': self.homogeneity_tight},
                'tau_bound': {'checks': self.tau_checks}, 'skipped': self.skipped,
                'violations': list(self.violations), 'ok': self.ok}


def znorm_check(group: 'MatGroup', emb: 'AbelianEmbedding', box: 'Sequence[Sequence[int]]',
                big_n: int = DEFAULT_TAU_N, cap: int = 10, metric: 'Optional[WordMetric]' = None) -> 'ZNormReport':
    """Check the estimator forms of the seminorm laws on a box of lattice points: ``l(g^n h^n) <= l(g^n) +
    l(h^n)``, ``l(g^nm) <= n l(g^m)`` and ``tau_hat(g) <= l(g)``. Any violation is a bug."""
    metric = metric or WordMetric(group)
    report = ZNormReport()
    points = [tuple(p) for p in box]
    powers = {}
    lengths = {}
    for p in points:
        g = emb.point(p)
        seq = [group.identity()]
        for _ in range(big_n):
            seq.append(seq[-1] @ g)
        powers[p] = seq
        lengths[p] = [0] + [metric.length(h, cap) for h in seq[1:]]

    for p in points:
        ls = lengths[p]
        for n in range(1, big_n + 1):
            for m in range(1, big_n // n + 1):
                big, small = ls[n * m], ls[m]
                if big is EXCEEDS_CAP or small is EXCEEDS_CAP:
                    report.skipped += 1
                    continue
                report.homogeneity_checks += 1
                if big > n * small:
                    report.violations.append(f'l(g^{n * m}) = {big} > {n} * l(g^{m}) = {n * small} for {p}')
                elif big == n * small:
                    report.homogeneity_tight += 1
        computed = [(n, ls[n]) for n in range(1, big_n + 1) if ls[n] is not EXCEEDS_CAP]
        if computed and ls[1] is not EXCEEDS_CAP:
            report.tau_checks += 1
            tau_hat = min(Fraction(l, n) for n, l in computed)
            if tau_hat > ls[1]:
                report.violations.append(f'tau_hat {tau_hat} > l(g) = {ls[1]} for {p}')

    for i, p in enumerate(points):
        for q in points[i:]:
            for n in range(1, big_n + 1):
                lp, lq = lengths[p][n], lengths[q][n]
                if lp is EXCEEDS_CAP or lq is EXCEEDS_CAP:
                    report.skipped += 1
                    continue
                lpq = metric.length(powers[p][n] @ powers[q][n], cap)
                if lpq is EXCEEDS_CAP:
                    report.skipped += 1
                    continue
                report.subadditive_checks += 1
                if lpq > lp + lq:
                    report.violations.append(f'l((gh)^{n}) = {lpq} > {lp} + {lq} for {p}, {q}')
                elif lpq == lp + lq:
                    report.subadditive_tight += 1
    log.debug('z-norm check: %d violations', len(report.violations))
    return report


@dataclass(frozen=True)
class DistortionTable:
    rows: 'Tuple[Tuple[Tuple[int, ...], int, Length], ...]'
    k: 'Optional[Fraction]'

    def to_dict(self) -> dict:
        return {'k': None if self.k is None else str(self.k),
                'rows': [{'point': list(p), 'norm1': norm, 'word_length': str(l) if l is EXCEEDS_CAP else l}
                         for p, norm, l in self.rows]}


def abelian_distortion(group: 'MatGroup', emb: 'AbelianEmbedding', radius: int, box: 'Union[int, Sequence]',
                       metric: 'Optional[WordMetric]' = None) -> 'DistortionTable':
    """Word length against the l1 norm of the exponent vector on a box of lattice points, and the fitted constant
    ``k = min l(a) / |a|_1`` over the points whose word length is within ``radius``."""
    metric = metric or WordMetric(group)
    points = lattice_box(emb.rank, box) if isinstance(box, int) else [tuple(p) for p in box]
    emb.check_injective(points)
    rows = []
    k = None
    for p in points:
        norm = _norm1(p)
        length = metric.length(emb.point(p), radius)
        rows.append((p, norm, length))
        if length is not EXCEEDS_CAP and norm:
            ratio = Fraction(length, norm)
            if k is None or ratio < k:
                k = ratio
    return DistortionTable(tuple(rows), k)


@dataclass(frozen=True)
class CayleyBall:
    group: 'MatGroup'
    radius: int
    elements: 'Tuple[Mat, ...]'
    lengths: 'Dict[Mat, int]'
    edges: 'Tuple[Tuple[Mat, Mat, str], ...]'

    def labels(self) -> 'List[str]':
        return [g.format() for g in self.elements]

    def sphere_sizes(self) -> 'List[int]':
        sizes = [0] * (self.radius + 1)
        for g in self.elements:
            sizes[self.lengths[g]] += 1
        return sizes

    def graph(self) -> 'nx.MultiGraph':
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.labels())
        graph.add_edges_from((a.format(), b.format(), {'label': name}) for a, b, name in self.edges)
        return graph

    def is_tree(self) -> bool:
        return nx.is_tree(self.graph())


def cayley_ball(group: 'MatGroup', radius: int, metric: 'Optional[WordMetric]' = None) -> 'CayleyBall':
    """The ball of ``radius`` in the Cayley graph with one edge ``g -- g s`` per generator ``s``."""
    metric = metric or WordMetric(group)
    elements = metric.ball(radius)
    lengths = {g: metric.lengths[g] for g in elements}
    edges = []
    for g in elements:
        for s, name in zip(group.gens, group.names):
            h = g @ s
            if h in lengths:
                edges.append((g, h, name))
    return CayleyBall(group, radius, tuple(elements), lengths, tuple(edges))


@dataclass(frozen=True)
class ConsistencyReport:
    translation_length: int
    edge_scale: int
    tau_hat: 'Fraction'
    isometry: object

    @property
    def consistent(self) -> bool:
        return self.translation_length <= self.edge_scale * self.tau_hat

    def to_dict(self) -> dict:
        return {'translation_length': self.translation_length, 'edge_scale': self.edge_scale,
                'tau_hat': str(self.tau_hat), 'bound': str(self.edge_scale * self.tau_hat),
                'consistent': self.consistent, 'isometry': self.isometry.to_dict()}


def translation_consistency(group: 'MatGroup', g: 'Mat', val: 'Valuation', big_n: int = DEFAULT_TAU_N, cap: int = 10,
                            metric: 'Optional[WordMetric]' = None, search_radius: int = 6) -> 'ConsistencyReport':
    """Compare the tree translation length of ``g`` with ``K * tau_hat(g)``, where ``K`` is the largest distance a
    generator moves the standard vertex. ``d(v, g^n v) <= K l(g^n)`` makes the comparison an inequality."""
    for s in group.gens:
        if not val.field.is_one(s.det()):
            raise DomainError('generators must have determinant one to act on the tree')
    v0 = standard_vertex(val, group.n)
    scale = max(tree_distance(v0, act(s, v0)) for s in group.letters)
    isometry = classify_isometry(g, val, search_radius)
    est = estimate_tau(group, g, big_n, cap, metric)
    return ConsistencyReport(isometry.translation_length, scale, est.tau_hat, isometry)

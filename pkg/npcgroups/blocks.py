# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Commuting families of matrices: simultaneous generalized eigenspace decomposition, the block determinant map, element
classification by order and unipotence, and splitting a free abelian subgroup off as a direct factor.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from logging import getLogger
from typing import TYPE_CHECKING

from sympy import Matrix, Symbol, ZZ, cyclotomic_poly, factorint, totient
from sympy.matrices.normalforms import smith_normal_decomp

from .core.field import ExtensionField, PrimeField, RationalField, extension_field
from .core.matrix import Mat, nullspace, rank, solve
from .core.poly import DEFAULT_SEED, Poly, finite_field_roots, ilcm, poly_factor
from .core.ratfunc import RationalFunctionField
from .errors import DomainError, UnsupportedFieldError

if TYPE_CHECKING:
    from typing import List, Optional, Sequence, Tuple
    from .core.field import Field

__all__ = ['Eigenspace', 'generalized_eigenspaces', 'BlockDecomp', 'simultaneous_blocks', 'ThetaValue', 'theta',
           'ElementClass', 'classify_element', 'KernelReport', 'kernel_torsion_check', 'AbelianPresentation',
           'split_direct_factor', 'theta_presentation', 'TwistVerdict', 'twist_obstruction', 'DEFAULT_ORDER_CAP']

log = getLogger(__name__)

DEFAULT_ORDER_CAP = 1_000_000


def _embed(g: 'Mat', field: 'Field') -> 'Mat':
    if g.field == field:
        return g
    if isinstance(field, ExtensionField) and g.field == PrimeField(field.p):
        return g.map(field, field.from_int)
    raise DomainError(f'cannot embed a matrix over {g.field} into {field}')


def _key_order(f: 'Poly'):
    # linear factors by their root, before higher degree factors
    if f.degree == 1:
        return 0, f.field.sort_key(f.field.neg(f.coeffs[0]))
    return 1, f.sort_key()


def _eigen_keys(g: 'Mat', field: 'Field', allow_rational: bool, seed: int) -> 'List[Poly]':
    """Monic irreducible factors of the characteristic polynomial of ``g`` over ``field``."""
    cp = g.charpoly()
    if isinstance(g.field, RationalField):
        factors = poly_factor(cp)
        if all(f.degree == 1 for f, _ in factors) or allow_rational:
            return sorted((f for f, _ in factors), key=_key_order)
        raise UnsupportedFieldError(f'characteristic polynomial {cp.format()} does not split over Q')
    keys = []
    x = Poly.x(field)
    for f, _ in poly_factor(cp, seed):
        for root in finite_field_roots(f.embed(field, field.from_int), seed):
            keys.append(x - Poly.const(field, root))
    return sorted(keys, key=_key_order)


def _working_field(gens: 'Sequence[Mat]', seed: int) -> 'Field':
    field = gens[0].field
    if isinstance(field, RationalField):
        return field
    if not isinstance(field, PrimeField):
        raise UnsupportedFieldError(f'eigenvalue computations need F_p or Q, not {field}')
    k = ilcm(*(f.degree for g in gens for f, _ in poly_factor(g.charpoly(), seed)))
    return extension_field(field.p, k)


def _combine(field: 'Field', columns: 'Sequence[Sequence]', coeffs: 'Sequence') -> tuple:
    out = [field.zero] * len(columns[0])
    for c, col in zip(coeffs, columns):
        if not field.is_zero(c):
            out = [field.add(o, field.mul(c, x)) for o, x in zip(out, col)]
    return tuple(out)


def _restrict(g: 'Mat', columns: 'Sequence[Sequence]') -> 'Mat':
    """Matrix of ``g`` on the invariant subspace spanned by ``columns``."""
    field = g.field
    images = [g.apply(col) for col in columns]
    x = solve(field, list(zip(*columns)), list(zip(*images)))
    return Mat(field, x)


def _primary_part(x: 'Mat', key: 'Poly') -> 'List[tuple]':
    power = x.poly_eval(key).power(x.n)
    return nullspace(x.field, power.rows, x.n)


@dataclass(frozen=True)
class Eigenspace:
    value: object
    basis: 'Tuple[tuple, ...]'
    field: 'Field'

    @property
    def dim(self) -> int:
        return len(self.basis)


def generalized_eigenspaces(a: 'Mat', seed: int = DEFAULT_SEED) -> 'List[Eigenspace]':
    """``ker (a - lambda)^n`` for every eigenvalue, over the splitting field of the characteristic polynomial."""
    field = _working_field([a], seed)
    big = _embed(a, field)
    out = []
    for key in _eigen_keys(a, field, False, seed):
        value = field.neg(key.coeffs[0])
        out.append(Eigenspace(value, tuple(_primary_part(big, key)), field))
    if sum(e.dim for e in out) != a.n:
        raise DomainError('generalized eigenspaces do not span')
    return out


@dataclass(frozen=True)
class BlockDecomp:
    """Simultaneous decomposition of a commuting family.

    ``basis`` has the block bases as consecutive columns. ``keys[i][j]`` is the irreducible factor of the
    characteristic polynomial of generator ``j`` that is primary on block ``i``; it is ``x - lambda`` when the family
    splits, in which case every generator is upper triangular on every block.
    """

    scalars: 'Field'
    basis: 'Mat'
    sizes: 'Tuple[int, ...]'
    keys: 'Tuple[Tuple[Poly, ...], ...]'
    split: bool = True

    @property
    def desc(self):
        return self.scalars.desc

    @property
    def offsets(self) -> 'List[int]':
        out = [0]
        for s in self.sizes:
            out.append(out[-1] + s)
        return out

    def eigenvalues(self, i: int) -> tuple:
        if not self.split:
            raise UnsupportedFieldError('eigenvalues are only defined for split decompositions')
        return tuple(self.scalars.neg(f.coeffs[0]) for f in self.keys[i])

    def conjugate(self, g: 'Mat') -> 'Mat':
        return self.basis.inverse() @ _embed(g, self.scalars) @ self.basis

    def to_dict(self) -> dict:
        fmt = self.scalars.format
        blocks = []
        for i, size in enumerate(self.sizes):
            entry = {'size': size}
            if self.split:
                entry['eigenvalues'] = [fmt(v) for v in self.eigenvalues(i)]
            else:
                entry['factors'] = [f.format() for f in self.keys[i]]
            blocks.append(entry)
        return {'field': self.desc.to_dict(), 'block_sizes': list(self.sizes), 'blocks': blocks,
                'basis': self.basis.to_strings(), 'split': self.split}


def _row_times(field: 'Field', row: 'Sequence', m: 'Mat') -> tuple:
    out = []
    for col in m.columns():
        acc = field.zero
        for x, y in zip(row, col):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return tuple(out)


def _flag(field: 'Field', nilpotents: 'Sequence[Mat]', d: int) -> 'List[tuple]':
    """Basis of ``F^d`` in which every (commuting, nilpotent) matrix is strictly upper triangular."""
    chosen = []
    while len(chosen) < d:
        if chosen:
            completion = []
            for i in range(d):
                e = tuple(field.one if j == i else field.zero for j in range(d))
                if rank(field, chosen + completion + [e]) > len(chosen) + len(completion):
                    completion.append(e)
            quotient = Mat.from_columns(field, chosen + completion).inverse().rows[len(chosen):]
            conditions = [_row_times(field, row, nil) for nil in nilpotents for row in quotient]
        else:
            conditions = [row for nil in nilpotents for row in nil.rows]
        added = False
        for v in nullspace(field, conditions, d):
            if rank(field, chosen + [v]) > len(chosen):
                chosen.append(v)
                added = True
        if not added:
            raise DomainError('family cannot be triangularized on a block')
    return chosen


def simultaneous_blocks(gens: 'Sequence[Mat]', allow_rational: bool = False,
                        seed: int = DEFAULT_SEED) -> 'BlockDecomp':
    """Split ``F^n`` into the common generalized eigenspaces of a commuting family and triangularize each one.

    Over F_p the scalars are extended to the smallest field containing every eigenvalue. Over Q the spectra must
    be rational, unless ``allow_rational`` is set, in which case the blocks are the primary components of the
    irreducible factors over Q and are not triangularized.
    """
    gens = list(gens)
    if not gens:
        raise DomainError('a family needs at least one matrix')
    n = gens[0].n
    if any(g.n != n or g.field != gens[0].field for g in gens):
        raise DomainError('family members must have the same size and field')
    if any(not g.is_invertible() for g in gens):
        raise DomainError('family members must be invertible')
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if not g.commutes(h):
                raise DomainError('family does not commute')
    field = _working_field(gens, seed)
    keys = [_eigen_keys(g, field, allow_rational, seed) for g in gens]
    split = all(f.degree == 1 for ks in keys for f in ks)
    big = [_embed(g, field) for g in gens]
    identity = Mat.identity(field, n).columns()
    blocks = [((), identity)]
    for g, gkeys in zip(big, keys):
        refined = []
        for key, cols in blocks:
            x = _restrict(g, cols)
            found = 0
            for f in gkeys:
                part = _primary_part(x, f)
                if part:
                    refined.append((key + (f,), [_combine(field, cols, v) for v in part]))
                    found += len(part)
            if found != len(cols):
                raise DomainError('primary components do not span a block')
        blocks = refined
    blocks.sort(key=lambda b: tuple(_key_order(f) for f in b[0]))
    columns = []
    for key, cols in blocks:
        if split and len(cols) > 1:
            nilpotents = []
            for g, f in zip(big, key):
                x = _restrict(g, cols)
                nilpotents.append(x - Mat.identity(field, len(cols)).scale(field.neg(f.coeffs[0])))
            cols = [_combine(field, cols, v) for v in _flag(field, nilpotents, len(cols))]
        columns.extend(cols)
    decomp = BlockDecomp(field, Mat.from_columns(field, columns), tuple(len(c) for _, c in blocks),
                         tuple(k for k, _ in blocks), split)
    log.debug('decomposition over %s with block sizes %s', field, decomp.sizes)
    return decomp


@dataclass(frozen=True)
class ThetaValue:
    """Block determinants of an element of the centralizer."""

    field: 'Field'
    components: tuple

    def is_trivial(self) -> bool:
        return all(self.field.is_one(c) for c in self.components)

    def product(self):
        out = self.field.one
        for c in self.components:
            out = self.field.mul(out, c)
        return out

    def __mul__(self, other: 'ThetaValue') -> 'ThetaValue':
        mul = self.field.mul
        return ThetaValue(self.field, tuple(mul(a, b) for a, b in zip(self.components, other.components)))

    def to_list(self) -> 'List[str]':
        return [self.field.format(c) for c in self.components]


def theta(g: 'Mat', decomp: 'BlockDecomp') -> 'ThetaValue':
    """Determinants of the diagonal blocks of ``g`` in the decomposition basis."""
    c = decomp.conjugate(g)
    field = decomp.scalars
    offsets = decomp.offsets
    owner = [i for i, s in enumerate(decomp.sizes) for _ in range(s)]
    for i, row in enumerate(c.rows):
        for j, x in enumerate(row):
            if owner[i] != owner[j] and not field.is_zero(x):
                raise DomainError('element does not preserve the block decomposition')
    return ThetaValue(field, tuple(c.submatrix(offsets[k], offsets[k + 1]).det() for k in range(len(decomp.sizes))))


@dataclass(frozen=True)
class ElementClass:
    kind: str
    order: 'Optional[int]' = None
    cap: 'Optional[int]' = None

    @property
    def is_finite(self) -> bool:
        return self.kind in {'identity', 'finite_order'}

    @property
    def exceeds_cap(self) -> bool:
        return self.kind == 'finite_order' and self.order is None

    def __str__(self):
        if self.kind != 'finite_order':
            return self.kind
        if self.order is None:
            return f'finite_order(>{self.cap})'
        return f'finite_order({self.order})'

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'order': self.order, 'verdict': str(self)}


def _constant_charpoly(g: 'Mat') -> 'Optional[Poly]':
    """The characteristic polynomial over the ground field, or None when a coefficient is transcendental."""
    cp = g.charpoly()
    field = g.field
    coeffs = list(cp.coeffs)
    while isinstance(field, RationalFunctionField):
        if not all(field.is_constant(c) for c in coeffs):
            return None
        coeffs = [field.to_base(c) for c in coeffs]
        field = field.base
    return Poly(field, coeffs)


def _exact_order(g: 'Mat', bound: int) -> int:
    if not g.power(bound).is_identity():
        raise DomainError(f'order bound {bound} does not annihilate the element')
    order = bound
    for prime in factorint(bound):
        while order % prime == 0 and g.power(order // prime).is_identity():
            order //= prime
    return order


_x = Symbol('x')


def _cyclotomic_index(f: 'Poly') -> 'Optional[int]':
    # Phi_M has degree phi(M) >= sqrt(M/2)
    d = f.degree
    coeffs = list(f.coeffs)
    if any(Fraction(c).denominator != 1 for c in coeffs):
        return None
    for m in range(1, 2 * d * d + 1):
        if totient(m) != d:
            continue
        phi = [int(c) for c in reversed(cyclotomic_poly(m, _x, polys=True).all_coeffs())]
        if phi == [int(c) for c in coeffs]:
            return m
    return None


def classify_element(g: 'Mat', order_cap: int = DEFAULT_ORDER_CAP, seed: int = DEFAULT_SEED) -> 'ElementClass':
    """Sort an invertible matrix into identity, finite order, unipotent of infinite order, virtually unipotent of
    infinite order, or anything else."""
    if not g.is_invertible():
        raise DomainError('element must be invertible')
    if g.is_identity():
        return ElementClass('identity', 1)
    cp = _constant_charpoly(g)
    if cp is None:
        return ElementClass('other_infinite')
    ground = cp.field
    n = g.n
    x = Poly.x(ground)
    unipotent = cp == (x - Poly.one(ground)) ** n
    p = ground.characteristic
    if p:
        q = ground.order
        if isinstance(ground, PrimeField):
            degrees = {f.degree for f, _ in poly_factor(cp, seed)}
        else:
            degrees = set(range(1, n + 1))
        e = 0
        while p ** e < n:
            e += 1
        bound = ilcm(*(q ** d - 1 for d in degrees)) * p ** e
    else:
        indices = []
        for f, _ in poly_factor(cp):
            m = _cyclotomic_index(f)
            if m is None:
                return ElementClass('other_infinite')
            indices.append(m)
        bound = ilcm(*indices)
        if not g.power(bound).is_identity():
            return ElementClass('infinite_order_unipotent' if unipotent else 'virtually_unipotent_infinite')
    order = _exact_order(g, bound)
    if order > order_cap:
        return ElementClass('finite_order', None, order_cap)
    return ElementClass('finite_order', order, order_cap)


@dataclass(frozen=True)
class TwistVerdict:
    passes: bool
    classification: 'ElementClass'

    def to_dict(self) -> dict:
        return {'finite_or_virtually_unipotent': self.passes, 'classification': str(self.classification)}


def twist_obstruction(g: 'Mat', order_cap: int = DEFAULT_ORDER_CAP) -> 'TwistVerdict':
    """Whether ``g`` has finite order or is virtually unipotent."""
    verdict = classify_element(g, order_cap)
    return TwistVerdict(verdict.kind != 'other_infinite', verdict)


@dataclass
class KernelReport:
    words_checked: int = 0
    kernel: 'List[Tuple[Mat, ElementClass]]' = dc_field(default_factory=list)
    unipotent_flags: 'List[Mat]' = dc_field(default_factory=list)
    violations: 'List[str]' = dc_field(default_factory=list)

    @property
    def torsion_verified(self) -> bool:
        return not self.violations and not self.unipotent_flags

    def to_dict(self) -> dict:
        return {'words_checked': self.words_checked,
                'kernel': [{'element': g.format(), 'class': str(c)} for g, c in self.kernel],
                'unipotent_flags': [g.format() for g in self.unipotent_flags],
                'violations': list(self.violations), 'torsion_verified': self.torsion_verified}


def _word_ball(gens: 'Sequence[Mat]', radius: int) -> 'List[Mat]':
    letters = list(gens) + [g.inverse() for g in gens]
    identity = Mat.identity(gens[0].field, gens[0].n)
    seen = {identity}
    order = [identity]
    frontier = [identity]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for s in letters:
                h = w @ s
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return order


def kernel_torsion_check(gens: 'Sequence[Mat]', decomp: 'BlockDecomp', radius: int = 4,
                         order_cap: int = DEFAULT_ORDER_CAP) -> 'KernelReport':
    """Walk the words of length at most ``radius`` and check every nontrivial element with trivial block
    determinants: each block scalar must be a ``d``-th root of unity and the element must be torsion or
    unipotent."""
    report = KernelReport()
    field = decomp.scalars
    offsets = decomp.offsets
    for w in _word_ball(gens, radius):
        report.words_checked += 1
        if w.is_identity() or not theta(w, decomp).is_trivial():
            continue
        verdict = classify_element(w, order_cap)
        report.kernel.append((w, verdict))
        if decomp.split:
            c = decomp.conjugate(w)
            for k, size in enumerate(decomp.sizes):
                diag = {c[i, i] for i in range(offsets[k], offsets[k + 1])}
                if len(diag) != 1:
                    report.violations.append(f'{w.format()}: block {k} has several eigenvalues')
                    continue
                mu = diag.pop()
                if not field.is_one(field.pow(mu, size)):
                    report.violations.append(f'{w.format()}: block {k} scalar {field.format(mu)} is not a '
                                             f'{size}-th root of unity')
        if verdict.kind == 'infinite_order_unipotent':
            report.unipotent_flags.append(w)
        elif verdict.kind not in {'identity', 'finite_order'}:
            report.violations.append(f'{w.format()}: {verdict} in the kernel')
    log.debug('kernel check: %d words, %d in the kernel', report.words_checked, len(report.kernel))
    return report


@dataclass(frozen=True)
class AbelianPresentation:
    """``C = Z^rank ⊕ Z/t_1 ⊕ ...`` with the images of a basis of A as rows (free coordinates first)."""

    rank: int
    torsion: 'Tuple[int, ...]'
    images: 'Tuple[Tuple[int, ...], ...]'

    def __post_init__(self):
        if self.rank < 0 or any(t < 2 for t in self.torsion):
            raise DomainError('torsion orders must be at least 2')
        width = self.rank + len(self.torsion)
        if any(len(row) != width for row in self.images):
            raise DomainError(f'every image needs {width} coordinates')

    @property
    def free_part(self) -> 'List[List[int]]':
        return [list(row[:self.rank]) for row in self.images]

    def to_dict(self) -> dict:
        return {'rank': self.rank, 'torsion': list(self.torsion), 'images': [list(r) for r in self.images]}


def split_direct_factor(pres: 'AbelianPresentation', n: int) -> 'Tuple[List[List[int]], int]':
    """A projection ``phi`` of ``Z^rank`` onto ``Z^n`` (as an ``n x rank`` matrix acting on columns) that stays
    injective on the image of A, and the index of that image in ``Z^n``."""
    if len(pres.images) != n:
        raise DomainError(f'expected {n} basis images, got {len(pres.images)}')
    if n == 0:
        return [], 1
    free = pres.free_part
    if pres.rank < n:
        raise DomainError(f'free rank {pres.rank} is smaller than the rank {n} of A')
    d, _, v = smith_normal_decomp(Matrix(free), domain=ZZ)
    divisors = [abs(int(d[i, i])) for i in range(n)]
    if any(x == 0 for x in divisors):
        raise DomainError('images are not independent modulo torsion')
    phi = [[int(v[r, c]) for r in range(pres.rank)] for c in range(n)]
    index = 1
    for x in divisors:
        index *= x
    return phi, index


def theta_presentation(gens: 'Sequence[Mat]', decomp: 'BlockDecomp') -> 'AbelianPresentation':
    """Write the block determinants of each generator in ``(Q^*)^k = ({±1} x free abelian on primes)^k``."""
    if not isinstance(decomp.scalars, RationalField):
        raise UnsupportedFieldError('block determinant presentations are only built over Q')
    values = [theta(g, decomp).components for g in gens]
    primes = sorted({p for row in values for c in row for x in (c.numerator, c.denominator)
                     for p in factorint(abs(x))})
    images = []
    for row in values:
        free = []
        signs = []
        for c in row:
            num = factorint(abs(c.numerator))
            den = factorint(c.denominator)
            free.extend(num.get(p, 0) - den.get(p, 0) for p in primes)
            signs.append(1 if c < 0 else 0)
        images.append(tuple(free + signs))
    return AbelianPresentation(len(primes) * len(decomp.sizes), (2,) * len(decomp.sizes), tuple(images))

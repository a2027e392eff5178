# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Square matrices over a scalar field, and the row-reduction helpers the rest of the package builds on.
"""

from logging import getLogger
from typing import TYPE_CHECKING

from ..errors import CapExceededError, DomainError
from .poly import Poly

if TYPE_CHECKING:
    from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple
    from .field import Field

__all__ = ['Mat', 'rref', 'nullspace', 'rank', 'solve', 'berkowitz']

log = getLogger(__name__)


def rref(field: 'Field', rows: 'Sequence[Sequence]') -> 'Tuple[List[list], List[int]]':
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    is_zero, sub, mul, inv = field.is_zero, field.sub, field.mul, field.inv
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        u = inv(rows[r][c])
        rows[r] = [mul(u, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(field: 'Field', rows: 'Sequence[Sequence]', ncols: int) -> 'List[tuple]':
    """Basis of ``{v : rows @ v = 0}``, one vector per free column, in column order."""
    if not rows:
        return [tuple(field.one if i == j else field.zero for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(field, rows)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [field.zero] * ncols
        v[free] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red[i][free])
        basis.append(tuple(v))
    return basis


def rank(field: 'Field', rows: 'Sequence[Sequence]') -> int:
    return len(rref(field, rows)[1])


def solve(field: 'Field', a_rows: 'Sequence[Sequence]', b_rows: 'Sequence[Sequence]') -> 'List[list]':
    """Solve ``A X = B`` for ``X``, where ``A`` has full column rank and the system is consistent."""
    ncols = len(a_rows[0])
    aug = [list(a) + list(b) for a, b in zip(a_rows, b_rows)]
    red, pivots = rref(field, aug)
    if pivots[:ncols] != list(range(ncols)) or any(p >= ncols for p in pivots):
        raise DomainError('linear system is singular or inconsistent')
    return [row[ncols:] for row in red[:ncols]]


def berkowitz(field: 'Field', a: 'Sequence[Sequence]') -> list:
    """Coefficients of ``det(x*I - a)``, highest degree first, without division."""
    n = len(a)
    if n == 0:
        return [field.one]
    if n == 1:
        return [field.one, field.neg(a[0][0])]
    add, mul, neg = field.add, field.mul, field.neg
    zero = field.zero

    def dot(u, v):
        acc = zero
        for x, y in zip(u, v):
            acc = add(acc, mul(x, y))
        return acc

    sub = [row[1:] for row in a[1:]]
    r = a[0][1:]
    col = [row[0] for row in a[1:]]
    powers = [col]
    for _ in range(n - 2):
        powers.append([dot(row, powers[-1]) for row in sub])
    vals = [field.one, neg(a[0][0])] + [neg(dot(r, v)) for v in powers]
    inner = berkowitz(field, sub)
    out = []
    for i in range(n + 1):
        acc = zero
        for j in range(min(i + 1, n)):
            acc = add(acc, mul(vals[i - j], inner[j]))
        out.append(acc)
    return out


class Mat:
    """Square matrix with entries in ``field``. Immutable and hashable."""

    __slots__ = ('field', 'rows', '_hash')

    def __init__(self, field: 'Field', rows: 'Iterable[Iterable]'):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DomainError('matrix must be square')
        self._hash = None

    @classmethod
    def identity(cls, field: 'Field', n: int) -> 'Mat':
        one, zero = field.one, field.zero
        return cls(field, ((one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: 'Field', n: int) -> 'Mat':
        return cls(field, ((field.zero,) * n for _ in range(n)))

    @classmethod
    def diag(cls, field: 'Field', entries: 'Sequence') -> 'Mat':
        n = len(entries)
        return cls(field, ((entries[i] if i == j else field.zero for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: 'Field', columns: 'Sequence[Sequence]') -> 'Mat':
        return cls(field, zip(*columns))

    @classmethod
    def block_diag(cls, field: 'Field', blocks: 'Sequence[Mat]') -> 'Mat':
        n = sum(b.n for b in blocks)
        rows = [[field.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                rows[off + i][off:off + b.n] = row
            off += b.n
        return cls(field, rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: 'Tuple[int, int]'):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f'Mat({self.format()}, {self.field})'

    def columns(self) -> 'List[tuple]':
        return list(zip(*self.rows))

    def entries(self) -> 'Iterable':
        for row in self.rows:
            yield from row

    def transpose(self) -> 'Mat':
        return Mat(self.field, zip(*self.rows))

    def __matmul__(self, other: 'Mat') -> 'Mat':
        f = self.field
        add, mul, is_zero = f.add, f.mul, f.is_zero
        cols = list(zip(*other.rows))
        zero = f.zero
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = zero
                for x, y in zip(row, col):
                    if not is_zero(x) and not is_zero(y):
                        acc = add(acc, mul(x, y))
                new.append(acc)
            out.append(new)
        return Mat(f, out)

    def apply(self, v: 'Sequence') -> tuple:
        f = self.field
        out = []
        for row in self.rows:
            acc = f.zero
            for x, y in zip(row, v):
                acc = f.add(acc, f.mul(x, y))
            out.append(acc)
        return tuple(out)

    def __add__(self, other: 'Mat') -> 'Mat':
        add = self.field.add
        return Mat(self.field, ((add(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: 'Mat') -> 'Mat':
        sub = self.field.sub
        return Mat(self.field, ((sub(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> 'Mat':
        neg = self.field.neg
        return Mat(self.field, ((neg(x) for x in r) for r in self.rows))

    def scale(self, c) -> 'Mat':
        mul = self.field.mul
        return Mat(self.field, ((mul(c, x) for x in r) for r in self.rows))

    def power(self, k: int, bit_limit: 'Optional[int]' = None) -> 'Mat':
        """``self ** k`` by repeated squaring. Raises :class:`CapExceededError` once an intermediate entry grows
        past ``bit_limit`` bits."""
        if k < 0:
            return self.inverse().power(-k, bit_limit)
        result = Mat.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
                if bit_limit is not None:
                    result._check_size(bit_limit)
            k >>= 1
            if k:
                base = base @ base
                if bit_limit is not None:
                    base._check_size(bit_limit)
        return result

    def __pow__(self, k: int) -> 'Mat':
        return self.power(k)

    def _check_size(self, bit_limit: int):
        size = self.max_entry_size()
        if size > bit_limit:
            raise CapExceededError(f'matrix entries grew to {size} bits (limit {bit_limit})', bit_limit)

    def max_entry_size(self) -> int:
        return max(self.field.size(x) for x in self.entries())

    def is_identity(self) -> bool:
        f = self.field
        return all((f.is_one(x) if i == j else f.is_zero(x)) for i, r in enumerate(self.rows)
                   for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.entries())

    def trace(self):
        f = self.field
        acc = f.zero
        for i in range(self.n):
            acc = f.add(acc, self.rows[i][i])
        return acc

    def det(self):
        f = self.field
        rows = [list(r) for r in self.rows]
        n = len(rows)
        det = f.one
        for c in range(n):
            pivot = next((i for i in range(c, n) if not f.is_zero(rows[i][c])), None)
            if pivot is None:
                return f.zero
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                det = f.neg(det)
            p = rows[c][c]
            det = f.mul(det, p)
            u = f.inv(p)
            for i in range(c + 1, n):
                if not f.is_zero(rows[i][c]):
                    m = f.mul(rows[i][c], u)
                    rows[i] = [f.sub(x, f.mul(m, y)) for x, y in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> 'Mat':
        f = self.field
        n = self.n
        ident = Mat.identity(f, n).rows
        red, pivots = rref(f, [list(r) + list(e) for r, e in zip(self.rows, ident)])
        if pivots[:n] != list(range(n)):
            raise DomainError('matrix is singular')
        return Mat(f, (row[n:] for row in red))

    def is_invertible(self) -> bool:
        return not self.field.is_zero(self.det())

    def charpoly(self) -> 'Poly':
        """``det(x*I - self)`` as a polynomial over the entry field."""
        return Poly(self.field, reversed(berkowitz(self.field, self.rows)))

    def poly_eval(self, f: 'Poly') -> 'Mat':
        acc = Mat.zeros(self.field, self.n)
        ident = Mat.identity(self.field, self.n)
        for c in reversed(f.coeffs):
            acc = acc @ self + ident.scale(c)
        return acc

    def commutes(self, other: 'Mat') -> bool:
        return self @ other == other @ self

    def map(self, field: 'Field', fn: 'Callable[[Any], Any]') -> 'Mat':
        return Mat(field, ((fn(x) for x in r) for r in self.rows))

    def submatrix(self, start: int, stop: int) -> 'Mat':
        return Mat(self.field, (r[start:stop] for r in self.rows[start:stop]))

    def to_strings(self) -> 'List[List[str]]':
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def format(self) -> str:
        return '[' + ','.join('[' + ','.join(r) + ']' for r in self.to_strings()) + ']'

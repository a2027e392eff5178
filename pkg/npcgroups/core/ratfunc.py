# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Rational function fields ``k(t)`` and towers such as ``F_2(s)(u)``.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING

from ..errors import DomainError
from .field import Field, FieldDesc
from .poly import Poly, format_terms, poly_gcd

if TYPE_CHECKING:
    from typing import List

__all__ = ['RatFunc', 'RationalFunctionField', 'field_tower', 'make_tower']


class RatFunc:
    """A quotient ``num / den`` of polynomials in canonical form: ``den`` monic and ``gcd(num, den) = 1``.

    Build these through :meth:`RationalFunctionField.make`; the constructor trusts its arguments.
    """

    __slots__ = ('num', 'den', '_hash')

    def __init__(self, num: 'Poly', den: 'Poly'):
        self.num = num
        self.den = den
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    def __repr__(self):
        return f'RatFunc({self.num!r}, {self.den!r})'


@dataclass(frozen=True)
class RationalFunctionField(Field):
    """The field ``base(var)``."""

    base: 'Field'
    var: str = 't'

    def __post_init__(self):
        if self.var in self.base.variables:
            raise DomainError(f'variable {self.var!r} is already used by {self.base}')

    def __str__(self):
        return f'{self.base}({self.var})'

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def variables(self):
        return self.base.variables + (self.var,)

    @property
    def zero(self):
        return RatFunc(Poly._raw(self.base, ()), Poly.one(self.base))

    @property
    def one(self):
        return RatFunc(Poly.one(self.base), Poly.one(self.base))

    def make(self, num: 'Poly', den: 'Poly') -> 'RatFunc':
        """Canonical ``num / den``."""
        if not den.coeffs:
            raise DomainError('rational function with zero denominator')
        if not num.coeffs:
            return self.zero
        if den.degree > 0 and num.degree > 0:
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num // g, den // g
        lc = den.lc
        if not self.base.is_one(lc):
            u = self.base.inv(lc)
            num, den = num.scale(u), den.scale(u)
        return RatFunc(num, den)

    def from_poly(self, num: 'Poly') -> 'RatFunc':
        return RatFunc(num, Poly.one(self.base))

    def from_base(self, c) -> 'RatFunc':
        return RatFunc(Poly(self.base, (c,)), Poly.one(self.base))

    def t(self) -> 'RatFunc':
        return self.from_poly(Poly.x(self.base))

    def add(self, a, b):
        if a.den == b.den:
            return self.make(a.num + b.num, a.den)
        return self.make(a.num * b.den + b.num * a.den, a.den * b.den)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return RatFunc(-a.num, a.den)

    def mul(self, a, b):
        if not a.num.coeffs or not b.num.coeffs:
            return self.zero
        if a.den.is_one() and b.den.is_one():
            return RatFunc(a.num * b.num, a.den)
        return self.make(a.num * b.num, a.den * b.den)

    def inv(self, a):
        if not a.num.coeffs:
            raise DomainError('inverse of zero')
        return self.make(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return not a.num.coeffs

    def is_one(self, a):
        return a.den.is_one() and a.num.is_one()

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def gen(self, name):
        if name == self.var:
            return self.t()
        return self.from_base(self.base.gen(name))

    def is_constant(self, a) -> bool:
        """Whether ``a`` lies in the base field."""
        return a.num.degree <= 0 and a.den.degree == 0

    def to_base(self, a):
        if not self.is_constant(a):
            raise DomainError(f'{self.format(a)} is not a constant')
        return a.num.coeffs[0] if a.num.coeffs else self.base.zero

    def invert_variable(self, a) -> 'RatFunc':
        """Substitute ``var -> 1/var``."""
        def reflected(p: 'Poly', d: int) -> 'Poly':
            # p(1/t) * t^d
            return Poly(self.base, reversed(p.coeffs)).shift(d - p.degree)
        if not a.num.coeffs:
            return a
        d = max(a.num.degree, a.den.degree)
        return self.make(reflected(a.num, d), reflected(a.den, d))

    def sort_key(self, a):
        return a.num.sort_key(), a.den.sort_key()

    def format(self, a):
        num = format_terms(self.base, a.num.coeffs, self.var)
        if a.den.is_one():
            return num
        den = format_terms(self.base, a.den.coeffs, self.var)
        return f'{num} | {den}'

    def size(self, a):
        bsize = self.base.size
        return sum(bsize(c) for c in a.num.coeffs + a.den.coeffs) + a.num.degree + a.den.degree

    @property
    def desc(self):
        d = self.base.desc
        return FieldDesc(d.characteristic, d.extension_degree, True)


def field_tower(field: 'Field') -> 'List[RationalFunctionField]':
    """The rational function fields of a tower, innermost first."""
    levels = []
    while isinstance(field, RationalFunctionField):
        levels.append(field)
        field = field.base
    levels.reverse()
    return levels


def make_tower(ground: 'Field', variables) -> 'Field':
    field = ground
    for var in variables:
        field = RationalFunctionField(field, var)
    return field

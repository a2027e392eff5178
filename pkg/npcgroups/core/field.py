# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Exact scalar fields.

Field objects do not wrap their elements. Like the domains in sympy, a field is a small immutable object that knows
how to add, multiply and invert raw values:

* :class:`RationalField` works on :class:`fractions.Fraction`
* :class:`PrimeField` works on ``int`` in ``range(p)``
* :class:`ExtensionField` works on tuples of ``k`` ints, lowest coefficient first, reduced modulo a fixed
  irreducible polynomial

Rational function fields live in :mod:`npcgroups.core.ratfunc`.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product
from logging import getLogger
from typing import TYPE_CHECKING

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_rem, gf_strip

from ..errors import DomainError, MalformedInputError, UnsupportedFieldError

if TYPE_CHECKING:
    from random import Random
    from typing import Any, Iterator, Optional, Tuple

__all__ = ['FieldDesc', 'Field', 'RationalField', 'PrimeField', 'ExtensionField', 'extension_field', 'CONWAY_TABLE']

log = getLogger(__name__)

# Conway polynomials, coefficients lowest degree first, leading 1 included.
CONWAY_TABLE = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (5, 5): (3, 4, 0, 0, 0, 1),
    (5, 6): (2, 0, 1, 4, 1, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}


@dataclass(frozen=True)
class FieldDesc:
    """Summary of a scalar field: characteristic, degree of the finite part over the prime field, and whether a
    transcendental is adjoined."""

    characteristic: int
    extension_degree: int = 1
    has_transcendental: bool = False

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise DomainError(f'characteristic must be 0 or prime, got {self.characteristic}')
        if self.extension_degree < 1:
            raise DomainError(f'extension degree must be positive, got {self.extension_degree}')
        if self.characteristic == 0 and self.extension_degree != 1:
            raise UnsupportedFieldError('number fields other than Q are not supported')

    def to_dict(self):
        return {'characteristic': self.characteristic, 'extension_degree': self.extension_degree,
                'has_transcendental': self.has_transcendental}


class Field:
    """Operations shared by every scalar field. Subclasses provide the arithmetic on raw values."""

    characteristic: int
    #: number of elements, or None for infinite fields
    order: 'Optional[int]' = None
    #: names of the transcendentals, innermost first
    variables: 'Tuple[str, ...]' = ()

    @property
    def zero(self) -> 'Any':
        raise NotImplementedError

    @property
    def one(self) -> 'Any':
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def size(self, a) -> int:
        """Rough bit size of an element, used by the entry-size watchdog."""
        raise NotImplementedError

    @property
    def desc(self) -> 'FieldDesc':
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def pow(self, a, e: int):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def gen(self, name: str):
        raise MalformedInputError(f'unknown variable {name!r} for {self}')

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> 'Iterator':
        raise UnsupportedFieldError(f'{self} is not finite')

    def random(self, rng: 'Random'):
        raise UnsupportedFieldError(f'{self} has no uniform distribution')


@dataclass(frozen=True)
class RationalField(Field):
    characteristic = 0

    def __str__(self):
        return 'Q'

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DomainError('inverse of zero')
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DomainError('division by zero')
        return a / b

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return Fraction(n)

    def sort_key(self, a):
        return a

    def format(self, a):
        return str(a)

    def size(self, a):
        return max(a.numerator.bit_length(), a.denominator.bit_length())

    @property
    def desc(self):
        return FieldDesc(0)


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise DomainError(f'{self.p} is not prime')

    def __str__(self):
        return f'F_{self.p}'

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if not a:
            raise DomainError('inverse of zero')
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return n % self.p

    def sort_key(self, a):
        return a

    def format(self, a):
        return str(a)

    def size(self, a):
        return self.p.bit_length()

    @property
    def desc(self):
        return FieldDesc(self.p)

    def elements(self):
        return iter(range(self.p))

    def random(self, rng):
        return rng.randrange(self.p)


def _smallest_irreducible(p: int, k: int) -> 'Tuple[int, ...]':
    # monic, lowest coefficient first; tried in increasing order of the base-p number they spell
    for n in range(p ** k):
        low = [(n // p ** i) % p for i in range(k)]
        if not low[0]:
            continue
        coeffs = tuple(low) + (1,)
        if gf_irreducible_p(list(reversed(coeffs)), p, ZZ):
            return coeffs
    raise DomainError(f'no irreducible polynomial of degree {k} over F_{p}')


@dataclass(frozen=True)
class ExtensionField(Field):
    """The field with ``p**k`` elements. Elements are tuples ``(c_0, ..., c_{k-1})`` standing for
    ``c_0 + c_1*z + ... + c_{k-1}*z^(k-1)``, where ``z`` is a root of :attr:`modulus`."""

    p: int
    k: int
    modulus: 'Tuple[int, ...]' = dc_field(default=(), compare=False)

    def __post_init__(self):
        if not isprime(self.p):
            raise DomainError(f'{self.p} is not prime')
        if self.k < 2:
            raise DomainError('use PrimeField for degree 1')
        if not self.modulus:
            modulus = CONWAY_TABLE.get((self.p, self.k))
            if modulus is None:
                log.debug('no table entry for F_%d^%d, searching for an irreducible', self.p, self.k)
                modulus = _smallest_irreducible(self.p, self.k)
            object.__setattr__(self, 'modulus', modulus)

    def __str__(self):
        return f'F_{self.p}^{self.k}'

    @cached_property
    def _gf_modulus(self):
        return [ZZ(c) for c in reversed(self.modulus)]

    def _to_gf(self, a):
        return gf_strip([ZZ(c) for c in reversed(a)])

    def _from_gf(self, f):
        coeffs = [int(c) for c in reversed(f)]
        return tuple(coeffs + [0] * (self.k - len(coeffs)))

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p ** self.k

    @property
    def zero(self):
        return (0,) * self.k

    @property
    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        prod = gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(gf_rem(prod, self._gf_modulus, self.p, ZZ))

    def inv(self, a):
        if not any(a):
            raise DomainError('inverse of zero')
        s, _, h = gf_gcdex(self._to_gf(a), self._gf_modulus, self.p, ZZ)
        # h is the monic gcd, so 1 here
        return self._from_gf(gf_rem(s, self._gf_modulus, self.p, ZZ))

    def is_zero(self, a):
        return not any(a)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_base(self, c: int):
        return self.from_int(c)

    def sort_key(self, a):
        return tuple(reversed(a))

    def format(self, a):
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = 'z' if i == 1 else f'z^{i}'
                terms.append(mono if c == 1 else f'{c}*{mono}')
        return '+'.join(terms) if terms else '0'

    def size(self, a):
        return self.k * self.p.bit_length()

    def gen(self, name):
        if name != 'z':
            return super().gen(name)
        return (0, 1) + (0,) * (self.k - 2)

    @property
    def variables(self):
        return ('z',)

    @property
    def desc(self):
        return FieldDesc(self.p, self.k)

    def elements(self):
        return iter(product(range(self.p), repeat=self.k))

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))


def extension_field(p: int, k: int) -> 'Field':
    """The field with ``p**k`` elements, as a :class:`PrimeField` when ``k == 1``."""
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, k)

# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Dense univariate polynomials over any :class:`~npcgroups.core.field.Field`, factorization over finite prime fields
and over Q, and splitting fields of characteristic polynomials.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from logging import getLogger
from math import gcd as igcd
from random import Random
from typing import TYPE_CHECKING

from sympy import Poly as SympyPoly, Rational, Symbol, factor_list
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (gf_add, gf_ddf_zassenhaus, gf_div, gf_gcd, gf_irreducible_p, gf_pow_mod,
                                     gf_quo, gf_sqf_list, gf_strip, gf_sub_ground)

from ..errors import DomainError, UnsupportedFieldError
from .field import PrimeField, RationalField, extension_field

if TYPE_CHECKING:
    from typing import Any, Iterable, List, Tuple
    from .field import Field

__all__ = ['DEFAULT_SEED', 'Poly', 'poly_gcd', 'poly_xgcd', 'is_irreducible', 'poly_factor', 'factor_rational',
           'finite_field_roots', 'Splitting', 'splitting_field_embed', 'ilcm']

log = getLogger(__name__)

DEFAULT_SEED = 5132355


def ilcm(*args: int) -> int:
    return reduce(lambda a, b: a * b // igcd(a, b), args, 1)


class Poly:
    """A polynomial with coefficients in ``field``, stored lowest degree first with no trailing zeros.

    Comparison and hashing look at the coefficients only; polynomials are only ever compared against polynomials
    over the same field.
    """

    __slots__ = ('field', 'coeffs')

    def __init__(self, field: 'Field', coeffs: 'Iterable' = ()):
        coeffs = list(coeffs)
        is_zero = field.is_zero
        while coeffs and is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, field, coeffs: tuple):
        p = object.__new__(cls)
        p.field = field
        p.coeffs = coeffs
        return p

    @classmethod
    def x(cls, field: 'Field') -> 'Poly':
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def const(cls, field: 'Field', c) -> 'Poly':
        return cls(field, (c,))

    @classmethod
    def one(cls, field: 'Field') -> 'Poly':
        return cls._raw(field, (field.one,))

    def __repr__(self):
        return f'Poly({self.format()!r}, {self.field})'

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.field.is_one(self.coeffs[0])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.field.is_one(self.coeffs[-1])

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __add__(self, other: 'Poly') -> 'Poly':
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(f, [f.add(x, y) for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> 'Poly':
        neg = self.field.neg
        return Poly._raw(self.field, tuple(neg(c) for c in self.coeffs))

    def __sub__(self, other: 'Poly') -> 'Poly':
        return self + (-other)

    def __mul__(self, other: 'Poly') -> 'Poly':
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(f, ())
        if isinstance(f, PrimeField):
            p = f.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(f, [c % p for c in out])
        add, mul = f.add, f.mul
        out = [f.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if f.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Poly(f, out)

    def scale(self, c) -> 'Poly':
        mul = self.field.mul
        return Poly(self.field, [mul(c, x) for x in self.coeffs])

    def shift(self, k: int) -> 'Poly':
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other: 'Poly') -> 'Tuple[Poly, Poly]':
        f = self.field
        if not other.coeffs:
            raise DomainError('polynomial division by zero')
        if isinstance(f, PrimeField):
            q, r = gf_div(self._gf(), other._gf(), f.p, ZZ)
            return Poly._from_gf(f, q), Poly._from_gf(f, r)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly._raw(f, ()), self
        inv_lc = f.inv(other.coeffs[-1])
        quot = [f.zero] * (dq + 1)
        sub, mul = f.sub, f.mul
        for i in range(dq, -1, -1):
            c = mul(rem[i + len(other.coeffs) - 1], inv_lc)
            quot[i] = c
            if f.is_zero(c):
                continue
            for j, d in enumerate(other.coeffs):
                rem[i + j] = sub(rem[i + j], mul(c, d))
        return Poly(f, quot), Poly(f, rem[:len(other.coeffs) - 1])

    def __floordiv__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> 'Poly':
        if e < 0:
            raise DomainError('negative power of a polynomial')
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def pow_mod(self, e: int, modulus: 'Poly') -> 'Poly':
        f = self.field
        if isinstance(f, PrimeField):
            return Poly._from_gf(f, gf_pow_mod(self._gf(), e, modulus._gf(), f.p, ZZ))
        result = Poly.one(f)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def monic(self) -> 'Poly':
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self) -> 'Poly':
        f = self.field
        return Poly(f, [f.mul(f.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate at a field element by Horner's rule."""
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def embed(self, field: 'Field', fn) -> 'Poly':
        return Poly(field, [fn(c) for c in self.coeffs])

    def sort_key(self):
        key = self.field.sort_key
        return len(self.coeffs), tuple(key(c) for c in reversed(self.coeffs))

    def format(self, var: str = 'x') -> str:
        return format_terms(self.field, self.coeffs, var)

    def _gf(self):
        return [ZZ(c) for c in reversed(self.coeffs)]

    @classmethod
    def _from_gf(cls, field, f):
        return cls._raw(field, tuple(int(c) for c in reversed(gf_strip(f))))


def _needs_parens(s: str) -> bool:
    return '|' in s or '+' in s or '-' in s[1:] or ' ' in s


def format_terms(field: 'Field', coeffs: 'Tuple', var: str) -> str:
    """Canonical ascending-degree text, for example ``1+t+t^3`` or ``2*t``."""
    terms = []
    for i, c in enumerate(coeffs):
        if field.is_zero(c):
            continue
        cs = field.format(c)
        if i == 0:
            terms.append(f'({cs})' if '|' in cs and len(coeffs) > 1 else cs)
            continue
        mono = var if i == 1 else f'{var}^{i}'
        if cs == '1':
            terms.append(mono)
        elif cs == '-1':
            terms.append('-' + mono)
        elif _needs_parens(cs):
            terms.append(f'({cs})*{mono}')
        else:
            terms.append(f'{cs}*{mono}')
    if not terms:
        return '0'
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith('-') else '+' + t
    return out


def poly_gcd(a: 'Poly', b: 'Poly') -> 'Poly':
    """Monic gcd; ``gcd(0, 0) = 0``."""
    f = a.field
    if isinstance(f, PrimeField):
        return Poly._from_gf(f, gf_gcd(a._gf(), b._gf(), f.p, ZZ))
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: 'Poly', b: 'Poly') -> 'Tuple[Poly, Poly, Poly]':
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` the monic gcd."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly(f)
    t0, t1 = Poly(f), Poly.one(f)
    while r1.coeffs:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.coeffs:
        return r0, s0, t0
    u = f.inv(r0.lc)
    return r0.scale(u), s0.scale(u), t0.scale(u)


def is_irreducible(f: 'Poly') -> bool:
    if f.degree < 1:
        return False
    field = f.field
    if f.degree == 1:
        return True
    if isinstance(field, PrimeField):
        return gf_irreducible_p(f.monic()._gf(), field.p, ZZ)
    if isinstance(field, RationalField):
        factors = factor_rational(f)
        return len(factors) == 1 and factors[0][1] == 1
    raise UnsupportedFieldError(f'irreducibility test over {field} is only available for degree 1')


def _equal_degree_split(f: list, n: int, p: int, rng: 'Random') -> 'List[list]':
    # f monic squarefree, product of irreducibles of degree n
    if len(f) - 1 <= n:
        return [f]
    deg = len(f) - 1
    one = [ZZ(1)]
    while True:
        r = gf_strip([ZZ(rng.randrange(p)) for _ in range(deg)])
        if len(r) < 2:
            continue
        if p == 2:
            # absolute trace r + r^2 + ... + r^(2^(n-1))
            h, s = r, r
            for _ in range(n - 1):
                s = gf_pow_mod(s, 2, f, p, ZZ)
                h = gf_add(h, s, p, ZZ)
        else:
            h = gf_sub_ground(gf_pow_mod(r, (p ** n - 1) // 2, f, p, ZZ), ZZ(1), p, ZZ)
        g = gf_gcd(f, h, p, ZZ)
        if g != one and g != f:
            break
    return _equal_degree_split(g, n, p, rng) + _equal_degree_split(gf_quo(f, g, p, ZZ), n, p, rng)


def poly_factor(f: 'Poly', seed: int = DEFAULT_SEED) -> 'List[Tuple[Poly, int]]':
    """Factor ``f`` over F_p into ``(monic irreducible, multiplicity)`` pairs, sorted by degree then coefficients.

    The product of the factors times the leading coefficient of ``f`` is ``f``. The randomized equal-degree step
    is seeded, and the sorted output does not depend on the seed.
    """
    field = f.field
    if not f.coeffs:
        raise DomainError('cannot factor the zero polynomial')
    if isinstance(field, RationalField):
        return factor_rational(f)
    if not isinstance(field, PrimeField):
        raise UnsupportedFieldError(f'factorization over {field} is not supported')
    p = field.p
    rng = Random(seed)
    out = []
    _, sqf = gf_sqf_list(f.monic()._gf(), p, ZZ)
    for g, mult in sqf:
        for h, n in gf_ddf_zassenhaus(g, p, ZZ):
            for irred in _equal_degree_split(h, n, p, rng):
                out.append((Poly._from_gf(field, irred), mult))
    out.sort(key=lambda pair: (pair[0].sort_key(), pair[1]))
    log.debug('factored %s into %d irreducible factors', f, len(out))
    return out


_x = Symbol('x')


def factor_rational(f: 'Poly') -> 'List[Tuple[Poly, int]]':
    """Factor over Q with sympy into monic irreducibles, sorted like :func:`poly_factor`."""
    field = f.field
    if not f.coeffs:
        raise DomainError('cannot factor the zero polynomial')
    sp = SympyPoly([Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], _x, domain='QQ')
    _, factors = factor_list(sp)
    out = []
    for g, mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]
        out.append((Poly(field, coeffs).monic(), mult))
    out.sort(key=lambda pair: (pair[0].sort_key(), pair[1]))
    return out


def _split_linear(g: 'Poly', rng: 'Random') -> list:
    field = g.field
    if g.degree < 1:
        return []
    if g.degree == 1:
        return [field.neg(g.monic().coeffs[0])]
    q = field.order
    one = Poly.one(field)
    while True:
        r = Poly(field, [field.random(rng) for _ in range(g.degree)])
        if r.degree < 1:
            continue
        if q % 2:
            h = r.pow_mod((q - 1) // 2, g) - one
        else:
            h, s = r, r
            for _ in range(q.bit_length() - 2):
                s = (s * s) % g
                h = h + s
        d = poly_gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


def finite_field_roots(f: 'Poly', seed: int = DEFAULT_SEED) -> list:
    """Distinct roots of ``f`` in its (finite) coefficient field, sorted by the field's canonical order."""
    field = f.field
    if not field.is_finite:
        raise UnsupportedFieldError(f'root finding needs a finite field, not {field}')
    x = Poly.x(field)
    g = poly_gcd(f, x.pow_mod(field.order, f) - x) if f.degree > 1 else f.monic()
    return sorted(_split_linear(g, Random(seed)), key=field.sort_key)


@dataclass(frozen=True)
class Splitting:
    """A field containing every root of a polynomial, with the roots and their multiplicities."""

    field: 'Field'
    roots: 'Tuple[Tuple[Any, int], ...]'

    @property
    def desc(self):
        return self.field.desc


def splitting_field_embed(f: 'Poly', seed: int = DEFAULT_SEED) -> 'Splitting':
    """Smallest F_(p^k) over which ``f`` (over F_p) splits, together with its roots.

    Over Q only polynomials that already split are accepted.
    """
    field = f.field
    if f.degree < 1:
        return Splitting(field, ())
    if isinstance(field, RationalField):
        factors = factor_rational(f)
        if any(g.degree > 1 for g, _ in factors):
            raise UnsupportedFieldError(f'{f.format()} does not split over Q')
        roots = sorted(((field.neg(g.coeffs[0]), m) for g, m in factors), key=lambda r: r[0])
        return Splitting(field, tuple(roots))
    if not isinstance(field, PrimeField):
        raise UnsupportedFieldError(f'splitting fields over {field} are not supported')
    factors = poly_factor(f, seed)
    k = ilcm(*(g.degree for g, _ in factors))
    big = extension_field(field.p, k)
    log.debug('%s splits over %s', f.format(), big)
    roots = []
    for g, mult in factors:
        lifted = g.embed(big, big.from_int)
        found = finite_field_roots(lifted, seed)
        if len(found) != g.degree:
            raise DomainError(f'found {len(found)} roots of an irreducible factor of degree {g.degree}')
        roots.extend((r, mult) for r in found)
    roots.sort(key=lambda r: big.sort_key(r[0]))
    return Splitting(big, tuple(roots))

# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Discrete valuations on rational function fields, the finite family attached to a finitely generated ring, and the
finite sets of ring elements those valuations bound from below.
"""

from dataclasses import dataclass
from itertools import product
from logging import getLogger
from typing import TYPE_CHECKING

from sympy import Integer, exp, oo

from .core.field import PrimeField, RationalField
from .core.poly import Poly, is_irreducible, poly_factor
from .core.ratfunc import RatFunc, RationalFunctionField, field_tower
from .errors import CapExceededError, DomainError, MalformedInputError, UnsupportedFieldError

if TYPE_CHECKING:
    from typing import Iterable, List, Optional, Sequence, Tuple, Union
    from .core.field import Field
    from .core.matrix import Mat

__all__ = ['Valuation', 'prime_poly_valuation', 'degree_valuation', 'extend_valuation', 'valuate',
           'ultrametric_distance', 'uniformizer', 'in_valuation_ring', 'residue_field_size', 'RingDesc', 'make_ring',
           'in_ring', 'ValFamily', 'build_valuation_family', 'enumerate_bounded', 'bounded_count',
           'matrix_valuation_floor', 'valuation_from_text', 'ring_of_group', 'DEFAULT_ELEMENT_CAP']

log = getLogger(__name__)

DEFAULT_ELEMENT_CAP = 1_000_000


@dataclass(frozen=True)
class Valuation:
    """A discrete valuation on ``field``.

    ``kind`` is one of ``prime_poly`` (order of vanishing at a monic irreducible ``prime``), ``degree``
    (``deg den - deg num``, the place at infinity) or ``extension`` (Gauss extension of ``inner`` from the base
    field).
    """

    kind: str
    field: 'RationalFunctionField'
    prime: 'Optional[Poly]' = None
    inner: 'Optional[Valuation]' = None

    @property
    def name(self) -> str:
        if self.kind == 'prime_poly':
            return f'nu[{self.prime.format(self.field.var)}]'
        if self.kind == 'degree':
            return f'mu0[{self.field.var}]'
        return f'ext({self.inner.name})'

    def __str__(self):
        return self.name


def prime_poly_valuation(field: 'RationalFunctionField', prime: 'Union[Poly, RatFunc]') -> 'Valuation':
    if isinstance(prime, RatFunc):
        if not prime.den.is_one():
            raise DomainError(f'{field.format(prime)} is not a polynomial')
        prime = prime.num
    if prime.degree < 1 or not prime.is_monic():
        raise DomainError(f'{prime.format(field.var)} is not a monic non-constant polynomial')
    base = field.base
    if isinstance(base, (PrimeField, RationalField)):
        if not is_irreducible(prime):
            raise DomainError(f'{prime.format(field.var)} is not irreducible over {base}')
    elif prime.degree != 1:
        raise UnsupportedFieldError(f'primes over {base} must have degree 1')
    return Valuation('prime_poly', field, prime=prime)


def degree_valuation(field: 'RationalFunctionField') -> 'Valuation':
    return Valuation('degree', field)


def extend_valuation(inner: 'Valuation', over: 'Union[RationalFunctionField, str]') -> 'Valuation':
    """Gauss extension of ``inner`` to ``inner.field(t)``: the minimum over coefficients, numerator minus
    denominator."""
    if isinstance(over, str):
        over = RationalFunctionField(inner.field, over)
    if over.base != inner.field:
        raise DomainError(f'{over} is not a rational function field over {inner.field}')
    return Valuation('extension', over, inner=inner)


def _order(f: 'Poly', prime: 'Poly') -> int:
    k = 0
    while True:
        q, r = divmod(f, prime)
        if r.coeffs:
            return k
        f = q
        k += 1


def _content_valuation(inner: 'Valuation', f: 'Poly'):
    return min(valuate(inner, c) for c in f.coeffs if not inner.field.is_zero(c))


def valuate(v: 'Valuation', x: 'RatFunc'):
    """``v(x)`` as an int, or ``sympy.oo`` for zero."""
    if not x.num.coeffs:
        return oo
    if v.kind == 'prime_poly':
        return _order(x.num, v.prime) - _order(x.den, v.prime)
    if v.kind == 'degree':
        return x.den.degree - x.num.degree
    return _content_valuation(v.inner, x.num) - _content_valuation(v.inner, x.den)


def ultrametric_distance(v: 'Valuation', x: 'RatFunc', y: 'RatFunc'):
    """``exp(-v(x - y))`` as an exact sympy expression."""
    k = valuate(v, v.field.sub(x, y))
    if k == oo:
        return Integer(0)
    return exp(-k)


def uniformizer(v: 'Valuation') -> 'RatFunc':
    field = v.field
    if v.kind == 'prime_poly':
        return field.from_poly(v.prime)
    if v.kind == 'degree':
        return field.inv(field.t())
    return field.from_base(uniformizer(v.inner))


def in_valuation_ring(v: 'Valuation', x: 'RatFunc') -> bool:
    return valuate(v, x) >= 0


def residue_field_size(v: 'Valuation') -> 'Optional[int]':
    """Number of elements of the residue field, ``None`` when it is infinite."""
    base = v.field.base
    if v.kind == 'extension' or base.order is None:
        return None
    if v.kind == 'prime_poly':
        return base.order ** v.prime.degree
    return base.order


def matrix_valuation_floor(v: 'Valuation', g: 'Mat'):
    """Smallest valuation of an entry; ``oo`` for the zero matrix."""
    return min((valuate(v, x) for x in g.entries()), default=oo)


def valuation_from_text(field: 'RationalFunctionField', text: str) -> 'Valuation':
    """``mu0`` or ``inf`` for the degree valuation, otherwise a monic irreducible polynomial in the field
    variable."""
    from .core.parse import parse_scalar
    if text.strip().lower() in {'mu0', 'inf', 'infinity'}:
        return degree_valuation(field)
    if not isinstance(field, RationalFunctionField):
        raise MalformedInputError(f'{field} has no transcendental')
    return prime_poly_valuation(field, parse_scalar(text, field))


@dataclass(frozen=True)
class RingDesc:
    """``R = S[t, 1/P_1, ..., 1/P_u]`` built level by level over F_p.

    ``inverted[i]`` holds the monic irreducible polynomials inverted at level ``i`` (polynomials in the ``i``-th
    transcendental over the field below). ``extra`` keeps the extra generators a ring was described with; their
    denominators are already folded into ``inverted``.
    """

    field: 'Field'
    inverted: 'Tuple[Tuple[Poly, ...], ...]'
    extra: 'Tuple[RatFunc, ...]' = ()

    @property
    def levels(self) -> 'List[RationalFunctionField]':
        return field_tower(self.field)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def describe(self) -> dict:
        levels = self.levels
        return {
            'characteristic': self.characteristic,
            'transcendentals': [f.var for f in levels],
            'inverted': [[p.format(f.var) for p in inv] for f, inv in zip(levels, self.inverted)],
            'extra': [self.field.format(x) for x in self.extra],
        }


def _absorb(levels, li: int, x: 'RatFunc', inverted: 'List[List[Poly]]'):
    field = levels[li]
    if li > 0:
        for c in x.num.coeffs + x.den.coeffs:
            _absorb(levels, li - 1, c, inverted)
    d = x.den
    for prime in inverted[li]:
        while True:
            q, r = divmod(d, prime)
            if r.coeffs:
                break
            d = q
    if d.degree < 1:
        return
    if isinstance(field.base, PrimeField):
        for prime, _ in poly_factor(d):
            if prime not in inverted[li]:
                inverted[li].append(prime)
    elif d.degree == 1:
        inverted[li].append(d)
    else:
        raise UnsupportedFieldError(f'cannot invert {d.format(field.var)}: only degree one primes are supported '
                                    f'above the first transcendental')


def make_ring(field: 'Field', inverted: 'Sequence[Iterable[Poly]]' = (), extra: 'Iterable[RatFunc]' = ()) -> 'RingDesc':
    """Validate a ring description and fold the denominators of ``extra`` into the inverted primes."""
    levels = field_tower(field)
    if not levels:
        raise DomainError('a ring needs at least one transcendental')
    if len(levels) > 2:
        raise UnsupportedFieldError('at most two transcendentals are supported')
    if not isinstance(levels[0].base, PrimeField):
        raise UnsupportedFieldError(f'the ground field must be F_p, not {levels[0].base}')
    inverted = [list(level) for level in inverted]
    if len(inverted) > len(levels):
        raise DomainError(f'{len(inverted)} levels of inverted primes for {len(levels)} transcendentals')
    inverted += [[] for _ in range(len(levels) - len(inverted))]
    for level, primes in zip(levels, inverted):
        for prime in primes:
            # validates irreducibility
            prime_poly_valuation(level, prime)
    extra = tuple(extra)
    for x in extra:
        _absorb(levels, len(levels) - 1, x, inverted)
    canonical = tuple(tuple(sorted(set(primes), key=Poly.sort_key)) for primes in inverted)
    return RingDesc(field, canonical, extra)


def in_ring(ring: 'RingDesc', x: 'RatFunc') -> bool:
    levels = ring.levels

    def check(li, y):
        d = y.den
        for prime in ring.inverted[li]:
            while True:
                q, r = divmod(d, prime)
                if r.coeffs:
                    break
                d = q
        if not d.is_one():
            return False
        return li == 0 or all(check(li - 1, c) for c in y.num.coeffs + y.den.coeffs)

    return check(len(levels) - 1, x)


@dataclass(frozen=True)
class ValFamily:
    valuations: 'Tuple[Valuation, ...]'

    def __post_init__(self):
        if not self.valuations:
            raise DomainError('a valuation family cannot be empty')
        field = self.valuations[0].field
        if any(v.field != field for v in self.valuations):
            raise DomainError('valuations in a family must share one field')

    def __iter__(self):
        return iter(self.valuations)

    def __len__(self):
        return len(self.valuations)

    def __getitem__(self, i):
        return self.valuations[i]

    @property
    def field(self) -> 'RationalFunctionField':
        return self.valuations[0].field

    @property
    def names(self) -> 'List[str]':
        return [v.name for v in self.valuations]


def _level_families(ring: 'RingDesc') -> 'List[Tuple[Valuation, ...]]':
    families = []
    for level, primes in zip(ring.levels, ring.inverted):
        lower = families[-1] if families else ()
        fam = [extend_valuation(v, level) for v in lower]
        fam.append(degree_valuation(level))
        fam.extend(prime_poly_valuation(level, p) for p in primes)
        families.append(tuple(fam))
    return families


def build_valuation_family(ring: 'RingDesc') -> 'ValFamily':
    """The valuations controlling ``ring``: extensions from the level below, then the degree valuation, then one
    prime valuation per inverted prime in canonical order."""
    fam = ValFamily(_level_families(ring)[-1])
    log.debug('valuation family: %s', ', '.join(fam.names))
    return fam


def bounded_count(ring: 'RingDesc', m: int) -> int:
    """Closed-form size of the bounded set for one transcendental over F_q."""
    levels = ring.levels
    if len(levels) != 1:
        raise UnsupportedFieldError('closed-form counts are only available for one transcendental')
    if m > 0:
        return 1
    q = levels[0].base.order
    return q ** (-m * (1 + sum(p.degree for p in ring.inverted[0])) + 1)


class _Enumerator:
    def __init__(self, ring: 'RingDesc', cap: int):
        self.ring = ring
        self.levels = ring.levels
        self.families = _level_families(ring)
        self.cap = cap
        self.examined = 0
        self._memo = {}

    def bounded(self, li: int, m: int) -> 'List[RatFunc]':
        if (li, m) not in self._memo:
            self._memo[li, m] = self._bounded(li, m)
        return self._memo[li, m]

    def _bounded(self, li: int, m: int) -> 'List[RatFunc]':
        field = self.levels[li]
        primes = self.ring.inverted[li]
        fam = self.families[li]
        out = {field.zero}
        if m > 0:
            return [field.zero]
        box = [(exps, self._denominator(field, primes, exps)) for exps in product(range(-m + 1), repeat=len(primes))]
        plans = []
        estimate = 0
        for exps, den in box:
            deg_bound = -m + den.degree
            coeffs = self._coefficients(li, m, den)
            plans.append((exps, den, deg_bound, coeffs))
            estimate += len(coeffs) ** (deg_bound + 1)
        self.examined += estimate
        if self.examined > self.cap:
            raise CapExceededError(f'bounded set search needs {self.examined} candidates (cap {self.cap})', self.cap)
        for exps, den, deg_bound, coeffs in plans:
            divisors = [p for p, e in zip(primes, exps) if e]
            for numerator in product(coeffs, repeat=deg_bound + 1):
                a = Poly(field.base, numerator)
                if not a.coeffs:
                    continue
                if any(not (a % p).coeffs for p in divisors):
                    continue
                r = RatFunc(a, den)
                if all(valuate(v, r) >= m for v in fam):
                    out.add(r)
        return sorted(out, key=field.sort_key)

    @staticmethod
    def _denominator(field, primes, exps) -> 'Poly':
        den = Poly.one(field.base)
        for p, e in zip(primes, exps):
            if e:
                den = den * p ** e
        return den

    def _coefficients(self, li, m, den) -> list:
        base = self.levels[li].base
        if li == 0:
            return list(base.elements())
        shift = min(valuate(extend_valuation(v, self.levels[li]), self.levels[li].from_poly(den))
                    for v in self.families[li - 1])
        return self.bounded(li - 1, m + shift)


def enumerate_bounded(ring: 'RingDesc', fam: 'ValFamily', m: int, cap: int = DEFAULT_ELEMENT_CAP) -> 'List[RatFunc]':
    """All elements ``r`` of ``ring`` with ``v(r) >= m`` for every ``v`` in ``fam``, sorted canonically.

    ``fam`` must be the family :func:`build_valuation_family` gives for ``ring``.
    """
    expected = build_valuation_family(ring)
    if fam != expected:
        raise DomainError('valuation family does not belong to this ring')
    enumerator = _Enumerator(ring, cap)
    result = enumerator.bounded(len(ring.levels) - 1, m)
    log.debug('bounded set for m=%d has %d elements (%d candidates)', m, len(result), enumerator.examined)
    return result


def ring_of_group(gens: 'Iterable[Mat]') -> 'RingDesc':
    """Smallest ring of this shape containing the entries of the generators and of their inverses."""
    gens = list(gens)
    if not gens:
        raise DomainError('a group needs at least one generator')
    field = gens[0].field
    extra = set()
    for g in gens:
        for h in (g, g.inverse()):
            extra.update(x for x in h.entries() if not x.den.is_one())
    return make_ring(field, (), sorted(extra, key=field.sort_key))

# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

from itertools import product

import pytest
from sympy import Integer, Poly as SymPoly, Symbol, exp, oo

from conftest import mat
from npcgroups.core import Poly, PrimeField, RationalFunctionField, make_tower, parse_scalar
from npcgroups.errors import CapExceededError, DomainError, MalformedInputError
from npcgroups.valuation import (bounded_count, build_valuation_family, degree_valuation, enumerate_bounded,
                                 extend_valuation, in_ring, in_valuation_ring, make_ring, matrix_valuation_floor,
                                 prime_poly_valuation, residue_field_size, ring_of_group, ultrametric_distance,
                                 uniformizer, valuate, valuation_from_text)


def P(p, *coeffs):
    return Poly(PrimeField(p), coeffs)


def random_element(rng, field, degree=3):
    base = field.base
    while True:
        den = Poly(base, [base.random(rng) for _ in range(degree + 1)])
        if den:
            return field.make(Poly(base, [base.random(rng) for _ in range(degree + 1)]), den)


def sympy_poly(p, coeffs):
    return SymPoly(list(reversed(coeffs)) or [0], Symbol('t'), modulus=p)


def multiplicity(a, prime):
    n = 0
    while not a.is_zero and a.rem(prime).is_zero:
        a = a.quo(prime)
        n += 1
    return n


def brute_force(field, p, primes, m):
    """Every element of F_p[t, 1/P_1, ..., 1/P_u] with degree and prime valuations at least ``m``.

    Candidates are ``a / (P_1^e_1 ... P_u^e_u)`` with each ``e_i`` one past what a reduced fraction allows, and
    the valuations are read off sympy polynomials.
    """
    found = set()
    # the degree valuation alone bounds deg a by deg d - m
    for exps in product(range(-m + 2), repeat=len(primes)):
        den = sympy_poly(p, [1])
        for c, e in zip(primes, exps):
            den = den * sympy_poly(p, c) ** e
        for coeffs in product(range(p), repeat=den.degree() - m + 1):
            num = sympy_poly(p, coeffs)
            if not num.is_zero:
                if den.degree() - num.degree() < m:
                    continue
                if any(multiplicity(num, sympy_poly(p, c)) - e < m for c, e in zip(primes, exps)):
                    continue
            denominator = Poly(field.base, [int(c) % p for c in reversed(den.all_coeffs())])
            found.add(field.make(Poly(field.base, coeffs), denominator))
    return found


class TestValuate:
    def test_degree(self, f2t):
        mu0 = degree_valuation(f2t)
        assert valuate(mu0, parse_scalar('t^3+t', f2t)) == -3
        assert valuate(mu0, parse_scalar('1 | t', f2t)) == 1
        assert valuate(mu0, f2t.zero) == oo

    def test_prime(self, f2t):
        nu = prime_poly_valuation(f2t, P(2, 0, 1))
        assert valuate(nu, parse_scalar('t^2 | t+1', f2t)) == 2
        assert valuate(nu, parse_scalar('1 | t', f2t)) == -1
        assert valuate(nu, parse_scalar('t+1', f2t)) == 0

    def test_prime_must_be_irreducible(self, f2t):
        with pytest.raises(DomainError):
            prime_poly_valuation(f2t, P(2, 1, 0, 1))
        with pytest.raises(DomainError):
            prime_poly_valuation(f2t, P(2, 1))

    def test_extension(self):
        outer = make_tower(PrimeField(2), ['s', 'u'])
        inner = degree_valuation(outer.base)
        ext = extend_valuation(inner, outer)
        assert valuate(ext, parse_scalar('s*u + s^2', outer)) == -2
        assert valuate(ext, parse_scalar('s^3', outer)) == -3
        assert valuate(ext, outer.zero) == oo
        assert ext.name == 'ext(mu0[s])'

    def test_extension_is_multiplicative(self, rng):
        outer = make_tower(PrimeField(3), ['s', 'u'])
        ext = extend_valuation(prime_poly_valuation(outer.base, P(3, 1, 1)), outer)
        for _ in range(200):
            x = outer.from_poly(Poly(outer.base, [random_element(rng, outer.base, 1) for _ in range(2)]))
            y = outer.from_poly(Poly(outer.base, [random_element(rng, outer.base, 1) for _ in range(2)]))
            if outer.is_zero(x) or outer.is_zero(y):
                continue
            assert valuate(ext, outer.mul(x, y)) == valuate(ext, x) + valuate(ext, y)

    @pytest.mark.parametrize('prime', [None, (0, 1), (1, 1), (2, 1, 1)])
    def test_axioms(self, f3t, rng, prime):
        v = degree_valuation(f3t) if prime is None else prime_poly_valuation(f3t, P(3, *prime))
        for _ in range(1000):
            x, y = random_element(rng, f3t), random_element(rng, f3t)
            if f3t.is_zero(x) or f3t.is_zero(y):
                continue
            assert valuate(v, f3t.mul(x, y)) == valuate(v, x) + valuate(v, y)
            assert valuate(v, f3t.add(x, y)) >= min(valuate(v, x), valuate(v, y))

    def test_strong_triangle(self, f2t, rng):
        v = prime_poly_valuation(f2t, P(2, 1, 1))
        for _ in range(200):
            x, y, z = (random_element(rng, f2t) for _ in range(3))
            dxz = ultrametric_distance(v, x, z)
            assert bool(dxz <= ultrametric_distance(v, x, y)) or bool(dxz <= ultrametric_distance(v, y, z))

    def test_distance_values(self, f2t):
        v = prime_poly_valuation(f2t, P(2, 0, 1))
        x = parse_scalar('t^2', f2t)
        assert ultrametric_distance(v, x, f2t.zero) == exp(-2)
        assert ultrametric_distance(v, x, x) == Integer(0)

    def test_local_data(self, f2t):
        nu = valuation_from_text(f2t, 't^2+t+1')
        assert residue_field_size(nu) == 4
        assert residue_field_size(valuation_from_text(f2t, 'mu0')) == 2
        assert valuate(nu, uniformizer(nu)) == 1
        mu0 = degree_valuation(f2t)
        assert valuate(mu0, uniformizer(mu0)) == 1

    def test_valuation_ring(self, f2t):
        nu = prime_poly_valuation(f2t, P(2, 0, 1))
        mu0 = degree_valuation(f2t)
        assert in_valuation_ring(nu, parse_scalar('t^2 | t+1', f2t))
        assert not in_valuation_ring(nu, parse_scalar('1 | t', f2t))
        assert in_valuation_ring(nu, f2t.zero)
        assert in_valuation_ring(mu0, parse_scalar('1 | t', f2t))
        assert in_valuation_ring(mu0, parse_scalar('t | t+1', f2t))
        assert not in_valuation_ring(mu0, parse_scalar('t', f2t))

    def test_from_text(self, f2t):
        assert valuation_from_text(f2t, 'inf').kind == 'degree'
        assert valuation_from_text(f2t, 't').name == 'nu[t]'
        with pytest.raises(MalformedInputError):
            valuation_from_text(f2t, 'x+1')

    def test_matrix_floor(self, f2t, rng):
        nu = prime_poly_valuation(f2t, P(2, 0, 1))
        assert matrix_valuation_floor(nu, mat(f2t, [['1', '0'], ['0', '1']])) == 0
        assert matrix_valuation_floor(nu, mat(f2t, [['t', '0'], ['0', '1 | t']])) == -1
        assert matrix_valuation_floor(nu, mat(f2t, [['0', '0'], ['0', '0']])) == oo
        for _ in range(30):
            g = mat(f2t, [['0', '0'], ['0', '0']])
            while g.is_zero():
                g = g.map(f2t, lambda _: random_element(rng, f2t, 2))
            gg = g @ g
            if not gg.is_zero():
                assert matrix_valuation_floor(nu, gg) >= 2 * matrix_valuation_floor(nu, g)


class TestRings:
    def test_families(self, f2t, f3t):
        assert build_valuation_family(make_ring(f2t)).names == ['mu0[t]']
        assert build_valuation_family(make_ring(f2t, [[P(2, 0, 1)]])).names == ['mu0[t]', 'nu[t]']
        ring = make_ring(f3t, [[P(3, 1, 1), P(3, 0, 1)]])
        assert build_valuation_family(ring).names == ['mu0[t]', 'nu[t]', 'nu[1+t]']

    def test_two_levels(self):
        field = make_tower(PrimeField(2), ['s', 'u'])
        ring = make_ring(field, [[P(2, 0, 1)], []])
        assert build_valuation_family(ring).names == ['ext(mu0[s])', 'ext(nu[s])', 'mu0[u]']

    def test_extra_generators(self, f2t):
        ring = make_ring(f2t, (), [parse_scalar('1 | t^2+t', f2t)])
        assert ring.inverted == ((P(2, 0, 1), P(2, 1, 1)),)
        assert in_ring(ring, parse_scalar('t^3 | t+1', f2t))
        assert not in_ring(ring, parse_scalar('1 | t^2+t+1', f2t))

    def test_rejects_reducible_prime(self, f2t):
        with pytest.raises(DomainError):
            make_ring(f2t, [[P(2, 1, 0, 1)]])

    def test_ring_of_group(self, f2t):
        d = mat(f2t, [['t', '0'], ['0', '1 | t']])
        u = mat(f2t, [['1', '1'], ['0', '1']])
        ring = ring_of_group([d, u])
        assert ring.describe() == {'characteristic': 2, 'transcendentals': ['t'], 'inverted': [['t']],
                                   'extra': ['1 | t']}


class TestEnumerateBounded:
    def test_polynomial_ring(self, f2t):
        ring = make_ring(f2t)
        found = enumerate_bounded(ring, build_valuation_family(ring), -1)
        assert [f2t.format(x) for x in found] == ['0', '1', 't', '1+t']

    def test_laurent_ring(self, f2t):
        ring = make_ring(f2t, [[P(2, 0, 1)]])
        found = enumerate_bounded(ring, build_valuation_family(ring), -1)
        assert len(found) == 8
        assert parse_scalar('1 | t', f2t) in found
        assert parse_scalar('t^2+1 | t', f2t) in found

    def test_only_zero(self, f2t):
        ring = make_ring(f2t, [[P(2, 0, 1)]])
        assert enumerate_bounded(ring, build_valuation_family(ring), 1) == [f2t.zero]

    @pytest.mark.parametrize('p,primes,ms', [
        (2, [], (-1, -2, -3)),
        (2, [(0, 1)], (-1, -2, -3)),
        (2, [(0, 1), (1, 1, 1)], (-1, -2)),
        (3, [], (-1, -2, -3)),
        (3, [(0, 1)], (-1, -2)),
        (3, [(0, 1), (1, 1)], (-1, -2)),
    ])
    def test_matches_brute_force(self, p, primes, ms):
        field = RationalFunctionField(PrimeField(p), 't')
        ring = make_ring(field, [[P(p, *c) for c in primes]])
        fam = build_valuation_family(ring)
        for m in ms:
            found = enumerate_bounded(ring, fam, m)
            assert len(found) == len(set(found))
            assert set(found) == brute_force(field, p, primes, m)
            assert len(found) == bounded_count(ring, m)

    def test_monotone(self, f3t):
        ring = make_ring(f3t, [[P(3, 0, 1)]])
        fam = build_valuation_family(ring)
        previous = set()
        for m in (1, 0, -1, -2):
            found = set(enumerate_bounded(ring, fam, m))
            assert previous <= found
            previous = found

    def test_two_transcendentals(self):
        field = make_tower(PrimeField(2), ['s', 'u'])
        ring = make_ring(field)
        fam = build_valuation_family(ring)
        assert len(enumerate_bounded(ring, fam, 0)) == 2
        found = enumerate_bounded(ring, fam, -1)
        assert len(found) == 16
        assert all(valuate(v, x) >= -1 for v in fam for x in found)

    def test_cap(self, f2t):
        ring = make_ring(f2t, [[P(2, 0, 1)]])
        with pytest.raises(CapExceededError):
            enumerate_bounded(ring, build_valuation_family(ring), -3, cap=100)

    def test_wrong_family(self, f2t):
        ring = make_ring(f2t, [[P(2, 0, 1)]])
        with pytest.raises(DomainError):
            enumerate_bounded(ring, build_valuation_family(make_ring(f2t)), -1)

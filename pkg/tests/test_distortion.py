# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

from fractions import Fraction

import pytest

from conftest import mat
from npcgroups.core import PrimeField
from npcgroups.distortion import (EXCEEDS_CAP, AbelianEmbedding, MatGroup, WordMetric, abelian_distortion,
                                  cayley_ball, estimate_tau, lattice_box, translation_consistency,
                                  uniform_lower_bound_scan, word_length, znorm_check)
from npcgroups.errors import CapExceededError, DomainError, MalformedInputError, UsageError
from npcgroups.fixtures import fixture_abelian_basis, fixtures, get_fixture
from npcgroups.valuation import valuation_from_text


@pytest.fixture(scope='module')
def heisenberg():
    group = get_fixture('heisenberg')
    return group, WordMetric(group)


@pytest.fixture(scope='module')
def free_pair():
    group = get_fixture('free_pair')
    return group, WordMetric(group)


@pytest.fixture
def finite_f3():
    f3 = PrimeField(3)
    return MatGroup((mat(f3, [['1', '1'], ['0', '1']]),), ('u',))


class TestGroups:
    def test_parse_word(self, heisenberg):
        group, _ = heisenberg
        assert group.parse_word('x y^-1 [x,y]') == [0, 3, 0, 1, 2, 3]
        assert group.parse_word('x^2*y') == [0, 0, 1]
        assert group.parse_word('') == []
        assert group.parse_word('1') == []
        assert group.element('x x^-1').is_identity()

    @pytest.mark.parametrize('word', ['z', 'x^', '[x]', 'x y?'])
    def test_bad_words(self, heisenberg, word):
        group, _ = heisenberg
        with pytest.raises(MalformedInputError):
            group.parse_word(word)

    def test_generator_checks(self, qq):
        with pytest.raises(DomainError):
            MatGroup((mat(qq, [['1', '1'], ['1', '1']]),))
        with pytest.raises(DomainError):
            MatGroup((mat(qq, [['1', '1'], ['0', '1']]), mat(qq, [['1', '0', '0'], ['0', '1', '0'], ['0', '0', '1']])))
        with pytest.raises(DomainError):
            MatGroup((mat(qq, [['2']]), mat(qq, [['3']])), ('a', 'a'))
        assert MatGroup((mat(qq, [['2']]),)).names == ('g0',)

    def test_fixtures(self):
        for name in fixtures:
            group = get_fixture(name)
            assert group.name == name
            emb = AbelianEmbedding(group, tuple(fixture_abelian_basis(name)))
            assert emb.rank >= 1
        assert get_fixture('bs').name == 'baumslag_solitar'
        with pytest.raises(UsageError):
            get_fixture('nope')


class TestWordLength:
    def test_identity(self, heisenberg):
        group, metric = heisenberg
        assert word_length(group, group.identity(), 0, metric) == 0

    def test_commutator(self, heisenberg):
        group, metric = heisenberg
        assert word_length(group, group.element('[x,y]'), 4, metric) == 4
        assert word_length(group, group.element('[x,y]'), 3, metric) is EXCEEDS_CAP

    def test_symmetric_and_subadditive(self, heisenberg):
        group, metric = heisenberg
        ball = metric.ball(2)
        for g in ball:
            assert metric.length(g.inverse(), 10) == metric.length(g, 10)
            for h in ball:
                assert metric.length(g @ h, 10) <= metric.length(g, 10) + metric.length(h, 10)

    def test_baumslag_solitar(self):
        group = get_fixture('baumslag_solitar')
        a4 = group.element('a^4')
        assert a4 == group.element('t^2 a t^-2')
        assert word_length(group, a4, 5) <= 5

    def test_spheres(self, free_pair):
        group, metric = free_pair
        assert metric.sphere_sizes(3) == [1, 4, 12, 36]

    def test_exceeds_cap(self, free_pair):
        group, metric = free_pair
        length = word_length(group, group.element('x^5'), 4, metric)
        assert length is EXCEEDS_CAP
        assert str(length) == 'exceeds_cap'

    def test_not_in_group(self, finite_f3):
        metric = WordMetric(finite_f3)
        with pytest.raises(DomainError):
            metric.length(mat(PrimeField(3), [['1', '0'], ['1', '1']]), 10)
        assert metric.complete
        assert len(metric.lengths) == 3

    def test_wrong_algebra(self, free_pair, qq):
        group, metric = free_pair
        with pytest.raises(DomainError):
            metric.length(mat(qq, [['1']]), 3)


class TestTau:
    def test_baumslag_solitar(self):
        group = get_fixture('baumslag_solitar')
        est = estimate_tau(group, group.element('a'), 8, 10)
        assert est.tau_hat <= Fraction(7, 8)
        assert est.tau_hat <= est.samples[0][1]

    def test_heisenberg_center(self, heisenberg):
        group, metric = heisenberg
        est = estimate_tau(group, group.element('[x,y]'), 4, 10, metric)
        assert [l for _, l in est.samples] == [4, 6, 8, 8]
        assert est.tau_hat == 2

    def test_monotone_in_n(self, heisenberg):
        group, metric = heisenberg
        g = group.element('[x,y]')
        values = [estimate_tau(group, g, n, 10, metric).tau_hat for n in range(1, 5)]
        assert values == sorted(values, reverse=True)

    def test_free_generator(self, free_pair):
        group, metric = free_pair
        est = estimate_tau(group, group.element('x'), 4, 6, metric)
        assert est.tau_hat == 1
        assert est.skipped == ()

    def test_skips_long_powers(self, free_pair):
        group, metric = free_pair
        est = estimate_tau(group, group.element('x y'), 4, 5, metric)
        assert est.samples == ((1, 2), (2, 4))
        assert est.skipped == (3, 4)

    def test_bit_limit(self):
        group = get_fixture('baumslag_solitar')
        est = estimate_tau(group, group.element('t'), 8, 10, bit_limit=3)
        assert est.samples == ((1, 1), (2, 2))
        assert est.skipped == tuple(range(3, 9))

    def test_errors(self, free_pair):
        group, metric = free_pair
        with pytest.raises(CapExceededError):
            estimate_tau(group, group.element('x'), 4, 0, metric)
        with pytest.raises(DomainError):
            estimate_tau(group, group.element('x'), 0, 4, metric)


class TestScan:
    def test_free_pair(self, free_pair):
        group, metric = free_pair
        result = uniform_lower_bound_scan(group, 1, 4, 6, metric=metric)
        assert result.tau_hat == 1
        assert result.witness == group.element('x')
        assert result.scanned == 4
        assert result.finite_skipped == 0

    def test_heisenberg(self, heisenberg):
        group, metric = heisenberg
        result = uniform_lower_bound_scan(group, 2, 4, 10, metric=metric)
        assert result.tau_hat == 1
        assert result.witness == group.element('x')

    def test_finite_group(self, finite_f3):
        result = uniform_lower_bound_scan(finite_f3, 1, 4, 4)
        assert result.tau_hat is None
        assert result.witness is None
        assert result.finite_skipped == 2

    def test_radius_above_cap(self, free_pair):
        group, metric = free_pair
        with pytest.raises(DomainError):
            uniform_lower_bound_scan(group, 5, 4, 4, metric=metric)


class TestAbelian:
    def test_lattice_box(self):
        assert lattice_box(1, 2) == [(-2,), (-1,), (1,), (2,)]
        assert len(lattice_box(2, 1)) == 8

    def test_undistorted(self):
        group = get_fixture('diagonal_z2')
        emb = AbelianEmbedding(group, tuple(fixture_abelian_basis('diagonal_z2')))
        table = abelian_distortion(group, emb, 10, 2)
        assert table.k == 1
        assert all(length == norm for _, norm, length in table.rows)

    def test_distorted_center(self, heisenberg):
        group, metric = heisenberg
        emb = AbelianEmbedding(group, tuple(fixture_abelian_basis('heisenberg')))
        table = abelian_distortion(group, emb, 10, 4, metric)
        assert table.k == 2
        assert [length for p, _, length in table.rows if p[0] > 0] == [4, 6, 8, 8]

    def test_non_commuting(self, heisenberg):
        group, _ = heisenberg
        with pytest.raises(DomainError):
            AbelianEmbedding(group, (group.element('x'), group.element('y')))

    def test_not_free(self):
        group = get_fixture('diagonal_z2')
        a = group.element('a')
        emb = AbelianEmbedding(group, (a, a))
        with pytest.raises(DomainError):
            abelian_distortion(group, emb, 10, 1)

    def test_znorm(self):
        group = get_fixture('diagonal_z2')
        emb = AbelianEmbedding(group, tuple(fixture_abelian_basis('diagonal_z2')))
        report = znorm_check(group, emb, lattice_box(2, 1), 4, 10)
        assert report.ok
        assert report.homogeneity_checks > 0
        assert report.homogeneity_tight == report.homogeneity_checks
        assert report.subadditive_checks > 0
        assert report.tau_checks == 8


class TestCayleyBall:
    def test_free_pair_is_a_tree(self, free_pair):
        group, metric = free_pair
        result = cayley_ball(group, 2, metric)
        assert result.sphere_sizes() == [1, 4, 12]
        assert len(result.edges) == 16
        assert result.is_tree()

    def test_abelian_has_cycles(self):
        group = get_fixture('diagonal_z2')
        assert cayley_ball(group, 1).is_tree()
        assert not cayley_ball(group, 2).is_tree()

    def test_single_vertex(self, free_pair):
        group, metric = free_pair
        result = cayley_ball(group, 0, metric)
        assert result.labels() == ['[[1,0],[0,1]]']
        assert result.edges == ()


class TestConsistency:
    def test_tree_sl2(self):
        group = get_fixture('tree_sl2')
        val = valuation_from_text(group.field, 't')
        report = translation_consistency(group, group.element('d'), val, 4, 4)
        assert report.edge_scale == 2
        assert report.translation_length == 2
        assert report.tau_hat == 1
        assert report.consistent

    def test_elliptic(self):
        group = get_fixture('tree_sl2')
        val = valuation_from_text(group.field, 't')
        report = translation_consistency(group, group.element('u'), val, 4, 4)
        assert report.translation_length == 0
        assert report.consistent

    def test_needs_special_linear(self):
        group = get_fixture('lamplighter')
        with pytest.raises(DomainError):
            translation_consistency(group, group.element('s'), valuation_from_text(group.field, 't'), 4, 4)

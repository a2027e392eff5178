# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

import json
from os.path import exists, join

import pytest

from conftest import GOLDEN_DIR, data_path
from npcgroups import confighandler
from npcgroups.main import run


def golden(name: str) -> str:
    with open(join(GOLDEN_DIR, name), 'r', encoding='utf-8') as f:
        return f.read()


def output(capsys, command, *args) -> str:
    assert run(command, list(args)) == 0
    return capsys.readouterr().out


class TestGolden:
    @pytest.mark.parametrize('command,args,name', [
        ('valuate', ['--char', '2', '--m', '-1'], 'valuate_f2_m-1.txt'),
        ('valuate', ['--ring', data_path('f2t.json'), '--m', '-1', '--count'], 'valuate_f2t_count.txt'),
        ('valuate', ['--ring', data_path('f2t_laurent.json'), '--m', '-1', '--count'], 'valuate_f2t_laurent_count.txt'),
        ('valuate', ['--char', '2', '--m', '1'], 'valuate_only_zero.txt'),
        ('valuate', ['--char', '2', '--invert', 't', '--element', 't^3+t'], 'valuate_mu0_cubic.txt'),
        ('valuate', ['--char', '2', '--invert', 't', '--element', '1 | t'], 'valuate_reciprocal.txt'),
        ('valuate', ['--char', '2', '--invert', 't', '--element', 't^2 | t+1'], 'valuate_t_adic_order.txt'),
        ('valuate', ['--ring', data_path('f2su.json'), '--element', 's*u+s^2'], 'valuate_extension_min.txt'),
        ('valuate', ['--ring', data_path('f2t.json'), '--family'], 'family_f2t.txt'),
        ('valuate', ['--ring', data_path('f2t_laurent.json'), '--family'], 'family_f2t_laurent.txt'),
        ('valuate', ['--ring', data_path('f2t_two_primes.json'), '--family'], 'family_two_primes.txt'),
        ('valuate', ['--char', '3', '--invert', 't+1', '--invert', 't', '--family'], 'family_two_primes.txt'),
        ('building', ['ball', '--char', '2', '--radius', '0', '--format', 'dot'], 'building_ball_r0.dot'),
        ('building', ['ball', '--char', '2', '--val', 't', '--radius', '1'], 'building_ball_r1.txt'),
        ('building', ['ball', '--char', '2', '--radius', '2'], 'building_ball_r2.txt'),
        ('building', ['ball', '--char', '2', '--radius', '3'], 'building_ball_r3.txt'),
        ('building', ['classify', '--fixture', 'tree_sl2', '--word', 'd'], 'isometry_diagonal.txt'),
        ('building', ['classify', '--fixture', 'tree_sl2', '--word', 'u'], 'isometry_unipotent.txt'),
        ('building', ['displace', '--fixture', 'lamplighter', '--word', 's'], 'displace_lamplighter.txt'),
        ('building', ['displace', '--fixture', 'tree_sl2', '--word', 'd'], 'displace_tree_sl2.txt'),
        ('classify', ['--matrix', data_path('jordan_f3.json')], 'classify_jordan_f3.txt'),
        ('classify', ['--matrix', data_path('jordan_q.json')], 'classify_jordan_q.txt'),
        ('classify', ['--matrix', data_path('rotation_q.json')], 'classify_rotation_q.txt'),
        ('classify', ['--matrix', data_path('diag_half_q.json')], 'classify_diag_half_q.txt'),
        ('decompose', ['--family', data_path('diag223_family.json')], 'decompose_diag223.txt'),
        ('decompose', ['--family', data_path('refine_family.json')], 'decompose_refine.txt'),
        ('decompose', ['--family', data_path('heisenberg_center_family.json')], 'decompose_heisenberg_center.txt'),
        ('decompose', ['--family', data_path('cube_root_family.json'), '--rational', '--kernel-radius', '2'],
         'kernel_cube_root.txt'),
        ('decompose', ['--family', data_path('heisenberg_center_family.json'), '--kernel-radius', '2'],
         'kernel_heisenberg_center.txt'),
        ('decompose', ['--family', data_path('diag23_family.json'), '--kernel-radius', '2'], 'kernel_diag23.txt'),
        ('split', ['--presentation', data_path('cyclic_index2.json')], 'split_index2.txt'),
        ('split', ['--presentation', data_path('index3.json')], 'split_index3.txt'),
        ('split', ['--presentation', data_path('index6.json')], 'split_index6.txt'),
        ('distortion', ['length', '--fixture', 'bs12', '--word', 'a^4'], 'length_bs12_a4.txt'),
        ('distortion', ['tau', '--fixture', 'z2', '--word', 'a', '--N', '4'], 'tau_z2.txt'),
        ('distortion', ['tau', '--fixture', 'heisenberg', '--word', '[x,y]', '--N', '4'],
         'tau_heisenberg_center.txt'),
        ('distortion', ['tau', '--fixture', 'bs12', '--word', 'a', '--N', '8'], 'tau_bs12.txt'),
        ('distortion', ['scan', '--fixture', 'z2', '--radius', '2', '--N', '4'], 'scan_z2.txt'),
        ('distortion', ['scan', '--fixture', 'heisenberg', '--radius', '2', '--N', '4'], 'scan_heisenberg.txt'),
        ('distortion', ['scan', '--fixture', 'bs12', '--radius', '1', '--N', '8'], 'scan_bs12.txt'),
        ('distortion', ['znorm', '--fixture', 'z2', '--box', '1', '--N', '2'], 'znorm_z2.txt'),
        ('distortion', ['abelian', '--fixture', 'z2', '--box', '1'], 'abelian_z2.txt'),
        ('distortion', ['abelian', '--group', data_path('bs12_group.json'), '--basis', data_path('bs12_basis.json')],
         'abelian_bs12.txt'),
        ('distortion', ['ball', '--fixture', 'z2', '--radius', '2'], 'cayley_z2_r2.txt'),
        ('fixtures', ['show', 'heisenberg'], 'fixtures_show_heisenberg.txt'),
    ])
    def test_matches(self, capsys, command, args, name):
        assert output(capsys, command, *args) == golden(name)

    def test_dot_file(self, capsys, tmp_path):
        path = tmp_path / 'ball.dot'
        text = output(capsys, 'building', 'ball', '--char', '2', '--val', 't', '--radius', '0', '--dot', str(path))
        assert text == 'layers 1\nvertices 1\nedges 0\ntree yes\n'
        assert path.read_text() == golden('building_ball_r0.dot')

        output(capsys, 'building', 'ball', '--char', '2', '--val', 't', '--radius', '1', '--dot', str(path))
        lines = path.read_text().splitlines()
        assert sum(1 for x in lines if x.endswith('";') and ' -- ' not in x) == 4
        assert sum(1 for x in lines if ' -- ' in x) == 3
        assert path.read_text() == output(capsys, 'building', 'ball', '--char', '2', '--radius', '1', '--format', 'dot')

    def test_dot_file_cayley(self, capsys, tmp_path):
        path = tmp_path / 'cayley.dot'
        output(capsys, 'distortion', 'ball', '--fixture', 'f2', '--radius', '1', '--dot', str(path))
        assert path.read_text() == output(capsys, 'distortion', 'ball', '--fixture', 'f2', '--radius', '1', '--format',
                                          'dot')

    def test_dot_file_unwritable(self, capsys, tmp_path):
        path = tmp_path / 'missing' / 'ball.dot'
        assert run('building', ['ball', '--char', '2', '--radius', '0', '--dot', str(path)]) == 1

    def test_dot_counts(self, capsys):
        lines = output(capsys, 'building', 'ball', '--char', '2', '--radius', '1', '--format', 'dot').splitlines()
        assert sum(1 for x in lines if x.endswith('";') and ' -- ' not in x) == 4
        assert sum(1 for x in lines if ' -- ' in x) == 3
        lines = output(capsys, 'distortion', 'ball', '--fixture', 'z2', '--radius', '1', '--format', 'dot').splitlines()
        assert sum(1 for x in lines if x.endswith('";') and ' -- ' not in x) == 5

    def test_deterministic(self, capsys):
        args = ('distortion', 'ball', '--fixture', 'heisenberg', '--radius', '2', '--format', 'json')
        assert output(capsys, *args) == output(capsys, *args)

    def test_aliases(self, capsys):
        first = output(capsys, 'valuate', '--char', '2', '--m', '-1')
        assert output(capsys, 'enumerate', '--char', '2', '--m', '-1') == first


class TestCommands:
    def test_count(self, capsys):
        assert output(capsys, 'valuate', '--char', '2', '--m', '-1', '--count') == '4\n'
        assert output(capsys, 'valuate', '--ring', data_path('f2t.json'), '--m', '-1', '--count') == '4\n'
        assert output(capsys, 'valuate', '--ring', data_path('f2t_laurent.json'), '--m', '-1', '--count') == '8\n'

    def test_count_json(self, capsys):
        data = json.loads(output(capsys, 'valuate', '--char', '2', '--invert', 't', '--m', '-1', '--count',
                                 '--format', 'json'))
        assert data['count'] == 8
        assert data['closed_form'] == 8
        assert data['family'] == ['mu0[t]', 'nu[t]']

    def test_count_csv(self, capsys):
        assert output(capsys, 'valuate', '--char', '2', '--m', '-1', '--count', '--format', 'csv') == 'count\n4\n'

    def test_family(self, capsys):
        assert output(capsys, 'valuate', '--char', '3', '--invert', 't', '--invert', 't+1', '--family') == \
            'mu0[t]\nnu[t]\nnu[1+t]\n'

    def test_element(self, capsys):
        assert output(capsys, 'valuate', '--char', '2', '--invert', 't', '--element', 't^2 | t+1') == \
            'mu0[t] -1\nnu[t] 2\n'

    def test_classify(self, capsys):
        assert output(capsys, 'classify', '--matrix', data_path('jordan_f3.json')) == 'finite_order(3)\n'
        assert output(capsys, 'classify', '--fixture', 'heisenberg', '--word', 'x') == 'infinite_order_unipotent\n'

    def test_isometry(self, capsys):
        assert output(capsys, 'building', 'classify', '--fixture', 'tree_sl2', '--word', 'd') == 'hyperbolic 2\n'
        assert output(capsys, 'building', 'classify', '--fixture', 'tree_sl2', '--word', 'u').startswith('elliptic')

    def test_word_metrics(self, capsys):
        assert output(capsys, 'distortion', 'length', '--fixture', 'heisenberg', '--word', '[x,y]') == '4\n'
        assert output(capsys, 'distortion', 'length', '--fixture', 'heisenberg', '--word', '[x,y]', '--cap',
                      '3') == 'exceeds_cap\n'
        assert output(capsys, 'distortion', 'ball', '--fixture', 'f2', '--radius', '3') == 'spheres 1 4 12 36\n'
        assert output(capsys, 'distortion', 'consistency', '--fixture', 'tree_sl2', '--word', 'd', '--N', '4',
                      '--cap', '4') == 'translation length 2 <= 2 * 1: yes\n'

    def test_scan(self, capsys):
        out = output(capsys, 'distortion', 'scan', '--fixture', 'free_pair', '--radius', '1', '--N', '4', '--cap',
                     '6')
        assert out == 'min tau_hat 1\nwitness [[1,2],[0,1]]\n'

    def test_split(self, capsys):
        out = output(capsys, 'split', '--presentation', data_path('cyclic_index2.json'))
        assert out.splitlines()[0] == 'index 2'

    def test_decompose(self, capsys):
        out = output(capsys, 'decompose', '--fixture', 'diagonal_z2')
        assert out.splitlines()[0] == 'blocks 1 1'
        assert len(out.splitlines()) == 3

    def test_decompose_rational_split(self, capsys):
        out = output(capsys, 'decompose', '--family', data_path('diag23_family.json'), '--rational', '--split')
        lines = out.splitlines()
        assert lines[:2] == ['blocks 1 1', 'theta 2 3']
        assert lines[-1].startswith('index ')

    def test_fixtures_list(self, capsys):
        out = output(capsys, 'fixtures', 'list')
        for name in ('heisenberg', 'baumslag_solitar', 'lamplighter', 'diagonal_z2', 'free_pair', 'tree_sl2'):
            assert f' - {name}: ' in out

    def test_version(self, capsys):
        assert run('--version') == 0
        assert capsys.readouterr().out.startswith('npcgroups v')

    def test_help(self, capsys):
        assert run('valuate', ['--help']) == 0
        assert 'usage' in capsys.readouterr().out


class TestExitCodes:
    @pytest.mark.parametrize('command,args', [
        ('valuate', ['--bogus']),
        ('valuate', ['--char', '2']),
        ('valuate', ['--char', '2', '--element', 't+']),
        ('valuate', ['--char', '2', '--m', '-1', '--format', 'dot']),
        ('classify', ['--matrix', data_path('unknown_key.json')]),
        ('classify', ['--matrix', data_path('future_schema.json')]),
        ('classify', ['--matrix', data_path('missing.json')]),
        ('classify', ['--fixture', 'heisenberg']),
        ('distortion', ['length', '--fixture', 'heisenberg', '--word', 'z']),
        ('fixtures', ['show', 'nope']),
    ])
    def test_usage_and_malformed(self, capsys, command, args):
        assert run(command, args) == 1

    def test_usage_on_stderr(self, capsys):
        assert run('valuate', ['--bogus']) == 1
        captured = capsys.readouterr()
        assert 'usage' in captured.err
        assert captured.out == ''

    def test_negative_kernel_radius(self, capsys):
        assert run('decompose', ['--fixture', 'diagonal_z2', '--kernel-radius', '-1']) == 1

    def test_unknown_command(self, capsys):
        assert run('nope', []) == 1
        assert 'Available commands' in capsys.readouterr().err

    @pytest.mark.parametrize('command,args', [
        ('classify', ['--matrix', data_path('singular_q.json')]),
        ('decompose', ['--fixture', 'heisenberg']),
        ('valuate', ['--char', '4', '--m', '0']),
        ('valuate', ['--char', '2', '--invert', 't^2+1', '--m', '0']),
        ('distortion', ['scan', '--fixture', 'free_pair', '--radius', '5', '--cap', '4']),
    ])
    def test_domain(self, capsys, command, args):
        assert run(command, args) == 2
        assert 'DomainError' in capsys.readouterr().err

    @pytest.mark.parametrize('command,args', [
        ('valuate', ['--char', '2', '--invert', 't', '--m', '-3', '--element-cap', '100']),
        ('building', ['classify', '--matrix', data_path('unipotent_far.json'), '--search-radius', '0']),
    ])
    def test_cap(self, capsys, command, args):
        assert run(command, args) == 3

    @pytest.mark.parametrize('command,args', [
        ('decompose', ['--family', data_path('sqrt2_family.json')]),
        ('distortion', ['consistency', '--fixture', 'heisenberg', '--word', 'x']),
        ('building', ['displace', '--fixture', 'baumslag_solitar', '--word', 'a']),
    ])
    def test_unsupported(self, capsys, command, args):
        assert run(command, args) == 4
        assert 'UnsupportedFieldError' in capsys.readouterr().err


class TestConfig:
    def test_defaults(self, capsys):
        out = output(capsys, 'config')
        assert '[caps]' in out
        assert 'bfs_radius = 10' in out
        assert 'seed = 5132355' in out

    def test_seed_env(self, capsys, monkeypatch):
        monkeypatch.setenv(confighandler.SEED_ENV, '7')
        assert 'seed = 7' in output(capsys, 'config')
        assert 'seed = 11' in output(capsys, 'config', '--seed', '11')

    def test_bad_seed_env(self, capsys, monkeypatch):
        monkeypatch.setenv(confighandler.SEED_ENV, 'seven')
        assert run('config', []) == 1

    def test_caps_from_config(self, capsys):
        confighandler.parser.set('caps', 'bfs_radius', '3')
        assert output(capsys, 'distortion', 'length', '--fixture', 'heisenberg', '--word', '[x,y]') == \
            'exceeds_cap\n'

    def test_save(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setattr(confighandler, 'config_dir', str(tmp_path))
        monkeypatch.setattr(confighandler, 'config_file', str(tmp_path / 'config.ini'))
        output(capsys, 'config', '--save')
        assert exists(tmp_path / 'config.ini')
        assert '[random]' in (tmp_path / 'config.ini').read_text()

    def test_seed_does_not_change_results(self, capsys):
        first = output(capsys, 'decompose', '--fixture', 'diagonal_z2', '--format', 'json')
        assert output(capsys, 'decompose', '--fixture', 'diagonal_z2', '--format', 'json', '--seed', '99') == first

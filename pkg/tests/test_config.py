import os

import pytest

from tanner_lcc.common.config import ConfigError, RunConfig, load_config

BASE = """[field]
p = 2
ell = 2

[geometry]
m = 2

[graph]
n = 100
d = 16
"""


def test_defaults():
    config = RunConfig.from_string(BASE)
    assert config.geometry == {'kind': 'affine', 'h': 4, 'm': 2, 'r': 1, 'beta': 0.05, 'epsilon_prime': None}
    assert config.params['gamma'] == 0.25
    assert config.params['L1'] is None
    assert config.experiment['suites'] == ['success_curve']
    assert config.run == {'seed': 1, 'threads': 1, 'out': 'results'}
    assert config.graph_seed == 1


def test_overrides():
    config = RunConfig.from_string(BASE + '\n[run]\nseed = 4\n').override(seed=9, out='o', threads=3)
    assert config.run == {'seed': 9, 'threads': 3, 'out': 'o'}
    assert config.graph_seed == 9
    assert config.to_dict()['graph']['seed'] == 9
    with pytest.raises(ConfigError):
        config.override(threads=0)


def test_errors_name_the_line():
    text = BASE.replace('p = 2', 'p = 4')
    with pytest.raises(ConfigError) as err:
        RunConfig.from_string(text)
    assert '<string>:2' in str(err.value)
    assert 'prime' in str(err.value)


@pytest.mark.parametrize('extra,match', [
    ('[params]\ngamma = 0.5\n', 'gamma'),
    ('[params]\ngamma = 0.25\nzeta = 0.1\n', 'zeta'),
    ('[params]\nL1 = two\n', 'integer'),
    ('[noise]\nrho = 1.0\n', 'rho'),
    ('[noise]\nmodel = adversarial\n', 'pattern_file'),
    ('[experiment]\nsuites = success_curve, plots\n', 'plots'),
    ('[experiment]\nrho_grid = 0, 1.5\n', 'rho_grid'),
])
def test_invalid_values(extra, match):
    with pytest.raises(ConfigError) as err:
        RunConfig.from_string(BASE + '\n' + extra)
    assert match in str(err.value)


def test_degree_must_match_the_geometry():
    with pytest.raises(ConfigError):
        RunConfig.from_string(BASE.replace('d = 16', 'd = 8'))


def test_parity_geometry():
    text = '[field]\np = 3\n[geometry]\nkind = parity\n[graph]\nn = 10\nd = 4\n'
    config = RunConfig.from_string(text)
    assert config.geometry == {'kind': 'parity'}


def test_missing_file(tmp_path):
    with pytest.raises(IOError):
        load_config(str(tmp_path / 'nope.conf'))


def test_from_file_resolves_patterns(tmp_path):
    path = tmp_path / 'run.conf'
    path.write_text(BASE + '\n[noise]\nmodel = adversarial\npattern_file = pattern.txt\n')
    config = RunConfig.from_file(str(path))
    assert config.noise['pattern_file'] == os.path.join(os.path.realpath(str(tmp_path)), 'pattern.txt')


@pytest.mark.parametrize('p,ok', [(2, True), (5, True), (1, False), (9, False), (15, False)])
def test_field_characteristic_must_be_prime(p, ok):
    text = '[field]\np = {}\n[geometry]\nkind = parity\n[graph]\nn = 10\nd = 4\n'.format(p)
    if ok:
        assert RunConfig.from_string(text).field['p'] == p
    else:
        with pytest.raises(ConfigError):
            RunConfig.from_string(text)

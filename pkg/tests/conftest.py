import numpy as np
import pytest

from tanner_lcc.codes.affine_geometry import build_inner_code, enumerate_flats
from tanner_lcc.codes.smooth_recon import single_parity_inner
from tanner_lcc.codes.tanner_code import TannerCode
from tanner_lcc.graphs.expander_graph import complete_graph, double_cover, random_regular


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope='session')
def ag24():
    """ Lines of AG(2, 4) as an inner code over GF(2): d = 16, q0 = 3. """
    return build_inner_code(enumerate_flats(4, 2), 2)


@pytest.fixture(scope='session')
def parity_k4():
    """ Single parity over GF(2) on the double cover of K4: N = 12. """
    graph = complete_graph(4)
    graph.second_eigenvalue()
    code = TannerCode(single_parity_inner(2, 3), double_cover(graph))
    code.compute_dimension_and_generator()
    return code


@pytest.fixture(scope='session')
def parity_gf3():
    """ Single parity over GF(3) on a random 4-regular graph on 10 vertices: N = 40. """
    graph = random_regular(10, 4, 7)
    graph.second_eigenvalue()
    code = TannerCode(single_parity_inner(3, 4), double_cover(graph))
    code.compute_dimension_and_generator()
    return code


@pytest.fixture(scope='session')
def ag24_code(ag24):
    """ AG(2, 4) inner code on a random 16-regular graph on 40 vertices: N = 640. """
    graph = random_regular(40, 16, 11)
    graph.second_eigenvalue()
    code = TannerCode(ag24, double_cover(graph))
    code.compute_dimension_and_generator()
    return code


SMALL_CONFIG = """
[field]
p = 2

[geometry]
kind = parity

[graph]
n = 10
d = 4

[params]
gamma = 0.25
L1 = 2
L2 = 2

[noise]
rho = 0.05

[experiment]
suites = success_curve, smoothness, spectrum, rate, proposition, equivariance
trials = 20
rho_grid = 0, 0.05
codeword = random
walk_trials = 2000
walk_length = 10
walk_rho = 0.05
smoothness_trials = 2000
equivariance_trials = 10

[run]
seed = 5
out = {out}
"""


@pytest.fixture
def small_config_file(tmp_path):
    path = tmp_path / 'small.conf'
    path.write_text(SMALL_CONFIG.format(out=str(tmp_path / 'results')))
    return str(path)

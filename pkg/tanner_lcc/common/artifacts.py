""" Build the inner code, graph and Tanner code a run configuration describes,
and save or reload them as JSON artifacts with content hashes.
"""
import json
import logging
import os

from tanner_lcc.codes.affine_geometry import build_inner_code, dimension_bound_check, enumerate_flats
from tanner_lcc.codes.smooth_recon import single_parity_inner
from tanner_lcc.codes.tanner_code import DIMENSION_LIMIT, TannerCode
from tanner_lcc.common import seeds, serialize
from tanner_lcc.graphs.expander_graph import RegularGraph, double_cover, random_regular
from tanner_lcc.local_corrector.corrector import plan_parameters

LOG = logging.getLogger(__name__)

ARTIFACTS = ('inner.json', 'graph.json', 'code.json', 'plan.json')


def build_inner(config):
    """ InnerCode for the [field] and [geometry] sections.
    """
    p = config.field['p']
    if config.geometry['kind'] == 'parity':
        return single_parity_inner(p, config.graph['d'])
    geometry = enumerate_flats(config.geometry['h'], config.geometry['m'], config.geometry['r'])
    inner = build_inner_code(geometry, p)
    dimension_bound_check(geometry, inner.code.k0, config.geometry['beta'], config.geometry['epsilon_prime'])
    return inner


def build_graph(config):
    """ Random d-regular graph on the graph seed, with lambda measured.
    """
    graph = random_regular(config.graph['n'], config.graph['d'],
                           seeds.substream(config.graph_seed, seeds.GRAPH))
    lam = graph.second_eigenvalue()
    LOG.info('Graph n = {}, d = {}: lambda = {:.6f}'.format(graph.n, graph.d, lam))
    return graph


def build_code(inner, graph, dimension=True):
    """ TannerCode on the double cover of graph. The dimension and generator
    are computed when N is small enough for dense elimination.
    """
    code = TannerCode(inner, double_cover(graph))
    if dimension:
        if code.N <= DIMENSION_LIMIT:
            code.compute_dimension_and_generator()
        else:
            LOG.info('N = {} exceeds {}; skipping the dimension computation'.format(code.N, DIMENSION_LIMIT))
    return code


def make_plan(config, code, rho=None):
    params = config.params
    return plan_parameters(config.noise['rho'] if rho is None else rho,
                           code.inner.padded.q0, code.d, code.cover.base.lam, code.n,
                           gamma=params['gamma'], zeta=params['zeta'], C=params['C'],
                           L1=params['L1'], L2=params['L2'], method=params['method'])


def build_all(config, dimension=True):
    """ :returns: (inner, graph, code, plan)
    """
    inner = build_inner(config)
    graph = build_graph(config)
    code = build_code(inner, graph, dimension)
    return inner, graph, code, make_plan(config, code)


def save_artifacts(run, inner, graph, code, plan):
    """ Write the four artifacts through a BaseRun and return their content hashes.
    """
    objects = {
        'inner.json': inner.to_dict(),
        'graph.json': graph.to_dict(),
        'code.json': code.to_dict(),
        'plan.json': plan.to_dict(),
    }
    hashes = {}
    for name in ARTIFACTS:
        run.write_json(name, objects[name])
        hashes[name] = serialize.content_hash(objects[name])
    return hashes


def load_artifacts(config, out_dir, dimension=True):
    """ Rebuild (inner, graph, code, plan) from a build directory.

    The graph comes from graph.json; the inner code is rebuilt from the
    configuration and must hash to the saved inner.json.

    :raises IOError: when an artifact is missing
    :raises ValueError: when the saved inner code does not match the configuration
    """
    loaded = {}
    for name in ('inner.json', 'graph.json'):
        path = os.path.join(out_dir, name)
        if not os.path.exists(path):
            raise IOError('{} not found; run the build command first'.format(path))
        with open(path) as fh:
            loaded[name] = json.load(fh)
    inner = build_inner(config)
    if serialize.content_hash(inner.to_dict()) != serialize.content_hash(loaded['inner.json']):
        raise ValueError('inner.json in {} does not match the configured inner code'.format(out_dir))
    graph = RegularGraph.from_dict(loaded['graph.json'])
    if graph.lam is None:
        graph.second_eigenvalue()
    code = build_code(inner, graph, dimension)
    return inner, graph, code, make_plan(config, code)

""" Command line interface: build, encode, corrupt, correct, experiment,
walkstats and spectrum-check.

Exit codes: 0 on success, 1 on configuration or input errors, 2 when a
suite fails its pass criterion.
"""
import argparse
import os
import sys

from tanner_lcc.common import BaseRun, SizeGuardError, artifacts, seeds
from tanner_lcc.common.config import ConfigError, RunConfig
from tanner_lcc.experiment import suites
from tanner_lcc.experiment.noise import NoiseModel, corrupt
from tanner_lcc.experiment.report import ExperimentReport
from tanner_lcc.local_corrector.corrector import correct
from tanner_lcc.log import loggers

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2


class CommandRun(BaseRun):
    """ Output handling for the single-step commands.
    """


def cmd_build(config, LOG, args):
    run = CommandRun(config, LOG, os.getcwd())
    inner, graph, code, plan = artifacts.build_all(config)
    hashes = artifacts.save_artifacts(run, inner, graph, code, plan)
    run.write_json('manifest.json', run.manifest(
        seeds={'root': config.run['seed'], 'graph': config.graph_seed},
        graph_fingerprint=graph.fingerprint(), artifacts=hashes))
    return EXIT_OK


def _load(config, LOG, dimension=True):
    run = CommandRun(config, LOG, os.getcwd())
    return run, artifacts.load_artifacts(config, run.out_dir, dimension)


def cmd_encode(config, LOG, args):
    run, (inner, graph, code, plan) = _load(config, LOG)
    if args.zero:
        word = code.zero_codeword()
    else:
        if code.generator is None:
            raise SizeGuardError('N = {} is too large to encode random messages; use --zero'.format(code.N))
        word = code.random_codeword(seeds.substream(config.run['seed'], seeds.CODEWORD))
    path = args.output or run.output_path('codeword.bin')
    code.write_word(path, word)
    LOG.info('Wrote codeword to {}'.format(path))
    return EXIT_OK


def cmd_corrupt(config, LOG, args):
    run, (inner, graph, code, plan) = _load(config, LOG, dimension=False)
    word = code.read_word(args.input)
    model = NoiseModel.from_config(config.noise)
    received, positions = corrupt(word, model, seeds.substream(config.run['seed'], seeds.CORRUPT), code.p)
    path = args.output or run.output_path('corrupted.bin')
    code.write_word(path, received)
    run.write_json('corruption.json', {'noise': model.to_dict(), 'positions': positions,
                                       'fraction': len(positions) / float(code.N)})
    return EXIT_OK


def cmd_correct(config, LOG, args):
    run, (inner, graph, code, plan) = _load(config, LOG, dimension=False)
    if not 0 <= args.position < code.N:
        raise ValueError('position {} out of range [0, {})'.format(args.position, code.N))
    word = code.read_word(args.input)
    truth = None
    if args.reference:
        truth = int(code.read_word(args.reference)[args.position])
    rng = seeds.substream(config.run['seed'], seeds.CORRECT, args.position)
    result = correct(code, word, args.position, plan.params, rng, truth=truth, warnings=plan.warnings)
    run.write_json('correct_{}.json'.format(args.position), result.to_dict())
    LOG.info('Position {}: returned {}{}'.format(
        args.position, result.symbol, '' if truth is None else ' (truth {})'.format(truth)))
    print(result.symbol)
    return EXIT_OK


def cmd_experiment(config, LOG, args):
    report = ExperimentReport(config, LOG, os.getcwd())
    return report.run()


def cmd_walkstats(config, LOG, args):
    run = CommandRun(config, LOG, os.getcwd())
    graph = artifacts.build_graph(config)
    exp = config.experiment
    result = suites.walk_tail_suite(graph, exp['walk_rho'], exp['walk_gamma'], exp['walk_length'],
                                    exp['walk_trials'], config.run['seed'], exp['walk_start'])
    for fn, (header, rows) in result.tables.items():
        run.write_csv(fn, header, rows)
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_spectrum_check(config, LOG, args):
    run = CommandRun(config, LOG, os.getcwd())
    graph = artifacts.build_graph(config)
    result = suites.spectrum_suite(graph, config.run['seed'], config.params['L1'])
    for fn, (header, rows) in result.tables.items():
        run.write_csv(fn, header, rows)
    return EXIT_OK if result.passed else EXIT_FAILED


COMMANDS = {
    'build': cmd_build,
    'encode': cmd_encode,
    'corrupt': cmd_corrupt,
    'correct': cmd_correct,
    'experiment': cmd_experiment,
    'walkstats': cmd_walkstats,
    'spectrum-check': cmd_spectrum_check,
}


def make_parser():
    parser = argparse.ArgumentParser(prog='tanner_lcc',
                                     description='Tanner codes on expander double covers and their local corrector')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', required=True, help='Run configuration file')
    common.add_argument('--seed', type=int, help='Root seed, overrides [run] seed')
    common.add_argument('--out', help='Output directory, overrides [run] out')
    common.add_argument('--threads', type=int, help='Worker threads, overrides [run] threads')
    common.add_argument('-d', '--debug', action='store_true', help='Log at DEBUG level')

    sub = parser.add_subparsers(dest='command')
    sub.required = True
    sub.add_parser('build', parents=[common], help='Build the inner code, graph and Tanner code')
    p_enc = sub.add_parser('encode', parents=[common], help='Write a codeword file')
    p_enc.add_argument('--zero', action='store_true', help='Write the zero codeword')
    p_enc.add_argument('-o', '--output', help='Codeword file to write')
    p_cor = sub.add_parser('corrupt', parents=[common], help='Corrupt a codeword file with the [noise] model')
    p_cor.add_argument('-i', '--input', required=True, help='Codeword file to read')
    p_cor.add_argument('-o', '--output', help='Corrupted file to write')
    p_fix = sub.add_parser('correct', parents=[common], help='Locally correct one position of a word file')
    p_fix.add_argument('-i', '--input', required=True, help='Word file to read')
    p_fix.add_argument('-p', '--position', type=int, required=True, help='Edge index to correct')
    p_fix.add_argument('-r', '--reference', help='Uncorrupted codeword file, records the truth')
    sub.add_parser('experiment', parents=[common], help='Run the configured experiment suites')
    sub.add_parser('walkstats', parents=[common], help='Random walk tail statistics')
    sub.add_parser('spectrum-check', parents=[common], help='Edge-walk operator and leaf distribution checks')
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    LOG = loggers.minimal_logger('tanner_lcc', to_file=False, debug=args.debug)
    try:
        config = RunConfig.from_file(args.config).override(args.seed, args.out, args.threads)
        if config.log['log_dir']:
            LOG = loggers.minimal_logger('tanner_lcc', config_file=args.config, debug=args.debug)
        return COMMANDS[args.command](config, LOG, args)
    except (ConfigError, ValueError, IOError, RuntimeError) as e:
        LOG.error(str(e))
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())

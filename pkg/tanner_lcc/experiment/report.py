""" Class for running the experiment suites and writing the experiment report
"""
import os

import jinja2

from tanner_lcc.common import BaseRun, artifacts, seeds, serialize
from tanner_lcc.experiment import suites
from tanner_lcc.experiment.noise import NoiseModel
from tanner_lcc.local_corrector.corrector import CorrectionParams


class ExperimentReport(BaseRun):

    ## initialize class and assign basic variables
    def __init__(self, config, LOG, working_dir, **kwargs):

        # Initialise the parent class
        super(ExperimentReport, self).__init__(config, LOG, working_dir, **kwargs)

        self.report_fn = 'experiment_report'
        self.results = []
        self.hashes = {}

        # Build everything the suites need
        self.LOG.info('Building inner code, graph and Tanner code...')
        self.inner, self.graph, self.code, self.plan = artifacts.build_all(config)
        self.params = self.plan.params
        self.LOG.info('...built. L1 = {}, L2 = {}, q0 = {}'.format(
            self.params.L1, self.params.L2, self.inner.padded.q0))


    def run(self):
        """ Run every configured suite and write CSVs, manifest and report.

        :returns: 0 when every suite with a pass criterion passed, else 2
        """
        self.hashes = artifacts.save_artifacts(self, self.inner, self.graph, self.code, self.plan)
        exp = self.config.experiment
        root = self.config.run['seed']

        for name in exp['suites']:
            self.LOG.info('Running suite {}'.format(name))
            result = getattr(self, 'suite_{}'.format(name))(exp, root)
            self.results.append(result)
            for fn, (header, rows) in sorted(result.tables.items()):
                self.write_csv(fn, header, rows)
            if 'records' in result.details:
                self.write_json('trials.json', result.details.pop('records'))
            self.LOG.info('Suite {}: {}'.format(name, self.verdict(result)))

        self.write_json('manifest.json', self.build_manifest())
        self.write_report()
        return 0 if self.check_results() else 2


    def suite_success_curve(self, exp, root):
        noise = None
        if self.config.noise['model'] == 'adversarial':
            noise = NoiseModel.from_config(self.config.noise)
        return suites.success_curve(self.code, self.params, exp['rho_grid'], exp['trials'], root,
                                    codeword=exp['codeword'], positions=exp['positions'],
                                    threads=self.config.run['threads'], noise=noise)

    def suite_walk_tail(self, exp, root):
        return suites.walk_tail_suite(self.graph, exp['walk_rho'], exp['walk_gamma'], exp['walk_length'],
                                      exp['walk_trials'], root, exp['walk_start'])

    def suite_smoothness(self, exp, root):
        return suites.smoothness_suite(self.inner, exp['smoothness_trials'], root)

    def suite_spectrum(self, exp, root):
        return suites.spectrum_suite(self.graph, root, self.params.L1)

    def suite_rate(self, exp, root):
        return suites.rate_suite(self.inner, root)

    def suite_proposition(self, exp, root):
        return suites.proposition_suite(self.code, min(self.params.L2, 3), 100, root)

    def suite_equivariance(self, exp, root):
        # Equivariance holds at any depth; shallow trees keep the suite fast
        params = CorrectionParams(self.params.gamma, self.params.zeta, min(self.params.L1, 2),
                                  min(self.params.L2, 2), self.params.C, self.params.method)
        return suites.equivariance_suite(self.code, params, exp['equivariance_trials'], root)


    def check_results(self):
        failed = [r.name for r in self.results if r.passed is False]
        for name in failed:
            self.LOG.error('Suite {} failed'.format(name))
        return not failed


    @staticmethod
    def verdict(result):
        if result.passed is None:
            return 'n/a'
        return 'PASS' if result.passed else 'FAIL'


    def build_manifest(self):
        return self.manifest(
            version=self.version(),
            seeds={'root': self.config.run['seed'], 'graph': self.config.graph_seed,
                   'streams': seeds.STREAMS},
            graph_fingerprint=self.graph.fingerprint(),
            artifacts=self.hashes,
            plan=self.plan.to_dict(),
            suites=[r.to_dict() for r in self.results],
        )


    @staticmethod
    def version():
        from tanner_lcc import __version__
        return __version__


    def write_report(self):
        env = jinja2.Environment(loader=jinja2.PackageLoader('tanner_lcc', 'templates'))
        template = env.get_template('experiment_report.md')
        rendered = self.parse_template(
            template, self.report_fn + '.md',
            run=self.config.run,
            inner=self.inner.to_dict(),
            code=self.code.to_dict(),
            plan=self.plan.to_dict(),
            results=[dict(r.to_dict(), verdict=self.verdict(r),
                          tables=sorted(r.tables)) for r in self.results],
            fmt=serialize.format_value,
        )
        for path, md in rendered.items():
            with open(path, 'w') as fh:
                fh.write(md)
            self.outputs[os.path.basename(path)] = path
            self.LOG.info('Wrote {}'.format(path))

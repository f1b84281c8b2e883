import json
import logging
import os

from tanner_lcc.common.config import RunConfig
from tanner_lcc.experiment.report import ExperimentReport


def test_experiment_report(small_config_file, tmp_path):
    config = RunConfig.from_file(small_config_file)
    report = ExperimentReport(config, logging.getLogger('tanner_lcc.test'), str(tmp_path))
    assert report.run() == 0
    assert report.check_results()

    with open(os.path.join(report.out_dir, 'experiment_report.md')) as fh:
        md = fh.read()
    assert md.startswith('---\ntitle: Tanner code local correction')
    assert '| success_curve | **PASS** |' in md
    assert '**FAIL**' not in md

    with open(os.path.join(report.out_dir, 'manifest.json')) as fh:
        manifest = json.load(fh)
    assert manifest['seeds']['root'] == 5
    assert manifest['seeds']['streams']['success_trial'] == 4
    assert set(manifest['artifacts']) == {'inner.json', 'graph.json', 'code.json', 'plan.json'}
    assert [s['name'] for s in manifest['suites']] == config.experiment['suites']


def test_failed_suites_set_the_exit_code(small_config_file, tmp_path):
    config = RunConfig.from_file(small_config_file)
    report = ExperimentReport(config, logging.getLogger('tanner_lcc.test'), str(tmp_path))
    report.results = []
    assert report.check_results()

    class Failed(object):
        name = 'spectrum'
        passed = False
    report.results.append(Failed())
    assert not report.check_results()

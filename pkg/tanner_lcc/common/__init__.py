""" Common module.
Place for code shared by every run type: output handling, manifests and
the size guards used across the code and graph modules.
"""

import csv
import os
from datetime import datetime

from tanner_lcc.common import serialize


class SizeGuardError(ValueError):
    """ A desk-scale limit (enumeration, dense elimination, dense eigensolve) was exceeded.
    """


class BaseRun(object):
    """ Base run object class. Provides the output directory, CSV/JSON
    writers and Markdown template rendering used by all run types.
    """

    def __init__(self, config, LOG, working_dir, **kwargs):
        # Incoming handles
        self.config = config
        self.LOG = LOG
        self.working_dir = working_dir

        # Standalone fields
        self.date_format = "%Y-%m-%d"
        self.creation_date = datetime.now().strftime(self.date_format)
        self.outputs = {}

        self.out_dir = os.path.realpath(os.path.join(working_dir, config.run['out']))
        if not os.path.exists(self.out_dir):
            os.makedirs(self.out_dir)


    def output_path(self, name):
        return os.path.join(self.out_dir, name)


    def write_csv(self, name, header, rows):
        """ Write rows under a fixed header. Floats use a fixed format so
        that reruns produce identical bytes.
        """
        path = self.output_path(name)
        with open(path, 'w', newline='') as fh:
            writer = csv.writer(fh, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([serialize.format_value(row[h]) for h in header])
        self.outputs[name] = path
        self.LOG.info('Wrote {} ({} row{})'.format(path, len(rows), '' if len(rows) == 1 else 's'))
        return path


    def write_json(self, name, obj):
        path = self.output_path(name)
        with open(path, 'w') as fh:
            fh.write(serialize.dumps(obj))
        self.outputs[name] = path
        self.LOG.info('Wrote {}'.format(path))
        return path


    def manifest(self, **extra):
        """ Everything needed to recompute the outputs of this run.
        """
        manifest = {'config': self.config.to_dict()}
        manifest.update(extra)
        return manifest


    def parse_template(self, template, report_fn, **fields):
        """ Render a jinja2 template and return {output basename: markdown}.
        """
        output_bn = os.path.realpath(os.path.join(self.out_dir, report_fn))
        try:
            md = template.render(report_date=self.creation_date, **fields)
        except Exception:
            self.LOG.error('Could not parse the {} template'.format(report_fn))
            raise
        return {output_bn: md}

""" Load, parse and validate configuration files
"""
import configparser
import os
import re

from tanner_lcc.codes.finite_field import is_prime

SUITES = ('success_curve', 'walk_tail', 'smoothness', 'spectrum', 'rate',
          'proposition', 'equivariance')

_SECTION_RE = re.compile(r'^\s*\[([^\]]+)\]')
_KEY_RE = re.compile(r'^\s*([^=:\s#;][^=:]*?)\s*[=:]')
_REQUIRED = object()


class ConfigError(ValueError):
    """ A configuration value failed validation. The message names the line.
    """


def default_config_path():
    return os.path.join(os.environ.get('HOME', '.'), '.tanner_lcc', 'tanner_lcc.conf')


def load_config(config_file=None):
    """Loads a configuration file.

    By default it assumes ~/.tanner_lcc/tanner_lcc.conf
    """
    if not config_file:
        config_file = os.environ.get('TANNER_LCC_CONFIG') or default_config_path()
    config = configparser.ConfigParser(inline_comment_prefixes=('#', ';'))
    try:
        with open(config_file) as f:
            config.read_file(f)
    except IOError:
        raise IOError(("There was a problem loading the configuration file {}. "
                "Please make sure that it exists and that you have read "
                "permissions".format(config_file)))
    except configparser.Error as e:
        raise ConfigError('{}: {}'.format(config_file, e))
    return config


def _key_lines(config_file):
    """ Map (section, key) to the line number it was written on.
    """
    lines = {}
    section = None
    with open(config_file) as f:
        for lineno, line in enumerate(f, 1):
            m = _SECTION_RE.match(line)
            if m:
                section = m.group(1).strip()
                lines[(section, None)] = lineno
                continue
            m = _KEY_RE.match(line)
            if m and section is not None:
                lines[(section, m.group(1).strip().lower())] = lineno
    return lines


class RunConfig(object):
    """ Fully resolved and validated run configuration.

    Each section is kept as a plain dict of typed values so that the whole
    object can be echoed into run manifests with ``to_dict``.
    """

    def __init__(self, parser, source='<config>', lines=None):
        self.source = source
        self.base_dir = os.path.dirname(os.path.realpath(source)) if os.path.exists(source) else os.getcwd()
        self._parser = parser
        self._lines = lines or {}

        self.field = {
            'p': self._int('field', 'p'),
            'ell': self._int('field', 'ell', 1, minimum=1),
        }
        if not is_prime(self.field['p']):
            self._fail('field', 'p', 'must be prime, got {}'.format(self.field['p']))

        kind = self._choice('geometry', 'kind', ('affine', 'parity'), 'affine')
        self.geometry = {'kind': kind}
        if kind == 'affine':
            self.geometry['h'] = self._int('geometry', 'h', self.field['p'] ** self.field['ell'], minimum=2)
            self.geometry['m'] = self._int('geometry', 'm', minimum=1)
            self.geometry['r'] = self._int('geometry', 'r', 1, minimum=1)
            self.geometry['beta'] = self._float('geometry', 'beta', 0.05, lower=0.0, upper=1.0)
            self.geometry['epsilon_prime'] = self._float('geometry', 'epsilon_prime', None, lower=0.0)
            if self.geometry['h'] != self.field['p'] ** self.field['ell']:
                self._fail('geometry', 'h', 'must equal p^ell = {}'.format(self.field['p'] ** self.field['ell']))
            if self.geometry['r'] >= self.geometry['m']:
                self._fail('geometry', 'r', 'must be smaller than m = {}'.format(self.geometry['m']))

        self.graph = {
            'n': self._int('graph', 'n', minimum=2),
            'd': self._int('graph', 'd', minimum=2),
            'seed': self._int('graph', 'seed', None, minimum=0),
        }
        if kind == 'affine':
            d_inner = self.geometry['h'] ** self.geometry['m']
            if self.graph['d'] != d_inner:
                self._fail('graph', 'd', 'must equal the inner code length h^m = {}'.format(d_inner))
        if self.graph['d'] >= self.graph['n']:
            self._fail('graph', 'd', 'must be smaller than n = {}'.format(self.graph['n']))
        if (self.graph['n'] * self.graph['d']) % 2:
            self._fail('graph', 'd', 'n * d must be even')

        self.params = {
            'gamma': self._float('params', 'gamma', 0.25, lower=0.0, upper=0.5, open_interval=True),
            'zeta': self._float('params', 'zeta', None, lower=0.0),
            'C': self._int('params', 'C', None, minimum=0),
            'L1': self._int('params', 'L1', None, minimum=0),
            'L2': self._int('params', 'L2', None, minimum=0),
            'method': self._choice('params', 'method', ('auto', 'enumerate', 'linear'), 'auto'),
        }
        if self.params['zeta'] is not None and self.params['zeta'] <= self.params['gamma']:
            self._fail('params', 'zeta', 'must be larger than gamma = {}'.format(self.params['gamma']))

        self.noise = {
            'rho': self._float('noise', 'rho', 0.0, lower=0.0, upper=1.0),
            'model': self._choice('noise', 'model', ('random', 'adversarial'), 'random'),
            'pattern_file': self._str('noise', 'pattern_file', None),
        }
        if self.noise['rho'] >= 1.0:
            self._fail('noise', 'rho', 'must be smaller than 1')
        if self.noise['model'] == 'adversarial':
            if not self.noise['pattern_file']:
                self._fail('noise', 'model', 'adversarial noise needs pattern_file')
            self.noise['pattern_file'] = os.path.join(self.base_dir, self.noise['pattern_file'])

        suites = self._list('experiment', 'suites', ['success_curve'])
        for s in suites:
            if s not in SUITES:
                self._fail('experiment', 'suites', 'unknown suite {!r}; choose from {}'.format(s, ', '.join(SUITES)))
        rho_grid = [self._parse_float('experiment', 'rho_grid', x) for x in self._list('experiment', 'rho_grid', ['0'])]
        for rho in rho_grid:
            if not 0.0 <= rho < 1.0:
                self._fail('experiment', 'rho_grid', 'values must lie in [0, 1), got {}'.format(rho))
        self.experiment = {
            'suites': suites,
            'trials': self._int('experiment', 'trials', 200, minimum=1),
            'rho_grid': rho_grid,
            'positions': self._choice('experiment', 'positions', ('random', 'all'), 'random'),
            'codeword': self._choice('experiment', 'codeword', ('zero', 'random'), 'zero'),
            'walk_trials': self._int('experiment', 'walk_trials', 100000, minimum=1),
            'walk_length': self._int('experiment', 'walk_length', 40, minimum=1),
            'walk_rho': self._float('experiment', 'walk_rho', 0.1, lower=0.0, upper=1.0),
            'walk_gamma': self._float('experiment', 'walk_gamma', 0.25, lower=0.0, upper=1.0, open_interval=True),
            'walk_start': self._choice('experiment', 'walk_start', ('point', 'uniform'), 'point'),
            'smoothness_trials': self._int('experiment', 'smoothness_trials', 100000, minimum=1),
            'equivariance_trials': self._int('experiment', 'equivariance_trials', 100, minimum=1),
        }

        self.run = {
            'seed': self._int('run', 'seed', 1, minimum=0),
            'threads': self._int('run', 'threads', 1, minimum=1),
            'out': self._str('run', 'out', 'results'),
        }
        self.log = {'log_dir': self._str('log', 'log_dir', None)}

    @classmethod
    def from_file(cls, config_file):
        """ Parse and validate a run configuration file.
        """
        parser = load_config(config_file)
        return cls(parser, source=config_file, lines=_key_lines(config_file))

    @classmethod
    def from_string(cls, text, source='<string>'):
        parser = configparser.ConfigParser(inline_comment_prefixes=('#', ';'))
        try:
            parser.read_string(text, source=source)
        except configparser.Error as e:
            raise ConfigError(str(e))
        lines = {}
        section = None
        for lineno, line in enumerate(text.splitlines(), 1):
            m = _SECTION_RE.match(line)
            if m:
                section = m.group(1).strip()
                continue
            m = _KEY_RE.match(line)
            if m and section is not None:
                lines[(section, m.group(1).strip().lower())] = lineno
        return cls(parser, source=source, lines=lines)

    def override(self, seed=None, out=None, threads=None):
        """ Apply command line overrides on top of the file values.
        """
        if seed is not None:
            self.run['seed'] = seed
        if out is not None:
            self.run['out'] = out
        if threads is not None:
            if threads < 1:
                raise ConfigError('--threads must be at least 1')
            self.run['threads'] = threads
        return self

    @property
    def graph_seed(self):
        if self.graph['seed'] is not None:
            return self.graph['seed']
        return self.run['seed']

    def to_dict(self):
        return {
            'field': dict(self.field),
            'geometry': dict(self.geometry),
            'graph': dict(self.graph, seed=self.graph_seed),
            'params': dict(self.params),
            'noise': dict(self.noise),
            'experiment': dict(self.experiment),
            'run': dict(self.run),
        }

    # Typed accessors. Each failure goes through _fail so it names the line.

    def _where(self, section, key):
        lineno = self._lines.get((section, key.lower())) or self._lines.get((section, None))
        if lineno:
            return '{}:{}'.format(self.source, lineno)
        return self.source

    def _fail(self, section, key, message):
        raise ConfigError('{}: [{}] {} {}'.format(self._where(section, key), section, key, message))

    def _raw(self, section, key):
        if not self._parser.has_option(section, key):
            return None
        value = self._parser.get(section, key).strip()
        return value if value != '' else None

    def _str(self, section, key, default):
        value = self._raw(section, key)
        return default if value is None else value

    def _int(self, section, key, default=_REQUIRED, minimum=None):
        value = self._raw(section, key)
        if value is None:
            if default is _REQUIRED:
                self._fail(section, key, 'is required')
            return default
        try:
            value = int(value)
        except ValueError:
            self._fail(section, key, 'must be an integer, got {!r}'.format(value))
        if minimum is not None and value < minimum:
            self._fail(section, key, 'must be at least {}, got {}'.format(minimum, value))
        return value

    def _parse_float(self, section, key, value):
        try:
            return float(value)
        except ValueError:
            self._fail(section, key, 'must be a number, got {!r}'.format(value))

    def _float(self, section, key, default, lower=None, upper=None, open_interval=False):
        value = self._raw(section, key)
        if value is None:
            return default
        value = self._parse_float(section, key, value)
        if lower is not None and (value < lower or (open_interval and value == lower)):
            self._fail(section, key, 'must be above {}, got {}'.format(lower, value))
        if upper is not None and (value > upper or (open_interval and value == upper)):
            self._fail(section, key, 'must be below {}, got {}'.format(upper, value))
        return value

    def _choice(self, section, key, choices, default):
        value = self._str(section, key, default)
        if value not in choices:
            self._fail(section, key, 'must be one of {}, got {!r}'.format(', '.join(choices), value))
        return value

    def _list(self, section, key, default):
        value = self._raw(section, key)
        if value is None:
            return list(default)
        return [x.strip() for x in value.split(',') if x.strip()]

""" Logging module
"""
import logging
import os

from configparser import NoOptionError, NoSectionError

from tanner_lcc.common import config as cl

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def minimal_logger(namespace, config_file=None, to_file=True, debug=False):
    """Make and return a minimal console logger. Optionally write to a file as well.

    Calling it twice for the same namespace does not stack handlers.

    :param str namespace: Namespace of logger
    :param str config_file: Configuration file holding the [log] section
    :param bool to_file: Log to a file (location in configuration file)
    :param bool debug: Log in DEBUG level or not

    :return: A logging.Logger object
    :rtype: logging.Logger
    """
    log_level = logging.DEBUG if debug else logging.INFO
    log = logging.getLogger(namespace)
    log.setLevel(log_level)
    for handler in list(log.handlers):
        log.removeHandler(handler)
    formatter = logging.Formatter(LOG_FORMAT)

    # Console logger
    s_h = logging.StreamHandler()
    s_h.setFormatter(formatter)
    s_h.setLevel(log_level)
    log.addHandler(s_h)

    # File logger
    if to_file and (config_file or os.environ.get('TANNER_LCC_CONFIG')):
        config = cl.load_config(config_file or os.environ.get('TANNER_LCC_CONFIG'))
        try:
            log_dir = config.get('log', 'log_dir')
        except (NoOptionError, NoSectionError):
            # No [log] section means console only
            return log
        if not os.path.isdir(log_dir):
            os.makedirs(log_dir)
        fh = logging.FileHandler(os.path.join(log_dir, '{}.log'.format(namespace)))
        fh.setLevel(log_level)
        fh.setFormatter(formatter)
        log.addHandler(fh)
    return log

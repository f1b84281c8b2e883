""" Canonical JSON, content hashes and codeword files
"""
import hashlib
import json

import numpy as np


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError('Object of type {} is not JSON serializable'.format(type(obj).__name__))


def dumps(obj):
    """ Sorted keys and fixed separators: equal objects give equal bytes.
    """
    return json.dumps(obj, sort_keys=True, indent=2, separators=(',', ': '), default=_default) + '\n'


def content_hash(obj):
    """ sha256 of the compact canonical JSON of obj.
    """
    raw = json.dumps(obj, sort_keys=True, separators=(',', ':'), default=_default)
    return hashlib.sha256(raw.encode('utf-8')).hexdigest()


def format_value(value):
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return '{:.10g}'.format(float(value))
    return value


def write_word(path, word, header):
    """ Write a codeword file: one JSON header line, then one byte per symbol.
    """
    word = np.asarray(word)
    if word.size and int(word.max()) > 255:
        raise ValueError('symbols above 255 do not fit the one byte per symbol format')
    header = dict(header, N=int(word.size))
    with open(path, 'wb') as fh:
        fh.write(json.dumps(header, sort_keys=True, separators=(',', ':'), default=_default).encode('utf-8'))
        fh.write(b'\n')
        fh.write(word.astype(np.uint8).tobytes())


def read_word(path):
    """ Returns (header dict, word array).
    """
    with open(path, 'rb') as fh:
        header = json.loads(fh.readline().decode('utf-8'))
        raw = fh.read()
    word = np.frombuffer(raw, dtype=np.uint8).astype(np.int64)
    if word.size != header.get('N'):
        raise IOError('{}: header says N = {} but file holds {} symbols'.format(path, header.get('N'), word.size))
    return header, word

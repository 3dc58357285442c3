# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import csv
import hashlib
import json
import logging
import os
import struct
import tempfile

from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .exceptions import CorruptCubeException, OutputException
from .physics.observables import ProbabilityCube

logger = logging.getLogger(__name__)

CUBE_MAGIC = b'WGCUBE01'
CUBE_HEADER = struct.Struct('<8sIId16s')
CUBE_DTYPE = np.dtype('<f8')
CUBE_SYMMETRY_TOLERANCE = 1e-12
HASH_LENGTH = 12


def canonical_json(document):
    return json.dumps(document, sort_keys=True, separators=(',', ':'))


def config_hash(run_section):
    payload = canonical_json(run_section).encode('utf-8')
    return hashlib.sha256(payload).hexdigest()[:HASH_LENGTH]


def utc_timestamp():
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


class Provenance:
    def __init__(self, run_section, generated_at=None):
        self.run_section = run_section
        self.config_hash = config_hash(run_section)
        self.generated_at = generated_at or utc_timestamp()

    def comment_lines(self):
        return [
            f'# waveguide-ed config_hash={self.config_hash} generated_at={self.generated_at}',
            f'# config={canonical_json(self.run_section)}',
        ]


@contextmanager
def output_scope(path, binary=False):
    """Yield a temporary file that replaces ``path`` only if the block succeeds."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, temporary = tempfile.mkstemp(prefix=f'.{path.name}.', dir=path.parent)
    except OSError as e:
        raise OutputException(path, e.strerror or str(e))

    try:
        if binary:
            fileobj = os.fdopen(fd, 'wb')
        else:
            fileobj = os.fdopen(fd, 'w', newline='', encoding='utf-8')
        with fileobj:
            yield fileobj
        os.replace(temporary, path)
    except Exception as e:
        if os.path.exists(temporary):
            os.unlink(temporary)
        if isinstance(e, OSError):
            raise OutputException(path, e.strerror or str(e))
        raise
    logger.info('Wrote %s', path)


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows, provenance):
    with output_scope(path) as fileobj:
        for line in provenance.comment_lines():
            fileobj.write(line + '\n')
        writer = csv.writer(fileobj, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])


def read_csv(path):
    """Header and rows of a CSV written by ``write_csv``, provenance lines skipped."""
    with open(path, newline='', encoding='utf-8') as fileobj:
        lines = [line for line in fileobj if not line.startswith('#')]
    reader = csv.reader(lines)
    header = next(reader)
    return header, list(reader)


def write_json(path, document):
    with output_scope(path) as fileobj:
        json.dump(document, fileobj, sort_keys=True, indent=2, allow_nan=False)
        fileobj.write('\n')


def write_cube(path, cube, hash_=''):
    """Header then the N**k float64 values of ``cube`` in C order."""
    values = np.ascontiguousarray(cube.values, dtype=CUBE_DTYPE)
    header = CUBE_HEADER.pack(
        CUBE_MAGIC, cube.n, cube.k, cube.normalization, hash_.encode('ascii')
    )
    with output_scope(path, binary=True) as fileobj:
        fileobj.write(header)
        fileobj.write(values.tobytes(order='C'))
    return CUBE_HEADER.size + values.nbytes


def read_cube(path):
    """Load a cube file, checking magic, size and permutation symmetry.

    Returns the header fields and the ``ProbabilityCube``.
    """
    data = Path(path).read_bytes()
    if len(data) < CUBE_HEADER.size:
        raise CorruptCubeException(path, 'truncated header')

    magic, n, k, normalization, hash_ = CUBE_HEADER.unpack_from(data)
    if magic != CUBE_MAGIC:
        raise CorruptCubeException(path, f'bad magic {magic!r}')
    if n < 1 or k < 1:
        raise CorruptCubeException(path, f'bad shape n={n} k={k}')

    expected = CUBE_HEADER.size + n ** k * CUBE_DTYPE.itemsize
    if len(data) != expected:
        raise CorruptCubeException(path, f'size {len(data)} does not match {expected}')

    values = np.frombuffer(data, dtype=CUBE_DTYPE, offset=CUBE_HEADER.size)
    cube = ProbabilityCube(n, values.reshape((n,) * k).copy())
    deviation = cube.symmetry_deviation()
    if deviation > CUBE_SYMMETRY_TOLERANCE:
        raise CorruptCubeException(path, f'not permutation symmetric ({deviation:.3e})')

    header = {
        'n': n,
        'k': k,
        'normalization': normalization,
        'config_hash': hash_.rstrip(b'\0').decode('ascii'),
    }
    return header, cube

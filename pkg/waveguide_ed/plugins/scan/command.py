# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging

from pathlib import Path

from waveguide_ed.exceptions import RunInterruptedException, WaveguideException
from waveguide_ed.output import write_csv
from waveguide_ed.physics.classifier import Exotic, Radiance, Region
from waveguide_ed.plugins.classify.command import label_counts

from .exceptions import ConflictingScanException, EmptyScanException

logger = logging.getLogger(__name__)

SCAN_FILE = 'scan.csv'
COUNT_COLUMNS = tuple(
    member.value for enum_ in (Radiance, Region, Exotic) for member in enum_
)
SCAN_HEADER = (
    ('parameter', 'value', 'status', 'n_states')
    + COUNT_COLUMNS
    + ('min_decay_rate', 'max_ipr')
)


class ScanCommand:
    def __init__(self, config, pipeline):
        self._directory = Path(config['output']['directory'])
        self._phases = list(config['scan']['phases'] or [])
        self._n_atoms = list(config['scan']['n_atoms'] or [])
        self._pipeline = pipeline

    def _points(self):
        if self._phases and self._n_atoms:
            raise ConflictingScanException(self._phases, self._n_atoms)
        if self._phases:
            return 'phase', self._phases
        if self._n_atoms:
            return 'n_atoms', self._n_atoms
        raise EmptyScanException()

    def execute(self):
        parameter, values = self._points()
        base = self._pipeline.run_config()
        self._pipeline.check_classifiable(base)

        rows = []
        for value in values:
            self._pipeline.check_stopped()
            rows.append(self._summarize(parameter, value))

        path = self._directory / SCAN_FILE
        provenance = base.provenance(scan={'parameter': parameter, 'values': values})
        write_csv(path, SCAN_HEADER, rows, provenance)
        return [path]

    def _summarize(self, parameter, value):
        logger.info('Scan point %s=%s', parameter, value)
        try:
            run = self._pipeline.run_config(**{parameter: value})
            solved = self._pipeline.solve(run)
            records = self._pipeline.evaluate(solved)
            labels = self._pipeline.classify(solved, records)
        except RunInterruptedException:
            raise
        except WaveguideException as e:
            logger.warning('Scan point %s=%s failed: %s', parameter, value, e.message)
            return [parameter, value, f'failed:{e.id_}'] + [None] * (len(SCAN_HEADER) - 3)

        counts = label_counts(labels)
        return (
            [parameter, value, 'ok', len(records)]
            + [counts[column] for column in COUNT_COLUMNS]
            + [
                min(record.decay_rate for record in records),
                max(record.ipr for record in records),
            ]
        )

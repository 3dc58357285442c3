# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging

from pathlib import Path

from waveguide_ed.output import write_csv

logger = logging.getLogger(__name__)

SPECTRUM_FILE = 'spectrum.csv'
SPECTRUM_HEADER = ('index', 're_eps', 'im_eps', 'decay_rate', 'ipr', 'entropy')
HIERARCHY_COLUMN = 'hierarchy_distance'


def spectrum_row(record):
    energy = record.eigen.energy_per_photon
    return [record.index, energy.real, energy.imag, record.decay_rate, record.ipr, record.entropy]


class SpectrumCommand:
    def __init__(self, config, pipeline):
        self._directory = Path(config['output']['directory'])
        self._with_hierarchy = config['output']['with_hierarchy']
        self._pipeline = pipeline

    def execute(self):
        run = self._pipeline.run_config()
        solved = self._pipeline.solve(run)
        records = self._pipeline.evaluate(solved)

        header = list(SPECTRUM_HEADER)
        rows = [spectrum_row(record) for record in records]
        if self._with_hierarchy:
            header.append(HIERARCHY_COLUMN)
            distances = self._pipeline.hierarchy_distances(solved)
            for row, distance in zip(rows, distances):
                row.append(distance)

        path = self._directory / SPECTRUM_FILE
        write_csv(path, header, rows, run.provenance())
        return [path]

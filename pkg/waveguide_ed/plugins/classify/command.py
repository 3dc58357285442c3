# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging

from collections import Counter
from pathlib import Path

from waveguide_ed.output import write_csv
from waveguide_ed.physics.classifier import Exotic

logger = logging.getLogger(__name__)

LABELS_FILE = 'labels.csv'
LABELS_HEADER = (
    'index',
    're_eps',
    'im_eps',
    'radiance',
    'region',
    'n_edge',
    'n_centre',
    'n_free',
    'signature_status',
    'exotic',
    'trimer_xi',
    'corner_xi',
    'trimer_edge_xi',
    'asymmetry',
    'symmetric_fit',
    'fermionic_overlap',
)


def _evidence_value(label, kind, attribute):
    found = label.evidence.get(kind)
    return getattr(found, attribute) if found is not None else None


def label_row(record, label):
    energy = record.eigen.energy_per_photon
    signature = label.signature
    scores = label.scores
    return [
        record.index,
        energy.real,
        energy.imag,
        label.radiance.value,
        label.region.value,
        signature.n_edge,
        signature.n_centre,
        signature.n_free,
        signature.status,
        ';'.join(label.exotic_names()),
        _evidence_value(label, Exotic.TRIMER, 'xi_perp'),
        _evidence_value(label, Exotic.CORNER_STATE, 'xi_along'),
        _evidence_value(label, Exotic.TRIMER_EDGE, 'xi_perp'),
        label.asymmetry,
        scores.symmetric_fit if scores else None,
        scores.fermionic_overlap if scores else None,
    ]


def label_counts(labels):
    counts = Counter()
    for label in labels:
        counts[label.radiance.value] += 1
        counts[label.region.value] += 1
        counts.update(kind.value for kind in label.exotic)
    return counts


class ClassifyCommand:
    def __init__(self, config, pipeline):
        self._directory = Path(config['output']['directory'])
        self._pipeline = pipeline

    def execute(self):
        run = self._pipeline.run_config()
        self._pipeline.check_classifiable(run)
        solved = self._pipeline.solve(run)
        records = self._pipeline.evaluate(solved)
        labels = self._pipeline.classify(solved, records)

        ambiguous = sum(1 for label in labels if label.signature.status != 'resolved')
        if ambiguous:
            logger.warning('%s states have an ambiguous localisation signature', ambiguous)
        logger.info('Label counts: %s', dict(label_counts(labels)))

        path = self._directory / LABELS_FILE
        rows = (label_row(record, label) for record, label in zip(records, labels))
        write_csv(path, LABELS_HEADER, rows, run.provenance())
        return [path]

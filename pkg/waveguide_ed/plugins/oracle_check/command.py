# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging

from pathlib import Path

from waveguide_ed.output import Provenance, write_json
from waveguide_ed.physics.hamiltonian import build_kphoton_hardcore
from waveguide_ed.physics.model import ModelParams, single_spectrum
from waveguide_ed.physics.oracle import (
    full_basis_reference_spectrum,
    hardcore_sector,
    max_deviation,
    noninteracting_triples,
)
from waveguide_ed.physics.spectra import diagonalize

from .exceptions import OracleMismatchException

logger = logging.getLogger(__name__)

ORACLE_FILE = 'oracle_check.json'
HARDCORE_TOLERANCE = 1e-4
NONINTERACTING_TOLERANCE = 1e-10


def hardcore_limit_deviation(params, k, chi):
    """Reduced hard-core spectrum against the full basis with a large on-site penalty."""
    reduced = diagonalize(build_kphoton_hardcore(params, k))
    reference = full_basis_reference_spectrum(params, k, chi)
    return max_deviation(hardcore_sector(reference, chi).energies, reduced.energies)


def noninteracting_deviation(params, k):
    """Full-basis spectrum without interaction against averages of single-photon energies."""
    singles = single_spectrum(params).energies
    reference = full_basis_reference_spectrum(params, k, 0.0)
    return max_deviation(reference.energies, noninteracting_triples(singles, k))


class OracleCheckCommand:
    def __init__(self, config):
        self._directory = Path(config['output']['directory'])
        self._oracle = dict(config['oracle'])

    def execute(self):
        oracle = self._oracle
        params = ModelParams.hard_core(oracle['n_atoms'], oracle['phase'])
        k = oracle['excitations']

        checks = {
            'hardcore_limit': (
                hardcore_limit_deviation(params, k, oracle['chi']),
                HARDCORE_TOLERANCE,
            ),
            'noninteracting': (noninteracting_deviation(params, k), NONINTERACTING_TOLERANCE),
        }
        failures = sorted(name for name, (value, limit) in checks.items() if value > limit)

        provenance = Provenance({'oracle': oracle})
        document = {
            'config_hash': provenance.config_hash,
            'generated_at': provenance.generated_at,
            'config': provenance.run_section,
            'checks': {
                name: {
                    'max_deviation': float(value),
                    'tolerance': limit,
                    'passed': bool(value <= limit),
                }
                for name, (value, limit) in checks.items()
            },
            'passed': not failures,
        }
        path = self._directory / ORACLE_FILE
        write_json(path, document)

        for name, (value, limit) in checks.items():
            logger.info('%s: max deviation %.3e (tolerance %.0e)', name, value, limit)
        if failures:
            raise OracleMismatchException(failures)
        return [path]

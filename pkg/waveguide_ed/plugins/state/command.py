# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging

from pathlib import Path

from waveguide_ed.output import CUBE_SYMMETRY_TOLERANCE, write_cube, write_json
from waveguide_ed.physics.ansatz import ANSATZ_ARITIES
from waveguide_ed.physics.observables import build_state_record, state_tensor, tensor_cube
from waveguide_ed.schemas import StateDocumentSchema

from .exceptions import IndexOutOfRangeException

logger = logging.getLogger(__name__)

STATE_FILE = 'state.json'
CUBE_FILE = 'state.cube'


class StateCommand:
    def __init__(self, config, pipeline):
        self._directory = Path(config['output']['directory'])
        self._index = config['state']['index']
        self._pipeline = pipeline
        self._schema = StateDocumentSchema()

    def execute(self):
        run = self._pipeline.run_config()
        if not 0 <= self._index < run.dimension:
            raise IndexOutOfRangeException(self._index, run.dimension)

        solved = self._pipeline.solve(run)
        hamiltonian = solved.hamiltonian
        eigen = solved.spectrum[self._index]
        record = build_state_record(self._index, eigen, hamiltonian)

        label = None
        if run.params.is_hard_core and run.k in ANSATZ_ARITIES:
            (label,) = self._pipeline.classify(solved, [record])

        provenance = run.provenance()
        written = []
        cube_name = None
        if run.k > 1:
            basis = hamiltonian.basis if hamiltonian.is_reduced else None
            tensor = state_tensor(eigen.vector, basis, run.params.n_atoms, run.k)
            cube = tensor_cube(tensor)
            if cube.symmetry_deviation() <= CUBE_SYMMETRY_TOLERANCE:
                cube_path = self._directory / CUBE_FILE
                write_cube(cube_path, cube, provenance.config_hash)
                cube_name = CUBE_FILE
                written.append(cube_path)
            else:
                logger.warning('State %s is not permutation symmetric, no cube', self._index)

        document = self._schema.dump(
            {
                'config_hash': provenance.config_hash,
                'generated_at': provenance.generated_at,
                'config': provenance.run_section,
                'index': self._index,
                'n_atoms': run.params.n_atoms,
                'excitations': run.k,
                'energy': eigen.energy_per_photon,
                'raw_energy': eigen.raw_energy,
                'residual': eigen.residual,
                'decay_rate': record.decay_rate,
                'ipr': record.ipr,
                'entropy': record.entropy,
                'marginal': record.marginal,
                'labels': label,
                'scores': label.scores.to_dict() if label and label.scores else None,
                'cube_file': cube_name,
            }
        )
        state_path = self._directory / STATE_FILE
        write_json(state_path, document)
        written.insert(0, state_path)
        logger.info('State %s: energy %s', self._index, eigen.energy_per_photon)
        return written

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging
import math
import threading

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from scipy.spatial import cKDTree

from .exceptions import (
    InteractionModeException,
    InvalidArityException,
    LargeRunNotAcknowledgedException,
    RunInterruptedException,
)
from .output import Provenance, output_scope
from .physics.ansatz import ANSATZ_ARITIES
from .physics.classifier import ClassifierThresholds, classify_state
from .physics.hamiltonian import (
    build_full_with_chi,
    build_kphoton_hardcore,
    build_single_excitation,
    dump_matrix,
)
from .physics.model import Interaction, ModelParams, single_spectrum
from .physics.observables import evaluate_spectrum
from .physics.oracle import noninteracting_triples
from .physics.spectra import diagonalize, predicted_solve_bytes
from .schemas import load_run_section

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one diagonalization run."""

    params: ModelParams
    k: int
    thresholds: ClassifierThresholds
    residual_tolerance: float
    large: bool
    large_threshold_bytes: int
    memory_budget_bytes: int
    dump_matrix: str
    run_section: dict

    @classmethod
    def from_config(cls, config, **model_overrides):
        model = dict(config['model'])
        model.update(model_overrides)
        run_section = load_run_section(
            {
                'model': model,
                'excitations': config['excitations'],
                'solver': config['solver'],
                'classifier': config['classifier'],
            }
        )
        model = run_section['model']
        params = ModelParams(
            n_atoms=model['n_atoms'],
            phase=model['phase'],
            gamma0=model['gamma0'],
            omega0_offset=model['omega0_offset'],
            interaction=Interaction(model['interaction']),
            chi=model['chi'],
        )
        solver = config['solver']
        return cls(
            params=params,
            k=run_section['excitations'],
            thresholds=ClassifierThresholds.from_dict(run_section['classifier']),
            residual_tolerance=run_section['solver']['residual_tolerance'],
            large=bool(solver['large']),
            large_threshold_bytes=solver['large_threshold_bytes'],
            memory_budget_bytes=solver['memory_budget_bytes'],
            dump_matrix=solver['dump_matrix'],
            run_section=run_section,
        )

    @property
    def dimension(self):
        n_atoms = self.params.n_atoms
        if self.k == 1:
            return n_atoms
        if self.params.is_hard_core:
            return math.comb(n_atoms, self.k)
        return n_atoms ** self.k

    def provenance(self, **extra):
        return Provenance({**self.run_section, **extra})


@dataclass(frozen=True, eq=False)
class SolvedRun:
    run: RunConfig
    hamiltonian: object
    spectrum: object


class Pipeline:
    def __init__(self, config):
        self._workers = config['workers']
        self._config = config
        self._stop_reason = None
        self._lock = threading.Lock()

    def stop(self, reason):
        with self._lock:
            self._stop_reason = reason

    def check_stopped(self):
        with self._lock:
            reason = self._stop_reason
        if reason:
            raise RunInterruptedException(reason)

    def run_config(self, **model_overrides):
        return RunConfig.from_config(self._config, **model_overrides)

    def hamiltonian(self, run):
        predicted = predicted_solve_bytes(run.dimension)
        if predicted > run.large_threshold_bytes:
            if not run.large:
                raise LargeRunNotAcknowledgedException(
                    run.dimension, predicted, run.large_threshold_bytes
                )
            logger.info('Large dense solve acknowledged: about %s bytes', predicted)

        if run.k == 1:
            hamiltonian = build_single_excitation(run.params)
        elif run.params.is_hard_core:
            hamiltonian = build_kphoton_hardcore(run.params, run.k)
        else:
            hamiltonian = build_full_with_chi(run.params, run.k, run.memory_budget_bytes)
        logger.info('Built Hamiltonian of dimension %s', hamiltonian.dimension)

        if run.dump_matrix:
            with output_scope(run.dump_matrix, binary=True) as fileobj:
                dump_matrix(hamiltonian, fileobj)
        return hamiltonian

    def solve(self, run):
        self.check_stopped()
        hamiltonian = self.hamiltonian(run)
        self.check_stopped()
        spectrum = diagonalize(hamiltonian, run.residual_tolerance)
        self.check_stopped()
        return SolvedRun(run, hamiltonian, spectrum)

    def evaluate(self, solved):
        records = evaluate_spectrum(solved.spectrum, solved.hamiltonian, self._workers)
        self.check_stopped()
        return records

    def single_spectrum(self, run):
        return single_spectrum(run.params, run.residual_tolerance)

    def check_classifiable(self, run):
        if not run.params.is_hard_core:
            raise InteractionModeException(
                Interaction.HARD_CORE.value, run.params.interaction.value
            )
        if run.k not in ANSATZ_ARITIES:
            raise InvalidArityException(run.k, ANSATZ_ARITIES)

    def classify(self, solved, records):
        run = solved.run
        self.check_classifiable(run)
        singles = self.single_spectrum(run)

        def classify(record):
            self.check_stopped()
            return classify_state(record, solved.hamiltonian, run.thresholds, singles)

        logger.info('Classifying %s states', len(records))
        if self._workers <= 1:
            labels = [classify(record) for record in records]
        else:
            with ThreadPoolExecutor(max_workers=self._workers) as executor:
                labels = list(executor.map(classify, records))
        for record, label in zip(records, labels):
            record.labels = label
        return labels

    def hierarchy_distances(self, solved):
        """Distance of each per-photon energy to the nearest noninteracting average."""
        if solved.run.k == 1:
            return np.zeros(len(solved.spectrum))
        singles = self.single_spectrum(solved.run).energies
        averages = noninteracting_triples(singles, solved.run.k)
        tree = cKDTree(np.column_stack([averages.real, averages.imag]))
        energies = solved.spectrum.energies
        distances, _ = tree.query(np.column_stack([energies.real, energies.imag]))
        return distances

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging
import time

from dataclasses import dataclass, field

import numpy as np

from scipy.linalg import get_lapack_funcs

from waveguide_ed.exceptions import (
    DimensionMismatchException,
    ResidualToleranceException,
    SolverFailureException,
)

from .hamiltonian import dense_matrix_bytes

logger = logging.getLogger(__name__)

DEFAULT_RESIDUAL_TOLERANCE = 1e-8
RESIDUAL_BLOCK = 512


@dataclass(frozen=True, eq=False)
class EigenPair:
    energy_per_photon: complex
    raw_energy: complex
    vector: np.ndarray = field(repr=False)
    residual: float


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    params: object
    k: int
    pairs: tuple
    diagnostics: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, index):
        return self.pairs[index]

    def __iter__(self):
        return iter(self.pairs)

    @property
    def energies(self):
        return np.array([pair.energy_per_photon for pair in self.pairs], dtype=complex)

    @property
    def raw_energies(self):
        return np.array([pair.raw_energy for pair in self.pairs], dtype=complex)

    @property
    def max_residual(self):
        return max((pair.residual for pair in self.pairs), default=0.0)


@dataclass(frozen=True, eq=False)
class ResidualReport:
    residuals: np.ndarray
    tolerance: float

    @property
    def max_residual(self):
        return float(self.residuals.max()) if self.residuals.size else 0.0

    @property
    def flagged(self):
        return [int(index) for index in np.flatnonzero(self.residuals > self.tolerance)]

    @property
    def ok(self):
        return not self.flagged


def predicted_solve_bytes(dimension):
    # input copy handed to LAPACK plus the right eigenvectors
    return 2 * dense_matrix_bytes(dimension)


def fix_gauge(vectors):
    """Normalize columns and rotate each so its largest component is real positive."""
    norms = np.linalg.norm(vectors, axis=0)
    vectors = vectors / norms
    pivots = np.argmax(np.abs(vectors), axis=0)
    pivot_values = vectors[pivots, np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivot_values) / pivot_values)


def sort_order(raw_energies):
    return np.lexsort((raw_energies.imag, raw_energies.real))


def compute_residuals(matrix, eigenvalues, vectors):
    residuals = np.empty(len(eigenvalues))
    for start in range(0, len(eigenvalues), RESIDUAL_BLOCK):
        block = slice(start, start + RESIDUAL_BLOCK)
        columns = vectors[:, block]
        difference = matrix @ columns - columns * eigenvalues[block]
        residuals[block] = np.linalg.norm(difference, axis=0) / np.linalg.norm(columns, axis=0)
    return residuals


def _solve(matrix):
    dimension = matrix.shape[0]
    work_matrix = np.array(matrix, dtype=np.complex128, order='F', copy=True)
    geev, geev_lwork = get_lapack_funcs(('geev', 'geev_lwork'), (work_matrix,))
    work, info = geev_lwork(dimension, compute_vl=0, compute_vr=1)
    if info != 0:
        raise SolverFailureException(dimension, (0, dimension), f'workspace query info={info}')
    lwork = max(int(np.real(np.ravel(work)[0])), 2 * dimension)

    eigenvalues, _, vectors, info = geev(
        work_matrix, compute_vl=0, compute_vr=1, lwork=lwork, overwrite_a=1
    )
    if info < 0:
        raise SolverFailureException(dimension, (0, dimension), f'illegal argument {-info}')
    if info > 0:
        # eigenvalues info..dimension-1 converged, the leading ones did not
        raise SolverFailureException(dimension, (0, info), 'QR iteration did not converge')
    return eigenvalues, vectors


def diagonalize(hamiltonian, residual_tolerance=DEFAULT_RESIDUAL_TOLERANCE):
    dimension = hamiltonian.dimension
    logger.info('Diagonalizing %s', hamiltonian)
    started = time.monotonic()

    raw_energies, vectors = _solve(hamiltonian.matrix)
    solve_seconds = time.monotonic() - started

    order = sort_order(raw_energies)
    raw_energies = raw_energies[order]
    vectors = fix_gauge(vectors[:, order])
    residuals = compute_residuals(hamiltonian.matrix, raw_energies, vectors)

    flagged = np.flatnonzero(residuals > residual_tolerance)
    if flagged.size:
        raise ResidualToleranceException(
            flagged.tolist(), float(residuals.max()), residual_tolerance
        )

    pairs = tuple(
        EigenPair(
            energy_per_photon=complex(raw / hamiltonian.k),
            raw_energy=complex(raw),
            vector=vectors[:, index],
            residual=float(residuals[index]),
        )
        for index, raw in enumerate(raw_energies)
    )
    diagnostics = {
        'solver': 'lapack-geev',
        'dimension': dimension,
        'solve_seconds': solve_seconds,
        'max_residual': float(residuals.max()),
    }
    logger.info(
        'Diagonalized dimension %s in %.2fs (max residual %.2e)',
        dimension,
        solve_seconds,
        diagnostics['max_residual'],
    )
    return SpectrumResult(hamiltonian.params, hamiltonian.k, pairs, diagnostics)


def verify_residuals(result, hamiltonian, tolerance=DEFAULT_RESIDUAL_TOLERANCE):
    if len(result) != hamiltonian.dimension:
        raise DimensionMismatchException(hamiltonian.dimension, len(result))

    vectors = np.column_stack([pair.vector for pair in result])
    if vectors.shape[0] != hamiltonian.dimension:
        raise DimensionMismatchException(hamiltonian.dimension, vectors.shape[0])

    residuals = compute_residuals(hamiltonian.matrix, result.raw_energies, vectors)
    report = ResidualReport(residuals, tolerance)
    if not report.ok:
        logger.warning(
            '%s eigenpairs exceed residual tolerance %s (max %.2e)',
            len(report.flagged),
            tolerance,
            report.max_residual,
        )
    return report

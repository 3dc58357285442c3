# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import enum
import itertools
import logging

import numpy as np

from waveguide_ed.exceptions import (
    InteractionModeException,
    InvalidArityException,
    MemoryBudgetExceededException,
)

from .basis import enumerate_basis
from .model import Interaction, single_excitation_hamiltonian

logger = logging.getLogger(__name__)

COMPLEX_ITEMSIZE = np.dtype(np.complex128).itemsize
DEFAULT_MEMORY_BUDGET = 1 << 30
MULTI_PHOTON_ARITIES = (2, 3)


class Representation(enum.Enum):
    REDUCED = 'reduced'
    FULL_TENSOR = 'full_tensor'


class KPhotonHamiltonian:
    def __init__(self, params, k, representation, matrix, basis=None):
        self.params = params
        self.k = k
        self.representation = representation
        self.matrix = matrix
        self.basis = basis

    def __repr__(self):
        return (
            f'<KPhotonHamiltonian k={self.k} '
            f'representation={self.representation.value} dimension={self.dimension}>'
        )

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def is_reduced(self):
        return self.representation is Representation.REDUCED

    def trace(self):
        return complex(np.trace(self.matrix))

    def state_shape(self):
        if self.is_reduced:
            return (self.basis.size,)
        return (self.params.n_atoms,) * self.k


def dense_matrix_bytes(dimension):
    return dimension * dimension * COMPLEX_ITEMSIZE


def build_single_excitation(params):
    basis = enumerate_basis(params.n_atoms, 1)
    matrix = single_excitation_hamiltonian(params)
    return KPhotonHamiltonian(params, 1, Representation.REDUCED, matrix, basis)


def build_kphoton_hardcore(params, k, basis=None):
    if k not in MULTI_PHOTON_ARITIES:
        raise InvalidArityException(k, MULTI_PHOTON_ARITIES)
    if not params.is_hard_core:
        raise InteractionModeException(
            Interaction.HARD_CORE.value, params.interaction.value
        )
    if basis is None:
        basis = enumerate_basis(params.n_atoms, k)
    elif basis.k != k or basis.n_atoms != params.n_atoms:
        raise InvalidArityException(basis.k, (k,))

    single = single_excitation_hamiltonian(params)
    tuples = basis.tuples
    sites = np.arange(params.n_atoms)
    rows = np.arange(basis.size)

    matrix = np.zeros((basis.size, basis.size), dtype=np.complex128)
    matrix[rows, rows] = single[tuples, tuples].sum(axis=1)

    # hop the photon at `position` to every site q; tuples that collide
    # with an occupied site rank to -1 and are dropped
    for position in range(k):
        leaving = tuples[:, position]
        candidates = np.repeat(tuples[:, None, :], params.n_atoms, axis=1)
        candidates[:, :, position] = sites[None, :]
        targets = basis.rank(np.sort(candidates, axis=2).reshape(-1, k))
        targets = targets.reshape(basis.size, params.n_atoms)
        hop = (targets >= 0) & (sites[None, :] != leaving[:, None])
        row_index, site_index = np.nonzero(hop)
        matrix[row_index, targets[row_index, site_index]] = single[
            leaving[row_index], site_index
        ]

    logger.debug('Assembled hard-core Hamiltonian k=%s dimension=%s', k, basis.size)
    return KPhotonHamiltonian(params, k, Representation.REDUCED, matrix, basis)


def build_full_with_chi(params, k, memory_budget=DEFAULT_MEMORY_BUDGET):
    if k not in MULTI_PHOTON_ARITIES:
        raise InvalidArityException(k, MULTI_PHOTON_ARITIES)
    if params.is_hard_core:
        raise InteractionModeException(Interaction.FINITE.value, params.interaction.value)

    n_atoms = params.n_atoms
    dimension = n_atoms ** k
    required = dense_matrix_bytes(dimension)
    if required > memory_budget:
        raise MemoryBudgetExceededException(dimension, required, memory_budget)

    single = single_excitation_hamiltonian(params)
    identity = np.eye(n_atoms)
    matrix = np.zeros((dimension, dimension), dtype=np.complex128)
    for photon in range(k):
        factors = [identity] * k
        factors[photon] = single
        term = factors[0]
        for factor in factors[1:]:
            term = np.kron(term, factor)
        matrix += term

    grids = np.indices((n_atoms,) * k).reshape(k, -1)
    coincident_pairs = np.zeros(dimension)
    for first, second in itertools.combinations(range(k), 2):
        coincident_pairs += grids[first] == grids[second]
    matrix[np.diag_indices(dimension)] += params.chi * coincident_pairs

    logger.debug(
        'Assembled full-tensor Hamiltonian k=%s dimension=%s chi=%s',
        k,
        dimension,
        params.chi,
    )
    return KPhotonHamiltonian(params, k, Representation.FULL_TENSOR, matrix)


def dump_matrix(hamiltonian, fileobj):
    """Row-major little-endian complex128 (real, imag) pairs, no header."""
    data = np.ascontiguousarray(hamiltonian.matrix, dtype='<c16')
    fileobj.write(data.tobytes(order='C'))
    return data.nbytes
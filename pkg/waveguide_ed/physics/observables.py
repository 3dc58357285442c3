# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from scipy.linalg import svd

from waveguide_ed.exceptions import InvalidArityException, ZeroVectorException

from .basis import symmetrize_to_full

logger = logging.getLogger(__name__)

WEIGHT_CUTOFF = 1e-300


@dataclass(frozen=True, eq=False)
class ProbabilityCube:
    n: int
    values: np.ndarray = field(repr=False)

    @property
    def normalization(self):
        return float(self.values.sum())

    @property
    def k(self):
        return self.values.ndim

    def symmetry_deviation(self):
        deviation = 0.0
        for leg in range(1, self.k):
            swapped = np.swapaxes(self.values, 0, leg)
            deviation = max(deviation, float(np.abs(self.values - swapped).max()))
        return deviation

    def marginal(self):
        return self.values.reshape(self.n, -1).sum(axis=1)


@dataclass(eq=False)
class StateRecord:
    index: int
    eigen: object
    decay_rate: float
    ipr: float
    entropy: float
    schmidt_weights: np.ndarray = field(repr=False)
    marginal: np.ndarray = field(repr=False)
    labels: object = None


def ipr(vector):
    probabilities = np.abs(np.asarray(vector).ravel()) ** 2
    total = probabilities.sum()
    if total == 0:
        raise ZeroVectorException()
    return float((probabilities ** 2).sum() / total ** 2)


def state_tensor(state, basis=None, n_atoms=None, k=None):
    """Full N**k amplitude tensor of a reduced (basis given) or full-tensor state."""
    if basis is not None:
        return symmetrize_to_full(state, basis)
    return np.asarray(state).reshape((n_atoms,) * k)


def tensor_entropy(tensor, leg=0):
    tensor = np.moveaxis(np.asarray(tensor), leg, 0)
    matrix = tensor.reshape(tensor.shape[0], -1)
    singular_values = svd(matrix, compute_uv=False, check_finite=False)
    weights = singular_values ** 2
    total = weights.sum()
    if total == 0:
        raise ZeroVectorException()
    weights = weights / total
    nonzero = weights[weights > WEIGHT_CUTOFF]
    entropy = float(-(nonzero * np.log(nonzero)).sum())
    return max(entropy, 0.0), weights


def entanglement_entropy(state, basis, leg=0):
    if basis.k not in (2, 3):
        raise InvalidArityException(basis.k, (2, 3))
    return tensor_entropy(symmetrize_to_full(state, basis), leg)


def tensor_marginal(tensor):
    probabilities = np.abs(tensor) ** 2
    total = probabilities.sum()
    if total == 0:
        raise ZeroVectorException()
    return probabilities.reshape(probabilities.shape[0], -1).sum(axis=1) / total


def marginal(state, basis):
    return tensor_marginal(symmetrize_to_full(state, basis))


def probability_cube(state, basis):
    if basis.k != 3:
        raise InvalidArityException(basis.k, (3,))
    return tensor_cube(symmetrize_to_full(state, basis))


def tensor_cube(tensor):
    probabilities = np.abs(tensor) ** 2
    total = probabilities.sum()
    if total == 0:
        raise ZeroVectorException()
    return ProbabilityCube(tensor.shape[0], probabilities / total)


def decay_rate(eigen):
    return 0.0 - eigen.energy_per_photon.imag


def build_state_record(index, eigen, hamiltonian):
    basis = hamiltonian.basis if hamiltonian.is_reduced else None
    tensor = state_tensor(eigen.vector, basis, hamiltonian.params.n_atoms, hamiltonian.k)
    if hamiltonian.k == 1:
        entropy, weights = 0.0, np.ones(1)
    else:
        entropy, weights = tensor_entropy(tensor)
    return StateRecord(
        index=index,
        eigen=eigen,
        decay_rate=decay_rate(eigen),
        ipr=ipr(eigen.vector),
        entropy=entropy,
        schmidt_weights=weights,
        marginal=tensor_marginal(tensor),
    )


def evaluate_spectrum(result, hamiltonian, workers=1):
    logger.info('Evaluating observables of %s states', len(result))

    def evaluate(index):
        return build_state_record(index, result[index], hamiltonian)

    if workers <= 1:
        return [evaluate(index) for index in range(len(result))]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(evaluate, range(len(result))))

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

"""Brute-force reference spectra built directly in the full product basis.

Nothing here reuses the production assembly code so the two paths can be
checked against each other.
"""

import itertools
import logging
import math

import numpy as np

from scipy import sparse
from scipy.optimize import linear_sum_assignment

from waveguide_ed.exceptions import DimensionMismatchException, TooLargeException

from .spectra import EigenPair, SpectrumResult, compute_residuals, fix_gauge, sort_order

logger = logging.getLogger(__name__)

REFERENCE_LIMIT = 5000
HARDCORE_PENALTY = 1e7


def _coupling(params):
    n = params.n_atoms
    matrix = np.empty((n, n), dtype=np.complex128)
    for m in range(n):
        for site in range(n):
            matrix[m, site] = -1j * params.gamma0 * np.exp(1j * params.phase * abs(m - site))
            if m == site:
                matrix[m, site] += params.omega0_offset
    return matrix


def _delta(n):
    return np.eye(n, dtype=np.complex128)


def _kinetic(coupling, k):
    n = coupling.shape[0]
    delta = _delta(n)
    if k == 1:
        return coupling.copy()
    if k == 2:
        tensor = np.einsum('ac,bd->abcd', coupling, delta) + np.einsum(
            'ac,bd->abcd', delta, coupling
        )
    else:
        tensor = (
            np.einsum('ad,be,cf->abcdef', coupling, delta, delta)
            + np.einsum('ad,be,cf->abcdef', delta, coupling, delta)
            + np.einsum('ad,be,cf->abcdef', delta, delta, coupling)
        )
    return tensor.reshape(n ** k, n ** k)


def _interaction(n, k, chi):
    # chi for every pair of photons sharing an atom
    energies = np.zeros((n,) * k)
    for index in np.ndindex(*energies.shape):
        energies[index] = chi * sum(
            1 for first, second in itertools.combinations(index, 2) if first == second
        )
    return np.diag(energies.reshape(-1).astype(np.complex128))


def _symmetric_basis(n, k):
    dimension = n ** k
    permutations = list(itertools.permutations(range(k)))
    flat = np.arange(dimension).reshape((n,) * k)
    symmetrizer = sparse.csr_matrix((dimension, dimension), dtype=float)
    for permutation in permutations:
        target = flat.transpose(permutation).reshape(-1)
        symmetrizer = symmetrizer + sparse.csr_matrix(
            (np.ones(dimension), (np.arange(dimension), target)), shape=(dimension, dimension)
        )
    symmetrizer = symmetrizer / len(permutations)

    basis = np.zeros((dimension, symmetric_sector_size(n, k)))
    multisets = itertools.combinations_with_replacement(range(n), k)
    for column, multiset in enumerate(multisets):
        unit = np.zeros(dimension)
        unit[np.ravel_multi_index(multiset, (n,) * k)] = 1.0
        vector = symmetrizer @ unit
        basis[:, column] = vector / np.linalg.norm(vector)
    return basis


def full_basis_reference_spectrum(params, k, chi, restrict_to_symmetric=True):
    """Spectrum of the literal N**k Hamiltonian with on-site repulsion ``chi``."""
    n = params.n_atoms
    dimension = n ** k
    if dimension > REFERENCE_LIMIT:
        raise TooLargeException(dimension, REFERENCE_LIMIT)

    matrix = _kinetic(_coupling(params), k) + _interaction(n, k, chi)
    if restrict_to_symmetric:
        basis = _symmetric_basis(n, k)
        raw, vectors = np.linalg.eig(basis.conj().T @ matrix @ basis)
        vectors = basis @ vectors
    else:
        raw, vectors = np.linalg.eig(matrix)

    order = sort_order(raw)
    raw = raw[order]
    vectors = fix_gauge(vectors[:, order])
    residuals = compute_residuals(matrix, raw, vectors)
    pairs = tuple(
        EigenPair(complex(value / k), complex(value), vectors[:, index], float(residuals[index]))
        for index, value in enumerate(raw)
    )
    logger.debug('Reference spectrum n=%s k=%s chi=%s: %s states', n, k, chi, len(pairs))
    diagnostics = {'solver': 'numpy-eig', 'dimension': len(pairs), 'chi': chi}
    return SpectrumResult(params, k, pairs, diagnostics)


def hardcore_sector(result, chi):
    """Eigenpairs of a large-``chi`` reference spectrum with no doubly occupied atom."""
    pairs = tuple(pair for pair in result if abs(pair.raw_energy) < chi / 2)
    return SpectrumResult(result.params, result.k, pairs, dict(result.diagnostics))


def noninteracting_triples(singles, k=3):
    singles = np.asarray(singles, dtype=np.complex128).ravel()
    averages = [
        sum(group) / k for group in itertools.combinations_with_replacement(singles.tolist(), k)
    ]
    averages = np.array(averages, dtype=np.complex128)
    return averages[sort_order(averages)]


def max_deviation(first, second):
    """Largest distance between two eigenvalue multisets under the best matching."""
    first = np.asarray(first, dtype=np.complex128).ravel()
    second = np.asarray(second, dtype=np.complex128).ravel()
    if first.size != second.size:
        raise DimensionMismatchException(first.size, second.size)
    if not first.size:
        return 0.0
    distances = np.abs(first[:, None] - second[None, :])
    rows, columns = linear_sum_assignment(distances)
    return float(distances[rows, columns].max())


def symmetric_sector_size(n, k):
    return math.comb(n + k - 1, k)

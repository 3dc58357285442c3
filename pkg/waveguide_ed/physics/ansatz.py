# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import enum
import itertools
import logging

from dataclasses import dataclass, field

import numpy as np

from scipy import sparse
from scipy.linalg import eig, eigh, lstsq, qr, svd

from waveguide_ed.exceptions import (
    DegenerateProjectionException,
    InvalidArityException,
    LengthMismatchException,
    ZeroVectorException,
)

from .basis import symmetrize_to_full
from .windows import Windows, WindowKind

logger = logging.getLogger(__name__)

PROJECTION_TOLERANCE = 1e-12
DEGENERACY_TOLERANCE = 1e-9
DEFAULT_FACTOR_MASS_THRESHOLD = 0.6
MAX_SWEEPS = 30
SWEEP_TOLERANCE = 1e-12
ANSATZ_ARITIES = (2, 3)


class FactorKind(enum.Enum):
    EIGENSTATE = 'eigenstate'
    EDGE_LOCALIZED = 'edge_localized'
    CENTRE_LOCALIZED = 'centre_localized'
    FREE = 'free'


_KIND_BY_WINDOW = {
    WindowKind.EDGE: FactorKind.EDGE_LOCALIZED,
    WindowKind.CENTRE: FactorKind.CENTRE_LOCALIZED,
    WindowKind.FREE: FactorKind.FREE,
}


@dataclass(frozen=True, eq=False)
class FactorSet:
    """Normalized single-polariton factors, one row per photon."""

    vectors: np.ndarray = field(repr=False)
    kinds: tuple
    eigen_indices: tuple = None

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    @classmethod
    def from_vectors(cls, vectors, kinds=None, eigen_indices=None):
        vectors = np.array(vectors, dtype=np.complex128, ndmin=2)
        norms = np.linalg.norm(vectors, axis=1)
        if not np.all(norms > 0):
            raise ZeroVectorException('factor')
        if kinds is None:
            kinds = (FactorKind.FREE,) * len(vectors)
        return cls(vectors / norms[:, None], tuple(kinds), eigen_indices)

    @classmethod
    def from_eigenstates(cls, spectrum, indices):
        vectors = [spectrum[index].vector for index in indices]
        kinds = (FactorKind.EIGENSTATE,) * len(indices)
        return cls.from_vectors(vectors, kinds, tuple(int(index) for index in indices))

    def relabel(self, windows, threshold=DEFAULT_FACTOR_MASS_THRESHOLD):
        kinds = tuple(
            _KIND_BY_WINDOW[windows.kind_of(vector, threshold)] for vector in self.vectors
        )
        return FactorSet(self.vectors, kinds, self.eigen_indices)

    def count(self, kind):
        return sum(1 for factor_kind in self.kinds if factor_kind is kind)


@dataclass(frozen=True)
class AnsatzScores:
    symmetric_fit: float
    fermionic_overlap: float
    subradiant_symmetric_overlap: float = None
    subradiant_fermionic_overlap: float = None

    def to_dict(self):
        return {
            'symmetric_fit': self.symmetric_fit,
            'fermionic_overlap': self.fermionic_overlap,
            'subradiant_symmetric_overlap': self.subradiant_symmetric_overlap,
            'subradiant_fermionic_overlap': self.subradiant_fermionic_overlap,
        }


def _parity(permutation):
    inversions = sum(
        1
        for first, second in itertools.combinations(range(len(permutation)), 2)
        if permutation[first] > permutation[second]
    )
    return -1 if inversions % 2 else 1


def _multilinear(gathered, signed):
    """Permanent (or determinant) of gathered[rows, m, cols] for every m."""
    size = gathered.shape[0]
    result = np.zeros(gathered.shape[1], dtype=np.complex128)
    for permutation in itertools.permutations(range(size)):
        term = np.ones(gathered.shape[1], dtype=np.complex128)
        for row, column in enumerate(permutation):
            term = term * gathered[row, :, column]
        result += _parity(permutation) * term if signed else term
    return result


def _gather(factors, basis):
    vectors = factors.vectors if isinstance(factors, FactorSet) else np.asarray(factors)
    if len(vectors) != basis.k:
        raise InvalidArityException(len(vectors), (basis.k,))
    if vectors.shape[1] != basis.n_atoms:
        raise LengthMismatchException(basis.n_atoms, vectors.shape[1])
    return vectors[:, basis.tuples]


def _normalized(amplitudes):
    norm = np.linalg.norm(amplitudes)
    if norm < PROJECTION_TOLERANCE:
        raise DegenerateProjectionException(float(norm), PROJECTION_TOLERANCE)
    return amplitudes / norm


def symmetric_product(factors, basis):
    return _normalized(_multilinear(_gather(factors, basis), signed=False))


def fermionic_product(factors, basis):
    # the reduced basis keeps the a<b<c representative, where the
    # alternating sum over orderings is the determinant
    return _normalized(_multilinear(_gather(factors, basis), signed=True))


def overlap(first, second):
    first = np.asarray(first).ravel()
    second = np.asarray(second).ravel()
    if first.size != second.size:
        raise LengthMismatchException(first.size, second.size)
    first_norm = np.vdot(first, first).real
    second_norm = np.vdot(second, second).real
    if first_norm == 0 or second_norm == 0:
        raise ZeroVectorException()
    return float(abs(np.vdot(first, second)) ** 2 / (first_norm * second_norm))


def subspace_overlap(state, vectors):
    """Weight of ``state`` inside the span of ``vectors`` (columns)."""
    state = np.asarray(state).ravel()
    norm = np.vdot(state, state).real
    if norm == 0:
        raise ZeroVectorException()
    vectors = np.asarray(vectors).reshape(state.size, -1)
    if vectors.shape[0] != state.size:
        raise LengthMismatchException(state.size, vectors.shape[0])
    orthonormal, triangle = qr(vectors, mode='economic')
    keep = np.abs(np.diag(triangle)) > PROJECTION_TOLERANCE
    if not keep.any():
        raise ZeroVectorException('subspace')
    projection = orthonormal[:, keep].conj().T @ state
    return float(np.vdot(projection, projection).real / norm)


def most_subradiant(single_spectrum, count=3):
    decay_rates = -single_spectrum.energies.imag
    return tuple(int(index) for index in np.argsort(decay_rates, kind='stable')[:count])


def degenerate_partners(energies, index, tolerance=DEGENERACY_TOLERANCE):
    return tuple(int(i) for i in np.flatnonzero(np.abs(energies - energies[index]) < tolerance))


def eigenstate_ansatz_overlap(
    state, single_spectrum, indices, basis, builder, tolerance=DEGENERACY_TOLERANCE
):
    """Overlap of ``state`` with the ansatz built from single-photon eigenstates.

    When a chosen eigenstate is quasi-degenerate, every choice within its
    degenerate subspace contributes and the overlap is taken against the
    span of all resulting ansatz vectors.
    """
    energies = single_spectrum.energies
    choices = [degenerate_partners(energies, index, tolerance) for index in indices]
    candidates = []
    for combination in itertools.product(*choices):
        if len(set(combination)) < len(combination):
            continue
        factors = FactorSet.from_eigenstates(single_spectrum, combination)
        try:
            candidates.append(builder(factors, basis))
        except DegenerateProjectionException:
            logger.debug('Ansatz from eigenstates %s vanishes', combination)
    if not candidates:
        raise DegenerateProjectionException(0.0, PROJECTION_TOLERANCE)
    if len(candidates) == 1:
        return overlap(candidates[0], state)
    return subspace_overlap(state, np.column_stack(candidates))


def natural_orbitals(state, basis):
    tensor = symmetrize_to_full(state, basis)
    matrix = tensor.reshape(basis.n_atoms, -1)
    if not np.any(matrix):
        raise ZeroVectorException()
    left, _, _ = svd(matrix, full_matrices=False, check_finite=False)
    return left[:, : basis.k]


def _position_seed(orbitals):
    sites = np.arange(orbitals.shape[0], dtype=float)
    projected = orbitals.conj().T @ (sites[:, None] * orbitals)
    _, rotation = eigh(projected)
    return orbitals @ rotation


def _laplacian_seed(orbitals):
    # open-chain hopping; its eigenvectors are the standing waves of the array
    n = orbitals.shape[0]
    hopping = np.eye(n, k=1) + np.eye(n, k=-1)
    _, rotation = eigh(orbitals.conj().T @ hopping @ orbitals)
    return orbitals @ rotation


def _hamiltonian_seed(orbitals, single_hamiltonian):
    projected = orbitals.conj().T @ single_hamiltonian @ orbitals
    _, rotation = eig(projected)
    return orbitals @ rotation


def _minor_coefficients(gathered, row, column):
    rows = [r for r in range(gathered.shape[0]) if r != row]
    columns = [c for c in range(gathered.shape[2]) if c != column]
    if not rows:
        return np.ones(gathered.shape[1], dtype=np.complex128)
    return _multilinear(gathered[np.ix_(rows, range(gathered.shape[1]), columns)], False)


def _refine(vectors, state, basis):
    """Alternating least squares on the hard-core symmetric product."""
    vectors = np.array(vectors, dtype=np.complex128)
    rows = np.repeat(np.arange(basis.size), basis.k)
    columns = basis.tuples.ravel()
    previous = -1.0
    fit = 0.0
    for _ in range(MAX_SWEEPS):
        for factor in range(basis.k):
            gathered = vectors[:, basis.tuples]
            coefficients = np.column_stack(
                [_minor_coefficients(gathered, factor, column) for column in range(basis.k)]
            )
            linear = sparse.csr_matrix(
                (coefficients.ravel(), (rows, columns)), shape=(basis.size, basis.n_atoms)
            )
            adjoint = linear.conj().T
            normal = (adjoint @ linear).toarray()
            solution, _, _, _ = lstsq(normal, adjoint @ state, check_finite=False)
            norm = np.linalg.norm(solution)
            if norm == 0:
                return vectors, 0.0
            vectors[factor] = solution / norm
        amplitudes = _multilinear(vectors[:, basis.tuples], signed=False)
        fit = overlap(amplitudes, state) if np.any(amplitudes) else 0.0
        if fit - previous < SWEEP_TOLERANCE:
            break
        previous = fit
    return vectors, fit


def extract_factors(
    state,
    basis,
    windows=None,
    threshold=DEFAULT_FACTOR_MASS_THRESHOLD,
    single_hamiltonian=None,
):
    """Best symmetric-product factors of ``state`` and the squared overlap they reach."""
    if basis.k not in ANSATZ_ARITIES:
        raise InvalidArityException(basis.k, ANSATZ_ARITIES)
    state = np.asarray(state, dtype=np.complex128)
    orbitals = natural_orbitals(state, basis)
    state = state / np.linalg.norm(state)

    seeds = [orbitals.T, _position_seed(orbitals).T, _laplacian_seed(orbitals).T]
    if single_hamiltonian is not None:
        seeds.append(_hamiltonian_seed(orbitals, single_hamiltonian).T)

    best_vectors, best_fit = seeds[0], -1.0
    for seed in seeds:
        vectors, fit = _refine(seed, state, basis)
        if fit > best_fit:
            best_vectors, best_fit = vectors, fit

    if windows is None:
        windows = Windows.for_array(basis.n_atoms)
    factors = FactorSet.from_vectors(best_vectors).relabel(windows, threshold)
    logger.debug('Extracted factors %s with fit %.4f', factors.kinds, best_fit)
    return factors, best_fit


def score_state(
    state,
    basis,
    windows=None,
    threshold=DEFAULT_FACTOR_MASS_THRESHOLD,
    single_spectrum=None,
):
    factors, fit = extract_factors(state, basis, windows, threshold)
    orbitals = FactorSet.from_vectors(natural_orbitals(state, basis).T)
    try:
        fermionic = overlap(fermionic_product(orbitals, basis), state)
    except DegenerateProjectionException:
        fermionic = 0.0

    subradiant_symmetric = subradiant_fermionic = None
    if single_spectrum is not None:
        indices = most_subradiant(single_spectrum, basis.k)
        subradiant_symmetric = _safe_ansatz_overlap(
            state, single_spectrum, indices, basis, symmetric_product
        )
        subradiant_fermionic = _safe_ansatz_overlap(
            state, single_spectrum, indices, basis, fermionic_product
        )

    scores = AnsatzScores(fit, fermionic, subradiant_symmetric, subradiant_fermionic)
    return factors, scores


def _safe_ansatz_overlap(state, single_spectrum, indices, basis, builder):
    try:
        return eigenstate_ansatz_overlap(state, single_spectrum, indices, basis, builder)
    except DegenerateProjectionException:
        logger.warning('Eigenstate ansatz %s vanishes on the hard-core basis', builder.__name__)
        return 0.0

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import itertools
import logging
import math

import numpy as np

from waveguide_ed.exceptions import (
    InvalidArityException,
    LengthMismatchException,
    NonzeroDoubleOccupancyException,
    NotSymmetricException,
    TooFewAtomsException,
    UnknownOccupationException,
)

logger = logging.getLogger(__name__)

SUPPORTED_ARITIES = (1, 2, 3)
SYMMETRY_TOLERANCE = 1e-10

# C(60, 3) comfortably fits, keep the dense index signed 64 bits anyway
INDEX_DTYPE = np.int64


class BasisMap:
    """Lexicographic enumeration of hard-core occupation tuples.

    Tuples are strictly increasing 0-based site indices. ``full_to_reduced``
    maps the flat index of a tensor entry (C order over N**k) to the dense
    index of its sorted tuple, or -1 when the entry has a repeated site.
    """

    def __init__(self, n_atoms, k):
        self.n_atoms = n_atoms
        self.k = k
        self.tuples = np.array(
            list(itertools.combinations(range(n_atoms), k)), dtype=INDEX_DTYPE
        ).reshape(-1, k)
        self.size = len(self.tuples)
        self._forward = {tuple(row): index for index, row in enumerate(self.tuples.tolist())}
        self._full_to_reduced = None

    def __len__(self):
        return self.size

    def __repr__(self):
        return f'<BasisMap n_atoms={self.n_atoms} k={self.k} size={self.size}>'

    def index(self, sites):
        try:
            return self._forward[tuple(int(site) for site in sites)]
        except KeyError:
            raise UnknownOccupationException(sites)

    def occupation(self, index):
        return tuple(int(site) for site in self.tuples[index])

    @property
    def full_shape(self):
        return (self.n_atoms,) * self.k

    @property
    def full_to_reduced(self):
        if self._full_to_reduced is None:
            table = np.full(self.n_atoms ** self.k, -1, dtype=INDEX_DTYPE)
            for permutation in itertools.permutations(range(self.k)):
                flat = self.flat_indices(self.tuples[:, permutation])
                table[flat] = np.arange(self.size, dtype=INDEX_DTYPE)
            self._full_to_reduced = table
        return self._full_to_reduced

    def flat_indices(self, sites):
        return np.ravel_multi_index(tuple(np.asarray(sites).T), self.full_shape)

    def rank(self, sites):
        """Dense index of each row of ``sites`` (any order), -1 if a site repeats."""
        return self.full_to_reduced[self.flat_indices(sites)]


def enumerate_basis(n_atoms, k):
    if k not in SUPPORTED_ARITIES:
        raise InvalidArityException(k, SUPPORTED_ARITIES)
    if n_atoms < k:
        raise TooFewAtomsException(n_atoms, k)

    basis = BasisMap(n_atoms, k)
    logger.debug('Enumerated %s', basis)
    return basis


def coincidence_mask(n_atoms, k):
    """Boolean N**k tensor marking entries with at least one repeated site."""
    grids = np.indices((n_atoms,) * k)
    mask = np.zeros((n_atoms,) * k, dtype=bool)
    for first, second in itertools.combinations(range(k), 2):
        mask |= grids[first] == grids[second]
    return mask


def symmetrize_to_full(reduced, basis):
    reduced = np.asarray(reduced)
    if reduced.shape != (basis.size,):
        raise LengthMismatchException(basis.size, reduced.size)

    weight = 1.0 / math.sqrt(math.factorial(basis.k))
    tensor = np.zeros(basis.full_shape, dtype=np.result_type(reduced, np.complex128))
    for permutation in itertools.permutations(range(basis.k)):
        tensor[tuple(basis.tuples[:, permutation].T)] = reduced * weight
    return tensor


def reduce_from_full(tensor, basis, tolerance=SYMMETRY_TOLERANCE):
    tensor = np.asarray(tensor)
    if tensor.shape != basis.full_shape:
        raise LengthMismatchException(basis.n_atoms ** basis.k, tensor.size)

    if basis.k > 1:
        coincident = np.abs(tensor[coincidence_mask(basis.n_atoms, basis.k)])
        if coincident.size and coincident.max() > tolerance:
            raise NonzeroDoubleOccupancyException(float(coincident.max()), tolerance)

        for permutation in itertools.permutations(range(basis.k)):
            deviation = np.abs(tensor - tensor.transpose(permutation)).max()
            if deviation > tolerance:
                raise NotSymmetricException(float(deviation), tolerance)

    scale = math.sqrt(math.factorial(basis.k))
    return tensor[tuple(basis.tuples.T)] * scale

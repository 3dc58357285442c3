# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import itertools
import math
import unittest

import numpy as np

from hamcrest import (
    assert_that,
    calling,
    close_to,
    equal_to,
    greater_than_or_equal_to,
    less_than_or_equal_to,
    raises,
)
from mock import Mock

from waveguide_ed.exceptions import InvalidArityException, ZeroVectorException

from ..basis import enumerate_basis
from ..hamiltonian import build_kphoton_hardcore
from ..model import ModelParams
from ..observables import (
    decay_rate,
    entanglement_entropy,
    evaluate_spectrum,
    ipr,
    marginal,
    probability_cube,
    tensor_entropy,
)
from ..spectra import diagonalize


def unit_state(basis, sites):
    state = np.zeros(basis.size, dtype=complex)
    state[basis.index(sites)] = 1.0
    return state


def orthonormal_orbitals(n_atoms, count, seed=0):
    rng = np.random.default_rng(seed)
    matrix = rng.normal(size=(n_atoms, count)) + 1j * rng.normal(size=(n_atoms, count))
    orbitals, _ = np.linalg.qr(matrix)
    return orbitals.T


class TestIpr(unittest.TestCase):
    def test_single_component(self):
        assert_that(ipr([0, 0, 1j, 0]), close_to(1, 1e-15))

    def test_uniform(self):
        assert_that(ipr(np.ones(4) / 2), close_to(0.25, 1e-15))

    def test_scale_invariant(self):
        vector = 7 * np.array([1, 1, 0, 0, 0]) / math.sqrt(2)

        assert_that(ipr(vector), close_to(0.5, 1e-15))

    def test_zero(self):
        assert_that(calling(ipr).with_args(np.zeros(3)), raises(ZeroVectorException))


class TestEntropy(unittest.TestCase):
    def test_product_state(self):
        orbital = orthonormal_orbitals(6, 1)[0]
        tensor = np.einsum('a,b,c->abc', orbital, orbital, orbital)

        entropy, weights = tensor_entropy(tensor)

        assert_that(entropy, close_to(0, 1e-12))
        assert_that(weights[0], close_to(1, 1e-12))

    def test_slater_state(self):
        first, second, third = orthonormal_orbitals(6, 3, seed=3)
        tensor = np.zeros((6, 6, 6), dtype=complex)
        for permutation in itertools.permutations(range(3)):
            sign = np.linalg.det(np.eye(3)[list(permutation)])
            factors = [(first, second, third)[index] for index in permutation]
            tensor += sign * np.einsum('a,b,c->abc', *factors)

        entropy, weights = tensor_entropy(tensor)

        assert_that(entropy, close_to(math.log(3), 1e-10))
        for weight in weights[:3]:
            assert_that(weight, close_to(1 / 3, 1e-10))

    def test_unit_tuple(self):
        basis = enumerate_basis(6, 3)

        entropy, _ = entanglement_entropy(unit_state(basis, (1, 3, 4)), basis)

        assert_that(entropy, close_to(math.log(3), 1e-12))

    def test_invariances(self):
        basis = enumerate_basis(8, 3)
        rng = np.random.default_rng(1)
        state = rng.normal(size=basis.size) + 1j * rng.normal(size=basis.size)

        reference, _ = entanglement_entropy(state, basis)

        scaled, _ = entanglement_entropy(3.5 * np.exp(0.7j) * state, basis)
        assert_that(scaled, close_to(reference, 1e-10))
        for leg in (1, 2):
            other, _ = entanglement_entropy(state, basis, leg=leg)
            assert_that(other, close_to(reference, 1e-10))

    def test_invalid_arity(self):
        basis = enumerate_basis(5, 1)

        assert_that(
            calling(entanglement_entropy).with_args(np.ones(5), basis),
            raises(InvalidArityException),
        )


class TestMarginal(unittest.TestCase):
    def test_unit_tuple(self):
        basis = enumerate_basis(4, 3)

        result = marginal(unit_state(basis, (0, 1, 2)), basis)

        assert_that(np.abs(result - [1 / 3, 1 / 3, 1 / 3, 0]).max(), close_to(0, 1e-15))

    def test_uniform(self):
        basis = enumerate_basis(4, 3)

        result = marginal(np.ones(basis.size) / 2, basis)

        assert_that(np.abs(result - 0.25).max(), close_to(0, 1e-15))

    def test_zero(self):
        basis = enumerate_basis(4, 3)

        assert_that(
            calling(marginal).with_args(np.zeros(basis.size), basis),
            raises(ZeroVectorException),
        )


class TestProbabilityCube(unittest.TestCase):
    def test_unit_tuple(self):
        basis = enumerate_basis(5, 3)

        cube = probability_cube(unit_state(basis, (0, 2, 4)), basis)

        assert_that(cube.n, equal_to(5))
        assert_that(np.count_nonzero(cube.values), equal_to(6))
        assert_that(cube.values[4, 0, 2], close_to(1 / 6, 1e-15))
        assert_that(cube.normalization, close_to(1, 1e-15))
        assert_that(cube.symmetry_deviation(), equal_to(0))

    def test_hard_core_diagonal(self):
        basis = enumerate_basis(6, 3)
        rng = np.random.default_rng(2)

        cube = probability_cube(rng.normal(size=basis.size), basis)

        for m in range(6):
            assert_that(cube.values[m, m, :].max(), equal_to(0))
            assert_that(cube.values[:, m, m].max(), equal_to(0))
        assert_that(cube.normalization, close_to(1, 1e-12))

    def test_arity(self):
        basis = enumerate_basis(5, 2)

        assert_that(
            calling(probability_cube).with_args(np.ones(basis.size), basis),
            raises(InvalidArityException),
        )


class TestDecayRate(unittest.TestCase):
    def test_decay_rate(self):
        assert_that(
            decay_rate(Mock(energy_per_photon=10.7298 - 37.58969j)), close_to(37.58969, 1e-12)
        )
        assert_that(decay_rate(Mock(energy_per_photon=-0.010 - 2.272e-8j)), equal_to(2.272e-8))

    def test_real_energy(self):
        result = decay_rate(Mock(energy_per_photon=complex(1.5, 0.0)))

        assert_that(result, equal_to(0.0))
        assert_that(math.copysign(1, result), equal_to(1))


class TestEvaluateSpectrum(unittest.TestCase):
    def test_properties(self):
        n_atoms = 12
        hamiltonian = build_kphoton_hardcore(ModelParams.hard_core(n_atoms, 1.0), 3)
        result = diagonalize(hamiltonian)

        records = evaluate_spectrum(result, hamiltonian)

        assert_that(len(records), equal_to(hamiltonian.dimension))
        for record in records:
            assert_that(record.ipr, greater_than_or_equal_to(1 / hamiltonian.dimension - 1e-12))
            assert_that(record.ipr, less_than_or_equal_to(1 + 1e-12))
            assert_that(record.entropy, greater_than_or_equal_to(0))
            assert_that(record.entropy, less_than_or_equal_to(math.log(n_atoms) + 1e-10))
            assert_that(record.marginal.sum(), close_to(1, 1e-10))
            for leg in (1, 2):
                other, _ = entanglement_entropy(record.eigen.vector, hamiltonian.basis, leg)
                assert_that(other, close_to(record.entropy, 1e-10))

    def test_workers(self):
        hamiltonian = build_kphoton_hardcore(ModelParams.hard_core(7, 0.2), 2)
        result = diagonalize(hamiltonian)

        sequential = evaluate_spectrum(result, hamiltonian)
        threaded = evaluate_spectrum(result, hamiltonian, workers=3)

        assert_that([record.index for record in threaded], equal_to(list(range(len(result)))))
        for first, second in zip(sequential, threaded):
            assert_that(first.entropy, close_to(second.entropy, 1e-12))

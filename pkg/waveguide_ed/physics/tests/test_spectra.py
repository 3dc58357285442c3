# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import math
import unittest

import numpy as np

from hamcrest import (
    assert_that,
    calling,
    close_to,
    equal_to,
    has_entries,
    has_properties,
    less_than,
    less_than_or_equal_to,
    raises,
)
from mock import Mock, patch

from waveguide_ed.exceptions import (
    DimensionMismatchException,
    ResidualToleranceException,
    SolverFailureException,
)

from ..hamiltonian import build_kphoton_hardcore, build_single_excitation
from ..model import ModelParams
from ..spectra import diagonalize, fix_gauge, verify_residuals

PHASES = (0.02, 0.2, 1.0, math.pi + 0.3)


def build(n_atoms, phase, k):
    params = ModelParams.hard_core(n_atoms, phase)
    if k == 1:
        return build_single_excitation(params)
    return build_kphoton_hardcore(params, k)


class TestDiagonalize(unittest.TestCase):
    def test_passivity_and_trace(self):
        for n_atoms in (6, 12):
            for phase in PHASES:
                for k in (1, 2, 3):
                    hamiltonian = build(n_atoms, phase, k)

                    result = diagonalize(hamiltonian)

                    assert_that(len(result), equal_to(hamiltonian.dimension))
                    assert_that(result.energies.imag.max(), less_than_or_equal_to(1e-10))
                    trace = hamiltonian.trace()
                    error = abs(result.raw_energies.sum() - trace) / abs(trace)
                    assert_that(error, less_than_or_equal_to(1e-9))

    def test_per_photon_energy(self):
        result = diagonalize(build(7, 0.2, 3))

        for pair in result:
            assert_that(abs(pair.energy_per_photon * 3 - pair.raw_energy), close_to(0, 1e-12))

    def test_sorted(self):
        result = diagonalize(build(8, 1.0, 2))

        keys = [(value.real, value.imag) for value in result.raw_energies]
        assert_that(keys, equal_to(sorted(keys)))

    def test_gauge(self):
        result = diagonalize(build(8, 0.2, 3))

        for pair in result:
            pivot = pair.vector[np.argmax(np.abs(pair.vector))]
            assert_that(abs(pivot.imag), close_to(0, 1e-14))
            assert_that(pivot.real, close_to(abs(pivot), 1e-14))
            assert_that(np.linalg.norm(pair.vector), close_to(1, 1e-12))

    def test_residuals(self):
        hamiltonian = build(10, 0.02, 3)

        result = diagonalize(hamiltonian)

        assert_that(result.max_residual, less_than(1e-8))
        assert_that(
            result.diagnostics,
            has_entries(solver='lapack-geev', dimension=120),
        )

    def test_residual_tolerance(self):
        assert_that(
            calling(diagonalize).with_args(build(5, 0.2, 2), residual_tolerance=-1.0),
            raises(ResidualToleranceException),
        )

    def test_solver_failure(self):
        hamiltonian = build(5, 0.2, 2)
        geev = Mock(return_value=(np.zeros(10), None, np.zeros((10, 10)), 4))
        geev_lwork = Mock(return_value=(np.array([20.0]), 0))

        with patch('waveguide_ed.physics.spectra.get_lapack_funcs') as get_lapack_funcs:
            get_lapack_funcs.return_value = (geev, geev_lwork)

            assert_that(
                calling(diagonalize).with_args(hamiltonian),
                raises(
                    SolverFailureException,
                    matching=has_properties(details=has_entries(failed_range=[0, 4])),
                ),
            )


class TestVerifyResiduals(unittest.TestCase):
    def test_ok(self):
        hamiltonian = build(6, 1.0, 3)
        result = diagonalize(hamiltonian)

        report = verify_residuals(result, hamiltonian)

        assert_that(report, has_properties(ok=True, flagged=[]))
        assert_that(report.max_residual, less_than(1e-8))

    def test_flagged(self):
        hamiltonian = build(6, 1.0, 3)
        result = diagonalize(hamiltonian)
        other = build(6, 0.2, 3)

        report = verify_residuals(result, other)

        assert_that(report.ok, equal_to(False))

    def test_dimension_mismatch(self):
        result = diagonalize(build(6, 1.0, 3))

        assert_that(
            calling(verify_residuals).with_args(result, build(7, 1.0, 3)),
            raises(DimensionMismatchException),
        )


class TestFixGauge(unittest.TestCase):
    def test_phase_and_scale(self):
        vectors = np.array([[1j, 0.5], [-3.0, 2j]])

        result = fix_gauge(vectors)

        assert_that(abs(result[1, 0] - 3 / math.sqrt(10)), close_to(0, 1e-15))
        assert_that(abs(result[1, 1] - 2 / math.sqrt(4.25)), close_to(0, 1e-15))

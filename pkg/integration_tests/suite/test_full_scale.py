# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import copy
import functools
import math
import os
import unittest

import numpy as np

from hamcrest import (
    assert_that,
    equal_to,
    greater_than,
    greater_than_or_equal_to,
    has_length,
    less_than,
    less_than_or_equal_to,
)

from waveguide_ed.config import _DEFAULT_CONFIG
from waveguide_ed.physics.ansatz import (
    eigenstate_ansatz_overlap,
    fermionic_product,
    most_subradiant,
    symmetric_product,
)
from waveguide_ed.physics.classifier import ClassifierThresholds, Exotic, Region
from waveguide_ed.pipeline import Pipeline

N_ATOMS = 42
SUPERRADIANT_ENERGY = 10.7298 - 37.58969j
CROSS_ENERGY = 3.5414 - 11.8320j
CHAOTIC_ENERGY = -0.0727 - 0.0004j
FERMIONIC_ENERGY = -0.010 - 2.272e-8j
SCATTERING_ENERGY = -6.182 - 2.156j
REFERENCE_ENERGIES = (
    SUPERRADIANT_ENERGY,
    CROSS_ENERGY,
    CHAOTIC_ENERGY,
    -0.1339 - 0.0029j,
    FERMIONIC_ENERGY,
    SCATTERING_ENERGY,
)


def make_pipeline():
    config = copy.deepcopy(_DEFAULT_CONFIG)
    config['model'].update(n_atoms=N_ATOMS)
    config['solver']['large'] = True
    config['workers'] = os.cpu_count() or 1
    return Pipeline(config)


@functools.lru_cache(maxsize=None)
def solved(phase):
    pipeline = make_pipeline()
    return pipeline, pipeline.solve(pipeline.run_config(phase=phase))


@functools.lru_cache(maxsize=None)
def records(phase):
    pipeline, run = solved(phase)
    return pipeline.evaluate(run)


@functools.lru_cache(maxsize=None)
def labels(phase):
    pipeline, run = solved(phase)
    return pipeline.classify(run, records(phase))


@functools.lru_cache(maxsize=None)
def reference_label(energy):
    pipeline, run = solved(0.02)
    index = int(np.argmin(np.abs(run.spectrum.energies - energy)))
    (label,) = pipeline.classify(run, [records(0.02)[index]])
    return label


def exotic_count(phase, kind):
    return sum(1 for label in labels(phase) if kind in label.exotic)


class TestReferenceSpectrum(unittest.TestCase):
    def test_dimension(self):
        _, run = solved(0.02)

        assert_that(run.spectrum, has_length(11480))

    def test_reference_energies(self):
        _, run = solved(0.02)
        energies = run.spectrum.energies

        for reference in REFERENCE_ENERGIES:
            tolerance = max(1e-3, 0.05 * abs(reference.imag))
            close = (np.abs(energies.real - reference.real) <= 1e-3) & (
                np.abs(energies.imag - reference.imag) <= tolerance
            )
            assert_that(int(close.sum()), greater_than_or_equal_to(1))

    def test_fermionic_decay_rate(self):
        _, run = solved(0.02)
        energies = run.spectrum.energies
        index = int(np.argmin(np.abs(energies - FERMIONIC_ENERGY)))
        decay_rate = -energies[index].imag

        assert_that(decay_rate, greater_than_or_equal_to(1e-9))
        assert_that(decay_rate, less_than_or_equal_to(1e-7))


class TestFermionicCharacter(unittest.TestCase):
    def test_most_subradiant_state(self):
        pipeline, run = solved(0.02)
        singles = pipeline.single_spectrum(run.run)
        basis = run.hamiltonian.basis

        index = int(np.argmax(run.spectrum.energies.imag))
        state = run.spectrum[index].vector
        factors = most_subradiant(singles)

        fermionic = eigenstate_ansatz_overlap(state, singles, factors, basis, fermionic_product)
        symmetric = eigenstate_ansatz_overlap(state, singles, factors, basis, symmetric_product)

        assert_that(fermionic, greater_than(symmetric))


class TestExoticStates(unittest.TestCase):
    def test_trimer(self):
        assert_that(exotic_count(1.0, Exotic.TRIMER), greater_than_or_equal_to(1))

    def test_asymmetric_localized(self):
        assert_that(exotic_count(1.0, Exotic.ASYMMETRIC_LOCALIZED), greater_than_or_equal_to(1))

    def test_corner_state(self):
        assert_that(exotic_count(0.2, Exotic.CORNER_STATE), greater_than_or_equal_to(1))

    def test_trimer_edge(self):
        assert_that(exotic_count(math.pi + 0.3, Exotic.TRIMER_EDGE), greater_than_or_equal_to(1))


class TestRegionLabels(unittest.TestCase):
    def test_fermionic(self):
        assert_that(reference_label(FERMIONIC_ENERGY).region, equal_to(Region.FERMIONIC))

    def test_cross_state(self):
        assert_that(reference_label(CROSS_ENERGY).region, equal_to(Region.LOCALIZED))

    def test_scattering(self):
        assert_that(reference_label(SCATTERING_ENERGY).region, equal_to(Region.SCATTERING))

    def test_chaotic_factor_fit(self):
        region = ClassifierThresholds().region
        chaotic = reference_label(CHAOTIC_ENERGY).scores.symmetric_fit
        scattering = reference_label(SCATTERING_ENERGY).scores.symmetric_fit

        assert_that(chaotic, less_than_or_equal_to(region.chaotic_fit_max))
        assert_that(scattering, greater_than_or_equal_to(region.scattering_fit_min))
        assert_that(chaotic, less_than(scattering))

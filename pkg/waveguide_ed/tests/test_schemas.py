# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import json
import math
import unittest

import numpy as np

from mock import Mock
from hamcrest import (
    assert_that,
    calling,
    contains_exactly,
    contains_string,
    equal_to,
    has_entries,
    has_key,
    has_properties,
    not_,
    raises,
)

from ..exceptions import InvalidConfigurationException
from ..physics.classifier import (
    Evidence,
    Exotic,
    LocalisationSignature,
    Radiance,
    Region,
    StateLabel,
)
from ..schemas import StateDocumentSchema, load_run_section


def run_config(**overrides):
    config = {
        'model': {
            'n_atoms': 8,
            'phase': 0.2,
            'gamma0': 1.0,
            'omega0_offset': 0.0,
            'interaction': 'hard_core',
            'chi': None,
        },
        'excitations': 3,
        'solver': {'residual_tolerance': 1e-8, 'large': False},
        'classifier': {'version': 2, 'trimer': {'xi_max': 2.5}},
    }
    config.update(overrides)
    return config


class TestLoadRunSection(unittest.TestCase):
    def test_valid(self):
        result = load_run_section(run_config())

        assert_that(
            result,
            has_entries(
                excitations=3,
                solver={'residual_tolerance': 1e-8},
                classifier=has_entries(version=2, trimer={'xi_max': 2.5}),
            ),
        )

    def test_unknown_keys_excluded(self):
        config = run_config()
        config['model']['color'] = 'blue'

        result = load_run_section(config)

        assert_that(result['model'], not_(has_key('color')))

    def test_finite_without_chi(self):
        config = run_config()
        config['model']['interaction'] = 'finite'

        assert_that(
            calling(load_run_section).with_args(config),
            raises(
                InvalidConfigurationException,
                matching=has_properties(id_='invalid-configuration'),
            ),
        )

    def test_hard_core_with_chi(self):
        config = run_config()
        config['model']['chi'] = 3.0

        assert_that(
            calling(load_run_section).with_args(config), raises(InvalidConfigurationException)
        )

    def test_classifier_version(self):
        config = run_config(classifier={'version': 1})

        assert_that(
            calling(load_run_section).with_args(config), raises(InvalidConfigurationException)
        )

    def test_too_few_atoms(self):
        config = run_config()
        config['model']['n_atoms'] = 2

        assert_that(
            calling(load_run_section).with_args(config), raises(InvalidConfigurationException)
        )

    def test_excitations(self):
        assert_that(
            calling(load_run_section).with_args(run_config(excitations=4)),
            raises(InvalidConfigurationException),
        )

    def test_phase_must_be_positive(self):
        config = run_config()
        config['model']['phase'] = 0.0

        assert_that(
            calling(load_run_section).with_args(config), raises(InvalidConfigurationException)
        )


class TestStateDocumentSchema(unittest.TestCase):
    def test_dump(self):
        label = StateLabel(
            radiance=Radiance.SUBRADIANT,
            region=Region.LOCALIZED,
            signature=LocalisationSignature(1, 0, 2),
            exotic=frozenset({Exotic.TRIMER_EDGE, Exotic.TRIMER}),
            evidence={
                Exotic.TRIMER: Evidence(1.5, 4.0, 0.9, 0.01),
                Exotic.CORNER_STATE: None,
            },
            asymmetry=0.25,
            factors=Mock(kinds=[]),
        )

        result = StateDocumentSchema().dump(
            {
                'index': 3,
                'energy': 0.5 - 2j,
                'marginal': np.array([0.25, 0.75]),
                'labels': label,
                'cube_file': None,
            }
        )

        assert_that(
            result,
            has_entries(
                index=3,
                energy={'re': 0.5, 'im': -2.0},
                marginal=contains_exactly(0.25, 0.75),
                labels=has_entries(
                    radiance='subradiant',
                    region='localized',
                    signature=has_entries(n_edge=1, n_centre=0, n_free=2, status='resolved'),
                    exotic=['trimer', 'trimer_edge'],
                    evidence={
                        'trimer': {'xi_perp': 1.5, 'xi_along': 4.0, 'mass': 0.9, 'residual': 0.01},
                        'corner_state': None,
                    },
                ),
            ),
        )
        assert_that(result, not_(has_key('cube_file')))

    def test_infinite_decay_length_dumped_as_null(self):
        label = StateLabel(
            radiance=Radiance.ORDINARY,
            region=Region.LOCALIZED,
            signature=LocalisationSignature(0, 3, 0),
            exotic=frozenset({Exotic.TRIMER}),
            evidence={Exotic.TRIMER: Evidence(1.0, math.inf, 0.95, 0.0)},
            factors=None,
        )

        result = StateDocumentSchema().dump({'index': 0, 'labels': label})

        assert_that(
            result['labels']['evidence']['trimer'],
            equal_to({'xi_perp': 1.0, 'xi_along': None, 'mass': 0.95, 'residual': 0.0}),
        )
        assert_that(json.dumps(result, allow_nan=False), contains_string('"xi_along": null'))

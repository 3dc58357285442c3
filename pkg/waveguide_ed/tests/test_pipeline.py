# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import tempfile
import unittest

from pathlib import Path

from mock import patch
from hamcrest import (
    assert_that,
    calling,
    equal_to,
    has_properties,
    less_than,
    raises,
)

from ..exceptions import (
    InteractionModeException,
    InvalidArityException,
    InvalidConfigurationException,
    LargeRunNotAcknowledgedException,
    RunInterruptedException,
)
from ..physics.model import Interaction
from ..pipeline import Pipeline, RunConfig


def make_config(n_atoms=6, phase=0.2, excitations=3, **solver):
    config = {
        'workers': 1,
        'model': {
            'n_atoms': n_atoms,
            'phase': phase,
            'gamma0': 1.0,
            'omega0_offset': 0.0,
            'interaction': 'hard_core',
            'chi': None,
        },
        'excitations': excitations,
        'solver': {
            'large': False,
            'large_threshold_bytes': 1 << 30,
            'memory_budget_bytes': 1 << 30,
            'residual_tolerance': 1e-8,
            'dump_matrix': None,
        },
        'classifier': {'version': 2},
    }
    config['solver'].update(solver)
    return config


def finite(config, chi):
    config['model'].update(interaction='finite', chi=chi)
    return config


class TestRunConfig(unittest.TestCase):
    def test_from_config(self):
        run = RunConfig.from_config(make_config(), phase=1.0)

        assert_that(run.params, has_properties(n_atoms=6, phase=1.0, chi=None))
        assert_that(run.params.interaction, equal_to(Interaction.HARD_CORE))
        assert_that(run.k, equal_to(3))
        assert_that(run.thresholds.version, equal_to(2))
        assert_that(run.run_section['model']['phase'], equal_to(1.0))

    def test_dimensions(self):
        assert_that(RunConfig.from_config(make_config(n_atoms=42)).dimension, equal_to(11480))
        assert_that(
            RunConfig.from_config(make_config(n_atoms=5, excitations=1)).dimension, equal_to(5)
        )
        assert_that(
            RunConfig.from_config(finite(make_config(n_atoms=5), 0.0)).dimension, equal_to(125)
        )

    def test_invalid(self):
        assert_that(
            calling(RunConfig.from_config).with_args(make_config(n_atoms=2)),
            raises(InvalidConfigurationException),
        )

    def test_hash_follows_parameters(self):
        first = RunConfig.from_config(make_config()).provenance()
        second = RunConfig.from_config(make_config()).provenance()
        third = RunConfig.from_config(make_config(phase=1.0)).provenance()

        assert_that(first.config_hash, equal_to(second.config_hash))
        assert_that(first.config_hash == third.config_hash, equal_to(False))


class TestPipeline(unittest.TestCase):
    def test_large_run_gate(self):
        pipeline = Pipeline(make_config(large_threshold_bytes=1000))
        run = pipeline.run_config()

        assert_that(
            calling(pipeline.hamiltonian).with_args(run),
            raises(LargeRunNotAcknowledgedException),
        )

        acknowledged = Pipeline(make_config(large_threshold_bytes=1000, large=True))
        hamiltonian = acknowledged.hamiltonian(acknowledged.run_config())
        assert_that(hamiltonian.dimension, equal_to(20))

    def test_dump_matrix(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'h.bin'
            pipeline = Pipeline(make_config(n_atoms=5, dump_matrix=str(path)))

            hamiltonian = pipeline.hamiltonian(pipeline.run_config())

            assert_that(path.stat().st_size, equal_to(hamiltonian.dimension ** 2 * 16))

    def test_solve_and_classify(self):
        pipeline = Pipeline(make_config())
        solved = pipeline.solve(pipeline.run_config())
        records = pipeline.evaluate(solved)

        labels = pipeline.classify(solved, records)

        assert_that(len(labels), equal_to(20))
        for record, label in zip(records, labels):
            assert_that(record.labels, equal_to(label))
            assert_that(sum(label.signature.as_tuple()), equal_to(3))

    def test_threaded_classification(self):
        config = make_config(n_atoms=5, excitations=2)
        config['workers'] = 3
        pipeline = Pipeline(config)
        solved = pipeline.solve(pipeline.run_config())

        labels = pipeline.classify(solved, pipeline.evaluate(solved))

        assert_that(len(labels), equal_to(10))

    def test_classify_needs_hard_core(self):
        pipeline = Pipeline(finite(make_config(n_atoms=4), 1.0))

        assert_that(
            calling(pipeline.check_classifiable).with_args(pipeline.run_config()),
            raises(InteractionModeException),
        )

    def test_classify_needs_several_photons(self):
        pipeline = Pipeline(make_config(excitations=1))

        assert_that(
            calling(pipeline.check_classifiable).with_args(pipeline.run_config()),
            raises(InvalidArityException),
        )

    def test_hierarchy_without_interaction(self):
        pipeline = Pipeline(finite(make_config(n_atoms=5, excitations=2), 0.0))
        solved = pipeline.solve(pipeline.run_config())

        distances = pipeline.hierarchy_distances(solved)

        assert_that(len(distances), equal_to(25))
        assert_that(distances.max(), less_than(1e-9))

    def test_stop(self):
        pipeline = Pipeline(make_config())
        pipeline.check_stopped()

        pipeline.stop('SIGTERM')

        assert_that(calling(pipeline.check_stopped), raises(RunInterruptedException))
        assert_that(
            calling(pipeline.solve).with_args(pipeline.run_config()),
            raises(RunInterruptedException),
        )

    @patch('waveguide_ed.pipeline.diagonalize')
    @patch('waveguide_ed.pipeline.build_kphoton_hardcore')
    def test_stop_before_build(self, build, diagonalize):
        pipeline = Pipeline(make_config())
        run = pipeline.run_config()

        pipeline.stop('SIGTERM')

        assert_that(calling(pipeline.solve).with_args(run), raises(RunInterruptedException))
        build.assert_not_called()
        diagonalize.assert_not_called()

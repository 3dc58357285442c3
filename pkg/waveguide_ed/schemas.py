# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import math

import marshmallow

from marshmallow import EXCLUDE, ValidationError, fields, post_dump, validate, validates_schema

from .exceptions import InvalidConfigurationException
from .physics.classifier import CLASSIFIER_VERSION


class Schema(marshmallow.Schema):
    class Meta:
        unknown = EXCLUDE
        ordered = True


class ModelSchema(Schema):
    n_atoms = fields.Integer(required=True, validate=validate.Range(min=1))
    phase = fields.Float(required=True, validate=validate.Range(min=0, min_inclusive=False))
    gamma0 = fields.Float(missing=1.0, validate=validate.Range(min=0, min_inclusive=False))
    omega0_offset = fields.Float(missing=0.0)
    interaction = fields.String(
        missing='hard_core', validate=validate.OneOf(['hard_core', 'finite'])
    )
    chi = fields.Float(missing=None, allow_none=True, validate=validate.Range(min=0))

    @validates_schema
    def chi_matches_interaction(self, data, **kwargs):
        if data.get('interaction') == 'finite' and data.get('chi') is None:
            raise ValidationError('finite interaction needs chi', 'chi')
        if data.get('interaction') == 'hard_core' and data.get('chi') is not None:
            raise ValidationError('hard-core interaction takes no chi', 'chi')


class SolverSchema(Schema):
    residual_tolerance = fields.Float(missing=1e-8, validate=validate.Range(min=0))


class TrimerSchema(Schema):
    xi_max = fields.Float(validate=validate.Range(min=0))
    mass_min = fields.Float(validate=validate.Range(min=0, max=1))
    diagonal_radius = fields.Float(validate=validate.Range(min=0))


class CornerSchema(Schema):
    xi_max = fields.Float(validate=validate.Range(min=0))
    mass_min = fields.Float(validate=validate.Range(min=0, max=1))
    corner_radius = fields.Float(validate=validate.Range(min=0))


class TrimerEdgeSchema(Schema):
    edge_mass_min = fields.Float(validate=validate.Range(min=0, max=1))


class RegionSchema(Schema):
    fermionic_overlap_min = fields.Float(validate=validate.Range(min=0, max=1))
    fermionic_decay_max = fields.Float(validate=validate.Range(min=0))
    fermionic_energy_max = fields.Float(validate=validate.Range(min=0))
    chaotic_entropy_min = fields.Float(validate=validate.Range(min=0))
    chaotic_fit_max = fields.Float(validate=validate.Range(min=0, max=1))
    scattering_fit_min = fields.Float(validate=validate.Range(min=0, max=1))
    scattering_energy_min = fields.Float(validate=validate.Range(min=0))


class ClassifierSchema(Schema):
    version = fields.Integer(
        missing=CLASSIFIER_VERSION, validate=validate.Equal(CLASSIFIER_VERSION)
    )
    subradiance_factor = fields.Float(validate=validate.Range(min=0))
    window_fraction = fields.Float(
        validate=validate.Range(min=0, max=0.5, min_inclusive=False)
    )
    factor_mass_threshold = fields.Float(validate=validate.Range(min=0, max=1))
    factor_fit_min = fields.Float(validate=validate.Range(min=0, max=1))
    hysteresis = fields.Float(validate=validate.Range(min=0, max=1))
    ipr_localized = fields.Float(validate=validate.Range(min=0, max=1))
    asymmetry_threshold = fields.Float(validate=validate.Range(min=0, max=1))
    trimer = fields.Nested(TrimerSchema)
    corner = fields.Nested(CornerSchema)
    trimer_edge = fields.Nested(TrimerEdgeSchema)
    region = fields.Nested(RegionSchema)


class RunSchema(Schema):
    model = fields.Nested(ModelSchema, required=True)
    excitations = fields.Integer(required=True, validate=validate.OneOf([1, 2, 3]))
    solver = fields.Nested(SolverSchema, missing=dict)
    classifier = fields.Nested(ClassifierSchema, missing=dict)

    @validates_schema
    def enough_atoms(self, data, **kwargs):
        model = data.get('model') or {}
        if model.get('interaction') == 'hard_core' and 'n_atoms' in model:
            if model['n_atoms'] < data.get('excitations', 1):
                raise ValidationError('fewer atoms than hard-core excitations', 'excitations')


def load_run_section(config):
    raw = {
        'model': dict(config['model']),
        'excitations': config['excitations'],
        'solver': {'residual_tolerance': config['solver']['residual_tolerance']},
        'classifier': _plain(config['classifier']),
    }
    try:
        return RunSchema().load(raw)
    except ValidationError as e:
        raise InvalidConfigurationException(e.messages)


def _plain(mapping):
    return {
        key: _plain(value) if hasattr(value, 'items') else value
        for key, value in mapping.items()
    }


class ComplexSchema(Schema):
    re = fields.Float(attribute='real')
    im = fields.Float(attribute='imag')


class FiniteFloat(fields.Float):
    """Dumps infinite and NaN values as null."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is not None and not math.isfinite(value):
            return None
        return super()._serialize(value, attr, obj, **kwargs)


class EvidenceSchema(Schema):
    xi_perp = FiniteFloat(allow_none=True)
    xi_along = FiniteFloat(allow_none=True)
    mass = fields.Float()
    residual = fields.Float()


class SignatureSchema(Schema):
    n_edge = fields.Integer()
    n_centre = fields.Integer()
    n_free = fields.Integer()
    status = fields.String()


class LabelSchema(Schema):
    radiance = fields.Function(lambda label: label.radiance.value)
    region = fields.Function(lambda label: label.region.value)
    signature = fields.Nested(SignatureSchema)
    exotic = fields.Function(lambda label: label.exotic_names())
    evidence = fields.Function(
        lambda label: {
            kind.value: (EvidenceSchema().dump(found) if found is not None else None)
            for kind, found in label.evidence.items()
        }
    )
    asymmetry = fields.Float()
    factor_kinds = fields.Function(
        lambda label: [kind.value for kind in label.factors.kinds] if label.factors else []
    )


class StateDocumentSchema(Schema):
    config_hash = fields.String()
    generated_at = fields.String()
    config = fields.Dict()
    index = fields.Integer()
    n_atoms = fields.Integer()
    excitations = fields.Integer()
    energy = fields.Nested(ComplexSchema)
    raw_energy = fields.Nested(ComplexSchema)
    residual = fields.Float()
    decay_rate = fields.Float()
    ipr = fields.Float()
    entropy = fields.Float()
    marginal = fields.List(fields.Float())
    labels = fields.Nested(LabelSchema, allow_none=True)
    scores = fields.Dict(allow_none=True)
    cube_file = fields.String(allow_none=True)

    @post_dump
    def drop_absent(self, data, **kwargs):
        return {key: value for key, value in data.items() if value is not None}

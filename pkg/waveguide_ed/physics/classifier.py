# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import enum
import functools
import logging
import math

from dataclasses import dataclass, field, fields

import numpy as np

from waveguide_ed.exceptions import AmbiguousSignatureException

from .ansatz import FactorKind, score_state
from .observables import probability_cube
from .windows import DEFAULT_WINDOW_FRACTION, Windows

logger = logging.getLogger(__name__)

CLASSIFIER_VERSION = 2
FIT_FLOOR = 1e-12


class Radiance(enum.Enum):
    SUPERRADIANT = 'superradiant'
    SUBRADIANT = 'subradiant'
    ORDINARY = 'ordinary'


class Region(enum.Enum):
    FERMIONIC = 'fermionic'
    CHAOTIC = 'chaotic'
    LOCALIZED = 'localized'
    SCATTERING = 'scattering'
    UNASSIGNED = 'unassigned'


class Exotic(enum.Enum):
    TRIMER = 'trimer'
    CORNER_STATE = 'corner_state'
    TRIMER_EDGE = 'trimer_edge'
    ASYMMETRIC_LOCALIZED = 'asymmetric_localized'


class _FromDict:
    @classmethod
    def from_dict(cls, values):
        values = values or {}
        kwargs = {}
        for item in fields(cls):
            if item.name not in values:
                continue
            value = values[item.name]
            nested = getattr(item.type, 'from_dict', None) if isinstance(item.type, type) else None
            kwargs[item.name] = nested(value) if nested else value
        return cls(**kwargs)


@dataclass(frozen=True)
class TrimerThresholds(_FromDict):
    xi_max: float = 3.0
    mass_min: float = 0.8
    diagonal_radius: int = 6


@dataclass(frozen=True)
class CornerThresholds(_FromDict):
    xi_max: float = 3.0
    mass_min: float = 0.8
    corner_radius: int = 4


@dataclass(frozen=True)
class TrimerEdgeThresholds(_FromDict):
    edge_mass_min: float = 0.5


@dataclass(frozen=True)
class RegionThresholds(_FromDict):
    fermionic_overlap_min: float = 0.3
    fermionic_decay_max: float = 1e-3
    fermionic_energy_max: float = 0.05
    chaotic_entropy_min: float = 0.9
    chaotic_fit_max: float = 0.5
    scattering_fit_min: float = 0.6
    scattering_energy_min: float = 0.5


@dataclass(frozen=True)
class ClassifierThresholds(_FromDict):
    """Classification thresholds, all in units of gamma0 and sites."""

    version: int = CLASSIFIER_VERSION
    subradiance_factor: float = 0.1
    window_fraction: float = DEFAULT_WINDOW_FRACTION
    factor_mass_threshold: float = 0.6
    factor_fit_min: float = 0.5
    hysteresis: float = 0.15
    ipr_localized: float = 0.02
    asymmetry_threshold: float = 0.2
    trimer: TrimerThresholds = field(default_factory=TrimerThresholds)
    corner: CornerThresholds = field(default_factory=CornerThresholds)
    trimer_edge: TrimerEdgeThresholds = field(default_factory=TrimerEdgeThresholds)
    region: RegionThresholds = field(default_factory=RegionThresholds)


@dataclass(frozen=True)
class LocalisationSignature:
    n_edge: int
    n_centre: int
    n_free: int
    status: str = 'resolved'

    @property
    def n_localized(self):
        return self.n_edge + self.n_centre

    def as_tuple(self):
        return (self.n_edge, self.n_centre, self.n_free)


@dataclass(frozen=True)
class Evidence:
    xi_perp: float
    xi_along: float
    mass: float
    residual: float


@dataclass(frozen=True)
class CubeFit:
    xi_perp: float
    xi_along: float
    residual: float
    along_residual: float


@dataclass(eq=False)
class StateLabel:
    radiance: Radiance
    region: Region
    signature: LocalisationSignature
    exotic: frozenset = frozenset()
    evidence: dict = field(default_factory=dict)
    asymmetry: float = 0.0
    scores: object = None
    factors: object = None

    def exotic_names(self):
        return sorted(kind.value for kind in self.exotic)


def classify_radiance(record, params, thresholds=None):
    thresholds = thresholds or ClassifierThresholds()
    if record.decay_rate > params.gamma0:
        return Radiance.SUPERRADIANT
    if record.decay_rate < params.gamma0 * thresholds.subradiance_factor:
        return Radiance.SUBRADIANT
    return Radiance.ORDINARY


def _estimate_counts(marginal, n_photons, windows):
    edge, centre = windows.masses(marginal)
    f_edge, f_centre = windows.edge_fraction, windows.centre_fraction
    system = np.array([[1 - f_edge, -f_edge], [-f_centre, 1 - f_centre]])
    target = n_photons * np.array([edge - f_edge, centre - f_centre])
    if abs(np.linalg.det(system)) < FIT_FLOOR:
        return np.zeros(2)
    return np.clip(np.linalg.solve(system, target), 0, n_photons)


def _signature(n_edge, n_centre, n_photons, status='resolved'):
    n_centre = min(n_centre, n_photons - n_edge)
    return LocalisationSignature(n_edge, n_centre, n_photons - n_edge - n_centre, status)


def localisation_count(
    marginal, n_photons, windows, thresholds=None, factors=None, fit_quality=None
):
    """Photons localized at the edges and at the centre, inferred from the marginal.

    The estimate assumes localized photons sit fully inside their window and
    free photons spread evenly over the array. Counts whose fractional part
    falls within the hysteresis band of one half are not rounded. When
    factors with a good fit are given, their window labels must agree.
    """
    thresholds = thresholds or ClassifierThresholds()
    estimate = _estimate_counts(marginal, n_photons, windows)
    fractions = estimate - np.floor(estimate)
    if np.any(np.abs(fractions - 0.5) < thresholds.hysteresis):
        raise AmbiguousSignatureException([float(value) for value in estimate], None)

    n_edge, n_centre = (int(value) for value in np.rint(estimate))
    signature = _signature(n_edge, n_centre, n_photons)

    if factors is not None and fit_quality is not None:
        if fit_quality >= thresholds.factor_fit_min:
            from_factors = (
                factors.count(FactorKind.EDGE_LOCALIZED),
                factors.count(FactorKind.CENTRE_LOCALIZED),
            )
            if from_factors != (signature.n_edge, signature.n_centre):
                raise AmbiguousSignatureException(
                    [signature.n_edge, signature.n_centre], list(from_factors)
                )
    return signature


def resolve_signature(marginal, n_photons, windows, thresholds=None, factors=None, fit=None):
    try:
        return localisation_count(marginal, n_photons, windows, thresholds, factors, fit)
    except AmbiguousSignatureException as e:
        logger.debug('Ambiguous localisation signature: %s', e.details)
        n_edge, n_centre = (
            int(value) for value in np.rint(_estimate_counts(marginal, n_photons, windows))
        )
        return _signature(n_edge, n_centre, n_photons, 'ambiguous')


@functools.lru_cache(maxsize=8)
def _cube_coordinates(n):
    grids = np.indices((n, n, n)).reshape(3, -1)
    diagonal = grids.max(axis=0) - grids.min(axis=0)
    total = grids.sum(axis=0)
    along = np.minimum(total, 3 * (n - 1) - total) / 3.0
    return diagonal.astype(float), along


def _decay_length(slope):
    return -1.0 / slope if slope < 0 else math.inf


def _weighted_log_fit(design, values):
    weights = np.sqrt(values)
    target = np.log(values)
    coefficients, _, _, _ = np.linalg.lstsq(
        design * weights[:, None], target * weights, rcond=None
    )
    misfit = (design @ coefficients - target) ** 2
    residual = float(np.sqrt(np.sum(weights ** 2 * misfit) / np.sum(weights ** 2)))
    return coefficients, residual


def shell_masses(cube):
    """Cube mass summed over each Chebyshev distance from the main diagonal."""
    diagonal, _ = _cube_coordinates(cube.n)
    return np.bincount(
        diagonal.astype(int), weights=cube.values.reshape(-1), minlength=cube.n
    )


def fit_shell_decay(masses):
    """Decay length and residual of the fit log m(r) = c - r / xi over occupied shells."""
    masses = np.asarray(masses, dtype=float)
    shells = np.flatnonzero(masses > masses.max() * FIT_FLOOR)
    if len(shells) < 2:
        return math.inf, 0.0
    design = np.column_stack([np.ones(len(shells)), shells])
    coefficients, residual = _weighted_log_fit(design, masses[shells])
    return _decay_length(coefficients[1]), residual


def fit_cube_decay(cube):
    """Decay lengths of a three-photon cube away from the diagonal and along it.

    ``xi_perp`` comes from the shell mass profile around the main diagonal.
    ``xi_along`` comes from a weighted per-entry fit of
    log p = c - b * r - t / xi_along, where ``r`` is the Chebyshev distance
    from the main diagonal and ``t`` the mean distance of the three photons
    from the nearest array end.
    """
    xi_perp, residual = fit_shell_decay(shell_masses(cube))

    diagonal, along = _cube_coordinates(cube.n)
    values = cube.values.reshape(-1)
    keep = values > values.max() * FIT_FLOOR
    design = np.column_stack([np.ones(keep.sum()), diagonal[keep], along[keep]])
    coefficients, along_residual = _weighted_log_fit(design, values[keep])
    return CubeFit(xi_perp, _decay_length(coefficients[2]), residual, along_residual)


def _near_diagonal_mass(cube, radius):
    diagonal, _ = _cube_coordinates(cube.n)
    return float(cube.values.reshape(-1)[diagonal <= radius].sum())


def _near_corner_mass(cube, radius):
    _, along = _cube_coordinates(cube.n)
    return float(cube.values.reshape(-1)[along <= radius].sum())


def _trimer_geometry(cube, thresholds, fit):
    mass = _near_diagonal_mass(cube, thresholds.trimer.diagonal_radius)
    accepted = (
        fit.xi_perp <= thresholds.trimer.xi_max
        and fit.xi_perp < fit.xi_along
        and mass >= thresholds.trimer.mass_min
    )
    return accepted, mass


def detect_trimer(cube, thresholds=None, fit=None):
    thresholds = thresholds or ClassifierThresholds()
    fit = fit or fit_cube_decay(cube)
    accepted, mass = _trimer_geometry(cube, thresholds, fit)
    if not accepted:
        return None
    return Evidence(fit.xi_perp, fit.xi_along, mass, fit.residual)


def detect_corner(cube, thresholds=None, fit=None):
    thresholds = thresholds or ClassifierThresholds()
    fit = fit or fit_cube_decay(cube)
    mass = _near_corner_mass(cube, thresholds.corner.corner_radius)
    if (
        fit.xi_along <= thresholds.corner.xi_max
        and fit.xi_perp >= fit.xi_along
        and mass >= thresholds.corner.mass_min
    ):
        return Evidence(fit.xi_perp, fit.xi_along, mass, fit.along_residual)
    return None


def detect_trimer_edge(cube, thresholds=None, fit=None, windows=None):
    thresholds = thresholds or ClassifierThresholds()
    fit = fit or fit_cube_decay(cube)
    accepted, _ = _trimer_geometry(cube, thresholds, fit)
    if not accepted:
        return None
    windows = windows or Windows.for_array(cube.n, thresholds.window_fraction)
    edge_mass, _ = windows.masses(cube.marginal())
    if edge_mass < thresholds.trimer_edge.edge_mass_min:
        return None
    return Evidence(fit.xi_perp, fit.xi_along, edge_mass, fit.residual)


def mirror_asymmetry(marginal):
    marginal = np.asarray(marginal, dtype=float)
    return float(np.abs(marginal - marginal[::-1]).sum())


def detect_asymmetric(marginal, thresholds=None, localized=True):
    thresholds = thresholds or ClassifierThresholds()
    return localized and mirror_asymmetry(marginal) > thresholds.asymmetry_threshold


def _ansatz_overlaps(scores):
    """Fermionic and symmetric ansatz overlaps, preferring the subradiant eigenstate ansatz."""
    if scores is None:
        return 0.0, 0.0
    if scores.subradiant_fermionic_overlap is not None:
        return scores.subradiant_fermionic_overlap, scores.subradiant_symmetric_overlap or 0.0
    return scores.fermionic_overlap, scores.symmetric_fit


def region_label(record, scores, params, signature=None, thresholds=None):
    thresholds = thresholds or ClassifierThresholds()
    region = thresholds.region
    detuning = abs(record.eigen.energy_per_photon.real - params.omega0_offset)
    symmetric_fit = scores.symmetric_fit if scores else 0.0
    fermionic_overlap, symmetric_overlap = _ansatz_overlaps(scores)

    if (
        fermionic_overlap >= region.fermionic_overlap_min
        and fermionic_overlap > symmetric_overlap
        and record.decay_rate <= region.fermionic_decay_max * params.gamma0
        and detuning <= region.fermionic_energy_max * params.gamma0
    ):
        return Region.FERMIONIC
    if record.ipr >= thresholds.ipr_localized or (signature and signature.n_localized > 0):
        return Region.LOCALIZED
    if record.entropy >= region.chaotic_entropy_min and symmetric_fit <= region.chaotic_fit_max:
        return Region.CHAOTIC
    if (
        symmetric_fit >= region.scattering_fit_min
        and detuning >= region.scattering_energy_min * params.gamma0
    ):
        return Region.SCATTERING
    return Region.UNASSIGNED


def classify_state(record, hamiltonian, thresholds=None, single_spectrum=None):
    """Full label of one hard-core eigenstate."""
    thresholds = thresholds or ClassifierThresholds()
    params, basis, k = hamiltonian.params, hamiltonian.basis, hamiltonian.k
    windows = Windows.for_array(params.n_atoms, thresholds.window_fraction)

    factors = scores = None
    if k > 1:
        factors, scores = score_state(
            record.eigen.vector,
            basis,
            windows,
            thresholds.factor_mass_threshold,
            single_spectrum,
        )
    signature = resolve_signature(
        record.marginal,
        k,
        windows,
        thresholds,
        factors,
        scores.symmetric_fit if scores else None,
    )

    exotic = set()
    evidence = {}
    if k == 3:
        cube = probability_cube(record.eigen.vector, basis)
        fit = fit_cube_decay(cube)
        detections = {
            Exotic.TRIMER: detect_trimer(cube, thresholds, fit),
            Exotic.CORNER_STATE: detect_corner(cube, thresholds, fit),
            Exotic.TRIMER_EDGE: detect_trimer_edge(cube, thresholds, fit, windows),
        }
        for kind, found in detections.items():
            evidence[kind] = found
            if found is not None:
                exotic.add(kind)

    region = region_label(record, scores, params, signature, thresholds)
    asymmetry = mirror_asymmetry(record.marginal)
    if detect_asymmetric(record.marginal, thresholds, region is Region.LOCALIZED):
        exotic.add(Exotic.ASYMMETRIC_LOCALIZED)

    label = StateLabel(
        radiance=classify_radiance(record, params, thresholds),
        region=region,
        signature=signature,
        exotic=frozenset(exotic),
        evidence=evidence,
        asymmetry=asymmetry,
        scores=scores,
        factors=factors,
    )
    logger.debug(
        'State %s: %s %s %s %s',
        record.index,
        label.radiance.value,
        label.region.value,
        signature.as_tuple(),
        label.exotic_names(),
    )
    return label

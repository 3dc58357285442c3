# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import enum
import logging
import math

from dataclasses import dataclass

import numpy as np

from waveguide_ed.exceptions import (
    InvalidModelParameters,
    InvalidWaveVectorException,
    PoleProximityException,
)

logger = logging.getLogger(__name__)

DEFAULT_POLE_GUARD = 1e-9


class Interaction(enum.Enum):
    HARD_CORE = 'hard_core'
    FINITE = 'finite'


@dataclass(frozen=True)
class ModelParams:
    """Array of two-level atoms coupled to a waveguide.

    Energies are in units of gamma0 (hbar = 1) counted from the atomic
    resonance plus ``omega0_offset``. ``chi`` is only meaningful for the
    finite interaction mode.
    """

    n_atoms: int
    phase: float
    gamma0: float = 1.0
    omega0_offset: float = 0.0
    interaction: Interaction = Interaction.HARD_CORE
    chi: float = None

    def __post_init__(self):
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise InvalidModelParameters('n_atoms', self.n_atoms, 'must be a positive integer')
        if not self.phase > 0:
            raise InvalidModelParameters('phase', self.phase, 'must be positive')
        if not self.gamma0 > 0:
            raise InvalidModelParameters('gamma0', self.gamma0, 'must be positive')
        if not isinstance(self.interaction, Interaction):
            raise InvalidModelParameters(
                'interaction', self.interaction, 'must be an Interaction'
            )
        if self.interaction is Interaction.FINITE:
            if self.chi is None or not self.chi >= 0:
                raise InvalidModelParameters(
                    'chi', self.chi, 'finite interaction needs chi >= 0'
                )
        elif self.chi is not None:
            raise InvalidModelParameters('chi', self.chi, 'hard-core interaction takes no chi')

    @classmethod
    def hard_core(cls, n_atoms, phase, **kwargs):
        return cls(n_atoms, phase, interaction=Interaction.HARD_CORE, **kwargs)

    @classmethod
    def finite(cls, n_atoms, phase, chi, **kwargs):
        return cls(n_atoms, phase, interaction=Interaction.FINITE, chi=chi, **kwargs)

    @property
    def is_hard_core(self):
        return self.interaction is Interaction.HARD_CORE


def single_excitation_hamiltonian(params):
    sites = np.arange(params.n_atoms)
    distance = np.abs(sites[:, None] - sites[None, :])
    # distance is symmetric, so mirrored entries come from identical operations
    matrix = -1j * params.gamma0 * np.exp(1j * params.phase * distance)
    matrix[np.diag_indices(params.n_atoms)] += params.omega0_offset
    return matrix


def dispersion_energy(k, params, pole_guard=DEFAULT_POLE_GUARD):
    if not 0 < k <= math.pi:
        raise InvalidWaveVectorException(k)

    denominator = math.cos(k) - math.cos(params.phase)
    if abs(denominator) < pole_guard:
        raise PoleProximityException(k, params.phase, abs(denominator), pole_guard)

    return params.gamma0 * math.sin(params.phase) / denominator


def single_spectrum(params, residual_tolerance=None):
    # spectra depends on this module for the Hamiltonian
    from .hamiltonian import build_single_excitation
    from .spectra import DEFAULT_RESIDUAL_TOLERANCE, diagonalize

    if residual_tolerance is None:
        residual_tolerance = DEFAULT_RESIDUAL_TOLERANCE
    return diagonalize(build_single_excitation(params), residual_tolerance)

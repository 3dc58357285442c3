# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import enum
import math

from dataclasses import dataclass

import numpy as np

DEFAULT_WINDOW_FRACTION = 0.1
WIDTH_SLACK = 1e-9


class WindowKind(enum.Enum):
    EDGE = 'edge'
    CENTRE = 'centre'
    FREE = 'free'


@dataclass(frozen=True)
class Windows:
    """Edge and centre site windows of an array of ``n_atoms`` sites.

    The edge windows are the first and last ``width`` sites; the centre
    window is the middle ``width`` sites minus any overlap with the edges.
    """

    n_atoms: int
    width: int

    @classmethod
    def for_array(cls, n_atoms, fraction=DEFAULT_WINDOW_FRACTION):
        width = max(1, math.ceil(n_atoms * fraction - WIDTH_SLACK))
        return cls(n_atoms, min(width, n_atoms))

    @property
    def left(self):
        return np.arange(self.width)

    @property
    def right(self):
        return np.arange(self.n_atoms - self.width, self.n_atoms)

    @property
    def edge_mask(self):
        mask = np.zeros(self.n_atoms, dtype=bool)
        mask[self.left] = True
        mask[self.right] = True
        return mask

    @property
    def centre_mask(self):
        start = (self.n_atoms - self.width) // 2
        mask = np.zeros(self.n_atoms, dtype=bool)
        mask[start : start + self.width] = True
        return mask & ~self.edge_mask

    @property
    def edge_fraction(self):
        return self.edge_mask.sum() / self.n_atoms

    @property
    def centre_fraction(self):
        return self.centre_mask.sum() / self.n_atoms

    def masses(self, density):
        """(edge, centre) mass of a site density normalized to one."""
        density = np.asarray(density, dtype=float)
        total = density.sum()
        return (
            float(density[self.edge_mask].sum() / total),
            float(density[self.centre_mask].sum() / total),
        )

    def kind_of(self, vector, threshold):
        edge, centre = self.masses(np.abs(np.asarray(vector)) ** 2)
        if edge >= threshold:
            return WindowKind.EDGE
        if centre >= threshold:
            return WindowKind.CENTRE
        return WindowKind.FREE

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from waveguide_ed.exceptions import EXIT_USAGE, WaveguideException


class EmptyScanException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self):
        msg = 'Nothing to scan: give a list of phases or of array sizes'
        super().__init__(msg, 'empty-scan', {}, 'scans')


class ConflictingScanException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, phases, n_atoms):
        msg = 'Scan either phases or array sizes, not both'
        details = {'phases': list(phases), 'n_atoms': list(n_atoms)}
        super().__init__(msg, 'conflicting-scan', details, 'scans')

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from waveguide_ed.exceptions import WaveguideException


class OracleMismatchException(WaveguideException):
    def __init__(self, failures):
        msg = f'Reference comparison failed: {", ".join(sorted(failures))}'
        super().__init__(msg, 'oracle-mismatch', {'failures': failures}, 'oracle')

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from waveguide_ed.exceptions import EXIT_USAGE, WaveguideException


class IndexOutOfRangeException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, index, size):
        msg = f'State index {index} is outside the spectrum of {size} states'
        details = {'index': index, 'size': size}
        super().__init__(msg, 'index-out-of-range', details, 'states')

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import os

import pytest

LARGE_ENV_VAR = 'WAVEGUIDE_ED_LARGE'


def pytest_collection_modifyitems(session, config, items):
    if os.environ.get(LARGE_ENV_VAR) == '1':
        return
    skip = pytest.mark.skip(reason=f'full-size dense solves, set {LARGE_ENV_VAR}=1')
    for item in items:
        item.add_marker(skip)

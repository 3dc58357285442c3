#!/usr/bin/env python3
# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from setuptools import setup
from setuptools import find_packages


NAME = 'waveguide-ed'
setup(
    name=NAME,
    version='1.0',
    author='Wazo Authors',
    author_email='dev@wazo.community',
    url='http://wazo.community',
    packages=find_packages(exclude=['integration_tests', 'integration_tests.*']),
    python_requires='>=3.8',
    entry_points={
        'console_scripts': [
            f'{NAME}=waveguide_ed.main:main',
        ],
        'waveguide_ed.plugins': [
            'spectrum = waveguide_ed.plugins.spectrum.plugin:Plugin',
            'state = waveguide_ed.plugins.state.plugin:Plugin',
            'classify = waveguide_ed.plugins.classify.plugin:Plugin',
            'scan = waveguide_ed.plugins.scan.plugin:Plugin',
            'oracle_check = waveguide_ed.plugins.oracle_check.plugin:Plugin',
        ],
    },
)

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from .command import OracleCheckCommand


class Plugin:
    def load(self, dependencies):
        config = dependencies['config']
        commands = dependencies['commands']

        commands.register('oracle-check', OracleCheckCommand(config))

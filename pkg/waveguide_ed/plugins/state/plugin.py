# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from .command import StateCommand


class Plugin:
    def load(self, dependencies):
        config = dependencies['config']
        commands = dependencies['commands']
        pipeline = dependencies['pipeline']

        commands.register('state', StateCommand(config, pipeline))

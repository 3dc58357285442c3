# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

from .command import ClassifyCommand


class Plugin:
    def load(self, dependencies):
        config = dependencies['config']
        commands = dependencies['commands']
        pipeline = dependencies['pipeline']

        commands.register('classify', ClassifyCommand(config, pipeline))

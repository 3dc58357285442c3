# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging
import signal

from functools import partial
from xivo import plugin_helpers

from .commands import CommandRegistry
from .pipeline import Pipeline

logger = logging.getLogger(__name__)


class Controller:
    def __init__(self, config):
        self._command = config['command']
        self.commands = CommandRegistry()
        self.pipeline = Pipeline(config)
        plugin_helpers.load(
            namespace='waveguide_ed.plugins',
            names=config['enabled_commands'],
            dependencies={
                'config': config,
                'commands': self.commands,
                'pipeline': self.pipeline,
            },
        )

    def run(self):
        logger.info('waveguide-ed starting...')
        signal.signal(signal.SIGTERM, partial(_sigterm_handler, self))
        return self.commands.run(self._command)

    def stop(self, reason):
        logger.warning('Stopping waveguide-ed: %s', reason)
        self.pipeline.stop(reason)


def _sigterm_handler(controller, signum, frame):
    controller.stop(reason='SIGTERM')

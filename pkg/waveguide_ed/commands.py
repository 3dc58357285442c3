# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging
import time

from .exceptions import CommandDisabledException

logger = logging.getLogger(__name__)


class CommandRegistry:
    def __init__(self):
        self._commands = {}

    def register(self, name, command):
        logger.debug('Registering command %s', name)
        self._commands[name] = command

    def get(self, name):
        try:
            return self._commands[name]
        except KeyError:
            raise CommandDisabledException(name, self._commands)

    def names(self):
        return sorted(self._commands)

    def run(self, name):
        command = self.get(name)
        logger.info('Running %s...', name)
        started = time.monotonic()
        written = command.execute()
        elapsed = time.monotonic() - started
        logger.info('%s finished in %.1fs, %s files written', name, elapsed, len(written))
        return written

# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import logging
import os
import sys

from xivo import xivo_logging

from waveguide_ed import config
from waveguide_ed.exceptions import WaveguideException

logger = logging.getLogger(__name__)

THREAD_ENV_VARS = (
    'OMP_NUM_THREADS',
    'OPENBLAS_NUM_THREADS',
    'MKL_NUM_THREADS',
    'VECLIB_MAXIMUM_THREADS',
)


def apply_thread_limits(threads, environ=os.environ):
    if not threads:
        return
    for name in THREAD_ENV_VARS:
        environ[name] = str(threads)


def main(argv=None):
    try:
        conf = config.load_config(sys.argv[1:] if argv is None else argv)
    except WaveguideException as e:
        print(e.message, file=sys.stderr)
        sys.exit(e.exit_code)

    apply_thread_limits(conf['threads'])

    xivo_logging.setup_logging(conf['log_file'], debug=conf['debug'], log_level=conf['log_level'])
    xivo_logging.silence_loggers(['stevedore.extension'], logging.WARNING)

    # BLAS reads its thread count when numpy is first imported
    from waveguide_ed.controller import Controller

    try:
        controller = Controller(conf)
        controller.run()
    except WaveguideException as e:
        logger.error('%s [%s] %s', e.message, e.id_, e.details)
        sys.exit(e.exit_code)

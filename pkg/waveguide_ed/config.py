# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

import argparse
import os

from xivo.chain_map import ChainMap
from xivo.config_helper import read_config_file_hierarchy
from xivo.xivo_logging import get_log_level_by_name

from waveguide_ed.exceptions import InvalidConfigurationException

THREADS_ENV_VAR = 'WAVEGUIDE_ED_THREADS'
COMMANDS = ('spectrum', 'state', 'classify', 'scan', 'oracle-check')

_DEFAULT_CONFIG = {
    'config_file': '/etc/waveguide-ed/config.yml',
    'debug': False,
    'extra_config_files': '/etc/waveguide-ed/conf.d',
    'log_file': 'waveguide-ed.log',
    'log_level': 'info',
    'threads': None,
    'workers': 1,
    'command': None,
    'model': {
        'n_atoms': 42,
        'phase': 0.02,
        'gamma0': 1.0,
        'omega0_offset': 0.0,
        'interaction': 'hard_core',
        'chi': None,
    },
    'excitations': 3,
    'solver': {
        'large': False,
        'large_threshold_bytes': 1 << 30,
        'memory_budget_bytes': 1 << 30,
        'residual_tolerance': 1e-8,
        'dump_matrix': None,
    },
    'classifier': {},
    'output': {'directory': '.', 'with_hierarchy': False},
    'state': {'index': 0},
    'scan': {'phases': [], 'n_atoms': []},
    'oracle': {'n_atoms': 6, 'phase': 0.2, 'excitations': 3, 'chi': 1e7},
    'enabled_commands': {
        'spectrum': True,
        'state': True,
        'classify': True,
        'scan': True,
        'oracle_check': True,
    },
}

# argparse dest -> nested config key
_FLAG_KEYS = {
    'config_file': ('config_file',),
    'debug': ('debug',),
    'log_file': ('log_file',),
    'threads': ('threads',),
    'workers': ('workers',),
    'command': ('command',),
    'output_dir': ('output', 'directory'),
    'n_atoms': ('model', 'n_atoms'),
    'phase': ('model', 'phase'),
    'gamma0': ('model', 'gamma0'),
    'omega0_offset': ('model', 'omega0_offset'),
    'interaction': ('model', 'interaction'),
    'chi': ('model', 'chi'),
    'excitations': ('excitations',),
    'large': ('solver', 'large'),
    'residual_tolerance': ('solver', 'residual_tolerance'),
    'memory_budget': ('solver', 'memory_budget_bytes'),
    'dump_matrix': ('solver', 'dump_matrix'),
    'with_hierarchy': ('output', 'with_hierarchy'),
    'index': ('state', 'index'),
    'phases': ('scan', 'phases'),
    'n_atoms_list': ('scan', 'n_atoms'),
    'oracle_n_atoms': ('oracle', 'n_atoms'),
    'oracle_phase': ('oracle', 'phase'),
    'oracle_chi': ('oracle', 'chi'),
}


def load_config(args, environ=None):
    cli_config = _parse_cli_args(args)
    env_config = _parse_environment(os.environ if environ is None else environ)
    file_config = read_config_file_hierarchy(ChainMap(cli_config, env_config, _DEFAULT_CONFIG))
    reinterpreted_config = _get_reinterpreted_raw_values(
        cli_config, env_config, file_config, _DEFAULT_CONFIG
    )
    return ChainMap(reinterpreted_config, cli_config, env_config, file_config, _DEFAULT_CONFIG)


def _get_reinterpreted_raw_values(*configs):
    config = ChainMap(*configs)
    return dict(
        log_level=get_log_level_by_name('debug' if config['debug'] else config['log_level'])
    )


def _parse_environment(environ):
    threads = environ.get(THREADS_ENV_VAR)
    if not threads:
        return {}
    try:
        return {'threads': _positive_int(threads)}
    except argparse.ArgumentTypeError as e:
        raise InvalidConfigurationException({THREADS_ENV_VAR: [str(e)]})


def _positive_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid integer: {value!r}')
    if number < 1:
        raise argparse.ArgumentTypeError(f'must be positive: {value!r}')
    return number


def _float_list(value):
    try:
        return [float(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid list of numbers: {value!r}')


def _int_list(value):
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid list of integers: {value!r}')


def _model_parser():
    parser = argparse.ArgumentParser(add_help=False)
    model = parser.add_argument_group('model')
    model.add_argument('-n', '--n-atoms', type=_positive_int, help='Number of atoms')
    model.add_argument('-p', '--phase', type=float, help='Propagation phase between atoms')
    model.add_argument('--gamma0', type=float, help='Single-atom decay rate')
    model.add_argument('--omega0-offset', type=float, help='Diagonal energy offset')
    model.add_argument(
        '--interaction', choices=('hard_core', 'finite'), help='Excitation interaction'
    )
    model.add_argument('--chi', type=float, help='On-site repulsion of the finite model')
    model.add_argument(
        '-k', '--excitations', type=int, choices=(1, 2, 3), help='Number of excitations'
    )

    solver = parser.add_argument_group('solver')
    solver.add_argument(
        '--large',
        action='store_true',
        default=None,
        help='Acknowledge a dense solve above the memory threshold (not interruptible mid-solve)',
    )
    solver.add_argument('--residual-tolerance', type=float, help='Maximum eigenpair residual')
    solver.add_argument('--memory-budget', type=_positive_int, help='Dense matrix budget in bytes')
    solver.add_argument('--dump-matrix', metavar='PATH', help='Write the assembled Hamiltonian')
    return parser


def _parse_cli_args(argv):
    parser = argparse.ArgumentParser(prog='waveguide-ed')
    parser.add_argument('-c', '--config-file', action='store', help='The path to the config file')
    parser.add_argument(
        '-d',
        '--debug',
        action='store_true',
        default=None,
        help='Log debug messages. Override log_level',
    )
    parser.add_argument('-l', '--log-file', action='store', help='The path to the log file')
    parser.add_argument('-t', '--threads', type=_positive_int, help='BLAS thread count')
    parser.add_argument(
        '-w', '--workers', type=_positive_int, help='Threads evaluating eigenstates'
    )
    parser.add_argument('-o', '--output-dir', help='Directory receiving the output files')

    model = _model_parser()
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    spectrum = subparsers.add_parser('spectrum', parents=[model], help='Write spectrum.csv')
    spectrum.add_argument(
        '--with-hierarchy',
        action='store_true',
        default=None,
        help='Add the distance to the nearest noninteracting average',
    )

    state = subparsers.add_parser('state', parents=[model], help='Write one eigenstate')
    state.add_argument('-i', '--index', type=int, help='Eigenstate index in sorted order')

    subparsers.add_parser('classify', parents=[model], help='Write labels.csv')

    scan = subparsers.add_parser('scan', parents=[model], help='Write scan.csv')
    scan.add_argument('--phases', type=_float_list, help='Comma separated phases')
    scan.add_argument('--n-atoms-list', type=_int_list, help='Comma separated array sizes')

    oracle = subparsers.add_parser('oracle-check', help='Compare with the full-basis reference')
    oracle.add_argument('--n-atoms', dest='oracle_n_atoms', type=_positive_int)
    oracle.add_argument('--phase', dest='oracle_phase', type=float)
    oracle.add_argument('--chi', dest='oracle_chi', type=float)

    parsed_args = parser.parse_args(argv)

    result = {}
    for dest, value in vars(parsed_args).items():
        if value is None:
            continue
        _set_nested(result, _FLAG_KEYS[dest], value)
    return result


def _set_nested(config, keys, value):
    *parents, last = keys
    for key in parents:
        config = config.setdefault(key, {})
    config[last] = value

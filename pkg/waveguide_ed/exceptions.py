# Copyright 2021 The Wazo Authors  (see the AUTHORS file)
# SPDX-License-Identifier: GPL-3.0-or-later

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4
EXIT_INTERRUPTED = 143


class WaveguideException(Exception):
    exit_code = EXIT_NUMERICAL

    def __init__(self, message, error_id, details=None, resource=None):
        super().__init__(message)
        self.message = message
        self.id_ = error_id
        self.details = details or {}
        self.resource = resource


class InvalidModelParameters(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, field, value, reason):
        msg = f'Invalid model parameter "{field}": {reason}'
        details = {'field': field, 'value': value}
        super().__init__(msg, 'invalid-model-parameters', details, 'model')


class PoleProximityException(WaveguideException):
    def __init__(self, k, phase, distance, guard):
        msg = f'Wave vector {k} is within {guard} of the dispersion pole at phase {phase}'
        details = {'k': k, 'phase': phase, 'distance': distance, 'guard': guard}
        super().__init__(msg, 'pole-proximity', details, 'dispersion')


class InvalidWaveVectorException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, k):
        msg = f'Wave vector must lie in (0, pi]: {k}'
        super().__init__(msg, 'invalid-wave-vector', {'k': k}, 'dispersion')


class InvalidArityException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, k, allowed):
        msg = f'Unsupported excitation number {k}, expected one of {list(allowed)}'
        details = {'k': k, 'allowed': list(allowed)}
        super().__init__(msg, 'invalid-arity', details, 'basis')


class TooFewAtomsException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, n_atoms, k):
        msg = f'Cannot place {k} hard-core excitations on {n_atoms} atoms'
        details = {'n_atoms': n_atoms, 'k': k}
        super().__init__(msg, 'too-few-atoms', details, 'basis')


class UnknownOccupationException(WaveguideException):
    def __init__(self, sites):
        msg = f'No such occupation tuple: {tuple(sites)}'
        super().__init__(msg, 'unknown-occupation', {'sites': list(sites)}, 'basis')


class LengthMismatchException(WaveguideException):
    def __init__(self, expected, actual):
        msg = f'Length mismatch: expected {expected}, got {actual}'
        details = {'expected': expected, 'actual': actual}
        super().__init__(msg, 'length-mismatch', details, 'vectors')


class NotSymmetricException(WaveguideException):
    def __init__(self, deviation, tolerance):
        msg = f'Tensor is not permutation symmetric (deviation {deviation:.3e})'
        details = {'deviation': deviation, 'tolerance': tolerance}
        super().__init__(msg, 'not-symmetric', details, 'tensors')


class NonzeroDoubleOccupancyException(WaveguideException):
    def __init__(self, magnitude, tolerance):
        msg = f'Tensor has amplitude {magnitude:.3e} on a doubly occupied site'
        details = {'magnitude': magnitude, 'tolerance': tolerance}
        super().__init__(msg, 'nonzero-double-occupancy', details, 'tensors')


class InteractionModeException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, expected, actual):
        msg = f'Operation requires "{expected}" interaction, model uses "{actual}"'
        details = {'expected': expected, 'actual': actual}
        super().__init__(msg, 'interaction-mode', details, 'hamiltonians')


class MemoryBudgetExceededException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, dimension, required, budget):
        msg = (
            f'Dense matrix of dimension {dimension} needs {required} bytes, '
            f'budget is {budget} bytes'
        )
        details = {'dimension': dimension, 'required': required, 'budget': budget}
        super().__init__(msg, 'memory-budget-exceeded', details, 'hamiltonians')


class LargeRunNotAcknowledgedException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, dimension, predicted, threshold):
        msg = (
            f'Dense solve of dimension {dimension} needs about {predicted} bytes '
            f'(threshold {threshold}); rerun with --large to proceed'
        )
        details = {'dimension': dimension, 'predicted': predicted, 'threshold': threshold}
        super().__init__(msg, 'large-run-not-acknowledged', details, 'spectra')


class SolverFailureException(WaveguideException):
    def __init__(self, dimension, failed_range, reason):
        start, stop = failed_range
        msg = f'Eigensolver failed on eigenvalues [{start}, {stop}): {reason}'
        details = {'dimension': dimension, 'failed_range': [start, stop], 'reason': reason}
        super().__init__(msg, 'solver-failure', details, 'spectra')


class ResidualToleranceException(WaveguideException):
    def __init__(self, indices, max_residual, tolerance):
        msg = (
            f'{len(indices)} eigenpairs exceed residual tolerance {tolerance} '
            f'(max {max_residual:.3e})'
        )
        details = {
            'indices': list(indices),
            'max_residual': max_residual,
            'tolerance': tolerance,
        }
        super().__init__(msg, 'residual-tolerance', details, 'spectra')


class DimensionMismatchException(WaveguideException):
    def __init__(self, expected, actual):
        msg = f'Dimension mismatch: expected {expected}, got {actual}'
        details = {'expected': expected, 'actual': actual}
        super().__init__(msg, 'dimension-mismatch', details, 'spectra')


class ZeroVectorException(WaveguideException):
    def __init__(self, what='state'):
        msg = f'The {what} vector has zero norm'
        super().__init__(msg, 'zero-vector', {'what': what}, 'vectors')


class DegenerateProjectionException(WaveguideException):
    def __init__(self, norm, tolerance):
        msg = f'Ansatz vanishes after hard-core projection (norm {norm:.3e})'
        details = {'norm': norm, 'tolerance': tolerance}
        super().__init__(msg, 'degenerate-projection', details, 'ansatz')


class AmbiguousSignatureException(WaveguideException):
    def __init__(self, marginal_estimate, factor_estimate):
        msg = 'Localisation estimators disagree'
        details = {'marginal': marginal_estimate, 'factors': factor_estimate}
        super().__init__(msg, 'ambiguous-signature', details, 'classifier')


class TooLargeException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, dimension, limit):
        msg = f'Reference basis of dimension {dimension} exceeds the limit {limit}'
        details = {'dimension': dimension, 'limit': limit}
        super().__init__(msg, 'too-large', details, 'oracle')


class InvalidConfigurationException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, errors):
        msg = f'Invalid configuration: {errors}'
        super().__init__(msg, 'invalid-configuration', {'errors': errors}, 'config')


class CorruptCubeException(WaveguideException):
    exit_code = EXIT_IO

    def __init__(self, path, reason):
        msg = f'Invalid cube file "{path}": {reason}'
        details = {'path': str(path), 'reason': reason}
        super().__init__(msg, 'corrupt-cube', details, 'cubes')


class OutputException(WaveguideException):
    exit_code = EXIT_IO

    def __init__(self, path, reason):
        msg = f'Could not write "{path}": {reason}'
        details = {'path': str(path), 'reason': reason}
        super().__init__(msg, 'output-error', details, 'outputs')


class CommandDisabledException(WaveguideException):
    exit_code = EXIT_USAGE

    def __init__(self, name, available):
        msg = f'Command "{name}" is not enabled'
        details = {'command': name, 'available': sorted(available)}
        super().__init__(msg, 'command-disabled', details, 'commands')


class RunInterruptedException(WaveguideException):
    exit_code = EXIT_INTERRUPTED

    def __init__(self, reason):
        msg = f'Run interrupted: {reason}'
        super().__init__(msg, 'run-interrupted', {'reason': reason}, 'commands')

# Copyright (c) Opendatalab. All rights reserved.
class HypershiftError(Exception):
    """Base class of every error raised by the package."""

    prefix = 'Error'

    def __init__(self, msg):
        self.msg = msg

    def __str__(self):
        return f'{self.prefix}: {self.msg}'


class InvalidParams(HypershiftError):
    prefix = 'Invalid params'


class InvalidState(HypershiftError):
    prefix = 'Invalid state'


class DomainError(HypershiftError):
    prefix = 'Outside map domain'

    def __init__(self, msg, iteration=None):
        super().__init__(msg)
        self.iteration = iteration

    def __str__(self):
        if self.iteration is None:
            return f'{self.prefix}: {self.msg}'
        return f'{self.prefix} at iteration {self.iteration}: {self.msg}'


class DegenerateParameter(HypershiftError):
    prefix = 'Degenerate parameter'


class OutsideSimplex(HypershiftError):
    prefix = 'Outside simplex'

    def __init__(self, msg, payload):
        super().__init__(msg)
        self.payload = tuple(payload)


class SingularTransform(HypershiftError):
    prefix = 'Singular transform'


class DegenerateDenominator(HypershiftError):
    prefix = 'Degenerate denominator'


class PoleError(HypershiftError):
    prefix = 'Pole'


class DegreeMismatch(HypershiftError):
    prefix = 'Degree mismatch'


class NonzeroConstantTerm(HypershiftError):
    prefix = 'Nonzero constant term'


class NotInverse(HypershiftError):
    prefix = 'Not an inverse'


class BadJetShape(HypershiftError):
    prefix = 'Bad jet shape'


class OutOfDegree(HypershiftError):
    prefix = 'Out of degree'


class ResonantDivisor(HypershiftError):
    prefix = 'Resonant divisor'


class IndeterminateOrder(HypershiftError):
    prefix = 'Indeterminate order'


class DiscrepancyError(HypershiftError):
    prefix = 'Cross-check discrepancy'

    def __init__(self, msg, discrepancies=()):
        super().__init__(msg)
        self.discrepancies = list(discrepancies)


class DivergedOrbit(HypershiftError):
    prefix = 'Diverged orbit'

    def __init__(self, msg, iteration=None):
        super().__init__(msg)
        self.iteration = iteration


class UnresolvedAttractor(HypershiftError):
    prefix = 'Unresolved attractor'


class InsufficientPoints(HypershiftError):
    prefix = 'Insufficient points'


class NoConvergence(HypershiftError):
    prefix = 'No convergence'

    def __init__(self, msg, best_residual=None):
        super().__init__(msg)
        self.best_residual = best_residual


class NotConverged(HypershiftError):
    prefix = 'Not converged'

    def __init__(self, msg, distance=None):
        super().__init__(msg)
        self.distance = distance


class PreconditionViolation(HypershiftError):
    prefix = 'Precondition violated'

"""Exception hierarchy shared by all solver and grid modules."""


class PseudogasError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(PseudogasError):
    """Invalid parameters, grid sizes, or inconsistent solver inputs."""


class DomainError(PseudogasError):
    """An evaluation left the mathematical domain of the operation
    (log argument nonpositive, occupancy divergence, pole crossing)."""


class FugacityError(PseudogasError):
    """Free Bose occupancy undefined: the fugacity reaches the lowest
    single-particle Boltzmann weight on the requested domain."""


class QuadratureError(PseudogasError):
    """A quadrature failed its built-in accuracy certificate."""


class BranchError(PseudogasError):
    """The principal branch of the scattering phase is not defined for
    these inputs (attractive-coupling bound-state pole region)."""


class NonConvergence(PseudogasError):
    """Fixed-point iteration exhausted max_iter above tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class NoRoot(PseudogasError):
    """A bracketed root search found no admissible root."""


class InvariantViolation(PseudogasError):
    """A machine-checked combinatoric identity failed."""

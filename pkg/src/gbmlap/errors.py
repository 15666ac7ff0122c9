"""Exception types shared across the library."""


class DomainError(ValueError):
    """An input lies outside an operation's mathematical domain."""


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class NoSignChange(ValueError):
    """Bracket endpoints do not straddle a root."""


class MaxIterations(RuntimeError):
    """Iteration cap reached before convergence."""


class NoRootInInterval(ValueError):
    """A defining equation has no root inside its admissible interval."""


class BranchError(DomainError):
    """Parameters fall outside the requested closed-form branch."""


class QuadratureNotConverged(RuntimeError):
    """Oscillatory quadrature exhausted its lobe budget before converging."""


class ShootingFailed(RuntimeError):
    """No bracketing slope or multiplier found for a shooting solve."""

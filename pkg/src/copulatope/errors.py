"""Exception hierarchy shared across the package."""


class CopulatopeError(Exception):
    """Base class for all package errors."""


class ZeroDenominator(CopulatopeError):
    """A rational was constructed with denominator zero."""


class NotSquare(CopulatopeError):
    """A square matrix was required."""


class DimensionMismatch(CopulatopeError):
    """Vector/matrix dimensions are incompatible."""


class EmptyPolytope(CopulatopeError):
    """The feasible set is empty."""


class Unbounded(CopulatopeError):
    """The feasible set is unbounded in some direction."""


class NotMember(CopulatopeError):
    """A point expected to lie in a polytope does not."""


class UnsupportedSize(CopulatopeError):
    """A closed-form construction was requested outside its valid size range."""


class MarginMismatch(CopulatopeError):
    """Transportation margins are incompatible (sums differ or nonpositive)."""


class NonIncreasingMargins(CopulatopeError):
    """Cumulative margin vectors must be strictly increasing."""


class BadBoundary(CopulatopeError):
    """A grid matrix violates the required boundary values."""


class OutOfRange(CopulatopeError):
    """A query point lies outside the unit square."""


class PreconditionFailed(CopulatopeError):
    """An operation's stated precondition does not hold for the input."""


class Infeasible(CopulatopeError):
    """An optimization problem has no feasible point."""


class NoInterior(CopulatopeError):
    """The feasible region has no relative-interior point."""


class NotConverged(CopulatopeError):
    """Iterative solver stopped before reaching the requested tolerance."""

    def __init__(self, iterations: int, residual: float):
        super().__init__(f"not converged after {iterations} iterations (residual {residual:.3e})")
        self.iterations = iterations
        self.residual = residual


class InsufficientData(CopulatopeError):
    """A computation was asked for more data than was supplied."""

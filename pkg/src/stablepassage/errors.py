"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the set on which a formula is defined."""


class PoleError(DomainError):
    """A gamma function was asked for its value at a pole."""


class NonConvergenceError(ArithmeticError):
    """A series or quadrature exhausted its iteration budget."""


class BudgetExceededError(RuntimeError):
    """A simulation request would exceed the configured work budget."""


class EmptySampleError(ValueError):
    """An empirical distribution holds no samples."""

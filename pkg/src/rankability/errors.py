"""Exception hierarchy. The CLI maps each class to an exit code."""


class RankabilityError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RankabilityError, ValueError):
    """Malformed or out-of-contract input (exit code 2)."""


class LimitError(RankabilityError):
    """A configured size or capability limit was exceeded (exit code 3)."""


class ConvergenceError(RankabilityError, ArithmeticError):
    """An iterative numerical method failed to converge (exit code 4)."""

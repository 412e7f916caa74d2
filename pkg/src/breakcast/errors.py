"""Exception types raised by breakcast."""


class BreakcastError(Exception):
    """Base class for all package errors."""


class DomainError(BreakcastError, ValueError):
    """A parameter lies outside its admissible range."""


class SingularityError(BreakcastError, ArithmeticError):
    """A transfer function was evaluated too close to one of its poles."""


class ConvergenceError(BreakcastError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision budget."""


class DegenerateSequenceError(BreakcastError, ArithmeticError):
    """The least-squares design is (numerically) singular."""


class TapWindowError(BreakcastError, ValueError):
    """An impulse response does not cover the taps a predictor needs."""

"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the region where a formula is valid."""


class SingularEvaluationError(ArithmeticError):
    """A path-length denominator vanished (heading parallel to the shore)."""


class InvalidStrategyError(ValueError):
    """A strategy does not produce the path its formula assumes."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature ran out of subdivisions.

    The best estimate and its error bound are kept on the exception.
    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NoEscapeError(RuntimeError):
    """A traced path never reached the boundary."""

"""
Exception hierarchy for the superoscillation toolkit.

Validation problems (bad parameters, incompatible inputs) derive from
ValueError; numerical failures (ill-posed solves, singular potentials)
derive from ArithmeticError. The command line front end maps the first
family to exit status 1 and the second to exit status 2.
"""


class SuperoscillationError(Exception):
    """Root of every error raised by this package."""


class ValidationError(SuperoscillationError, ValueError):
    """Input parameters violate a documented precondition."""


class NumericalError(SuperoscillationError, ArithmeticError):
    """A computation could not be carried out reliably."""


class ConfigError(ValidationError):
    """One or more SUPEROSC_* settings could not be parsed."""


class IncommensurateError(ValidationError):
    """Factor frequencies share no common fundamental."""


class NotExpandableError(ValidationError):
    """The signal contains sinc factors and so has no finite harmonic expansion."""


class SpectrumMismatchError(ValidationError):
    """The sampling grid does not cover exactly one period."""


class BoundRegimeError(ValidationError):
    """A dynamic-range estimate became non-positive for these parameters."""


class GramMatrixError(NumericalError):
    """The interpolation Gram matrix is singular or indefinite."""

    def __init__(self, message, condition_number=None):
        super().__init__(message)
        self.condition_number = condition_number


class SingularPotentialError(NumericalError):
    """The reverse-engineered potential has singular grid points."""


class EigenSolveError(NumericalError):
    """The eigensolver did not converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual

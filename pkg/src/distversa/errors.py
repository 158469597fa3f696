"""Exception hierarchy shared across the package."""


class DistversaError(Exception):
    """Base class for all package errors."""


class ParameterArityError(DistversaError):
    """Parameter vector length does not match the family."""


class ParameterDomainError(DistversaError):
    """A parameter lies outside its admissible domain (must be > 0)."""


class SupportError(DistversaError):
    """Outcome lies outside the support of the distribution."""


class CatalogError(DistversaError):
    """Unknown family or missing registration."""


class DivergentSumError(DistversaError):
    """A sum/integral failed to converge under refinement."""


class NonNormalizableError(DivergentSumError):
    """Density mass accumulation diverges; not a probability distribution."""


class ScoreUndefinedError(DistversaError):
    """Score requested at a zero-density point."""


class NumericPSDError(DistversaError):
    """A matrix that should be PSD has a materially negative determinant."""


class PriorPolicyError(DistversaError):
    """The model is improper on part of the prior support and no policy
    was supplied to handle it."""


class ExpressionError(DistversaError):
    """Base class for expression grammar errors."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LexError(ExpressionError):
    """Unknown character or malformed token."""


class UnsupportedNotationError(ExpressionError):
    """Construct outside the counting rules (sums, integrals, derivatives)."""


class ParseError(ExpressionError):
    """Token stream does not form a valid expression."""

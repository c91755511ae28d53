"""Custom exception classes for Spin Semiclassics."""


class SpinSemiclassicsError(Exception):
    """Base exception for all Spin Semiclassics errors."""


class ConfigurationError(SpinSemiclassicsError):
    """Raised when configuration is invalid or missing."""


class PolynomialError(SpinSemiclassicsError):
    """Raised for malformed polynomial text, degree-cap overflow or unsupported polynomial input."""


class PreconditionError(SpinSemiclassicsError):
    """Raised when an operation is called outside its documented domain."""


class NumericalError(SpinSemiclassicsError):
    """Raised when an eigensolver or iterative refinement fails to converge."""


class SymbolFitError(SpinSemiclassicsError):
    """Raised when a symbol correction fit is rank deficient."""


class LimitStateError(SpinSemiclassicsError):
    """Raised when the critical set does not satisfy the classical-limit hypotheses."""


class InvariantViolationError(SpinSemiclassicsError):
    """Raised when a hard-failure invariant check fails."""


class SerializationError(SpinSemiclassicsError):
    """Raised when an operator or spectrum payload cannot be decoded."""

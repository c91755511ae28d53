"""Tests for custom exception classes."""

import pytest

from spin_semiclassics.utils.exceptions import (
    ConfigurationError,
    InvariantViolationError,
    LimitStateError,
    NumericalError,
    PolynomialError,
    PreconditionError,
    SerializationError,
    SpinSemiclassicsError,
    SymbolFitError,
)

ALL_ERRORS = [
    ConfigurationError,
    PolynomialError,
    PreconditionError,
    NumericalError,
    SymbolFitError,
    LimitStateError,
    InvariantViolationError,
    SerializationError,
]


class TestExceptionHierarchy:
    """Tests that all custom exceptions inherit from the base."""

    @pytest.mark.parametrize("exc_class", ALL_ERRORS)
    def test_inherits_from_base(self, exc_class: type) -> None:
        assert issubclass(exc_class, SpinSemiclassicsError)

    def test_base_inherits_from_exception(self) -> None:
        assert issubclass(SpinSemiclassicsError, Exception)

    @pytest.mark.parametrize("exc_class", ALL_ERRORS)
    def test_can_raise_and_catch(self, exc_class: type) -> None:
        with pytest.raises(SpinSemiclassicsError):
            raise exc_class("test message")

    def test_exception_message_preserved(self) -> None:
        msg = "N-grid must be strictly increasing"
        exc = ConfigurationError(msg)
        assert str(exc) == msg

"""
Error Handling Module

This module provides the error handling framework for the nonlocal interface solver.
It includes:

1. Custom exception classes for the configuration and numerical failure families
2. Error classification and categorization
3. Mapping from exceptions to command-line exit codes
4. User-friendly error message generation
"""

from typing import Optional

from .logging_config import ErrorCategory, get_logger

# Get module logger
logger = get_logger(__name__)

# Exit codes of the command-line front end
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIGURATION_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3

# --- Custom Exception Classes ---

class NLIError(Exception):
    """Base exception class for all nonlocal interface solver errors."""

    exit_code: int = EXIT_NUMERICAL_FAILURE

    def __init__(self, message: str, error_category: ErrorCategory = ErrorCategory.UNKNOWN,
                 user_message: Optional[str] = None):
        """
        Initialize the exception.

        Args:
            message: Technical error message
            error_category: Category of the error
            user_message: User-friendly error message (if None, a generic message will be used)
        """
        self.error_category = error_category
        self.user_message = user_message or self._get_default_user_message(message, error_category)
        super().__init__(message)

    def _get_default_user_message(self, message: str, category: ErrorCategory) -> str:
        """Generate a default user-friendly message based on the error category."""
        base_msg = "An error occurred"

        category_messages = {
            ErrorCategory.CONFIGURATION: "Invalid configuration. Please check the flags and the config file.",
            ErrorCategory.GEOMETRY: "The domain layout is incompatible with the mesh size.",
            ErrorCategory.NUMERICAL: "The numerical computation failed.",
            ErrorCategory.VALIDATION: "Invalid arguments were passed to a numerical routine.",
            ErrorCategory.RESOURCE: "A file could not be read or written.",
            ErrorCategory.INTERNAL: "An internal consistency check failed.",
            ErrorCategory.UNKNOWN: "An unexpected error occurred.",
        }

        return category_messages.get(category, base_msg)


# Configuration family (exit code 2)
class ConfigurationError(NLIError):
    """Error raised when a run configuration is invalid."""

    exit_code = EXIT_CONFIGURATION_ERROR

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(message, error_category=ErrorCategory.CONFIGURATION, user_message=user_message)


class NonCommensurateError(NLIError):
    """Error raised when a horizon or subdomain length is not an integral multiple of h."""

    exit_code = EXIT_CONFIGURATION_ERROR

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(message, error_category=ErrorCategory.GEOMETRY, user_message=user_message)


class OutOfDomainError(NLIError):
    """Error raised when a coordinate lies outside [a - delta1, b + delta2]."""

    exit_code = EXIT_CONFIGURATION_ERROR

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(message, error_category=ErrorCategory.GEOMETRY, user_message=user_message)


class ValidationError(NLIError):
    """Error raised when arguments violate a precondition."""

    exit_code = EXIT_CONFIGURATION_ERROR

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(message, error_category=ErrorCategory.VALIDATION, user_message=user_message)


class DimensionMismatchError(ValidationError):
    """Error raised when vector and matrix dimensions disagree."""


# Numerical family (exit code 3)
class NumericalError(NLIError):
    """Error raised when a numerical computation fails."""

    exit_code = EXIT_NUMERICAL_FAILURE

    def __init__(self, message: str, user_message: Optional[str] = None,
                 error_category: ErrorCategory = ErrorCategory.NUMERICAL):
        super().__init__(message, error_category=error_category, user_message=user_message)


class NotPositiveDefiniteError(NumericalError):
    """Error raised when a Cholesky pivot is not positive."""

    def __init__(self, message: str, user_message: Optional[str] = None):
        user_msg = user_message or "The system matrix is not positive definite. Check the kernel and constraint set."
        super().__init__(message, user_message=user_msg)


class SingularSystemError(NumericalError):
    """Error raised when the constrained system cannot be solved."""

    def __init__(self, message: str, user_message: Optional[str] = None):
        user_msg = user_message or "The constrained system is singular. The configuration is not coercive."
        super().__init__(message, user_message=user_msg)


class QuadratureDomainClippedError(NumericalError):
    """Error raised when an interaction ball leaves the declared quadrature domain."""


class AssemblyError(NumericalError):
    """Error raised when an assembled entry falls outside the reserved band."""

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(message, user_message=user_message, error_category=ErrorCategory.INTERNAL)


# --- Error Handling Utilities ---

def create_user_error_message(exception: Exception) -> str:
    """
    Create a user-friendly error message from an exception.

    Args:
        exception: The exception to create a message for

    Returns:
        A user-friendly error message
    """
    if isinstance(exception, NLIError) and exception.user_message:
        return exception.user_message

    # Default messages based on exception type
    if isinstance(exception, PermissionError):
        return "Permission denied while accessing a file."
    elif isinstance(exception, FileNotFoundError):
        return "The requested file could not be found."
    elif isinstance(exception, OSError):
        return "A file could not be read or written."
    elif isinstance(exception, ValueError):
        return "Invalid input provided. Please check your input and try again."
    elif isinstance(exception, KeyError):
        return "A required value is missing. Please check your input and try again."
    elif isinstance(exception, TypeError):
        return "An unexpected type error occurred. Please check your input and try again."

    # Generic message for other exceptions
    return "An unexpected error occurred."


def classify_exception(exception: Exception) -> ErrorCategory:
    """
    Classify an exception into an error category.

    Args:
        exception: The exception to classify

    Returns:
        The error category
    """
    if isinstance(exception, NLIError):
        return exception.error_category

    # Classify based on exception type
    if isinstance(exception, (FileNotFoundError, PermissionError, OSError)):
        return ErrorCategory.RESOURCE
    elif isinstance(exception, (ValueError, TypeError, KeyError)):
        return ErrorCategory.VALIDATION
    elif isinstance(exception, ArithmeticError):
        return ErrorCategory.NUMERICAL

    # Default to INTERNAL for unclassified exceptions
    return ErrorCategory.INTERNAL


def exit_code_for(exception: Exception) -> int:
    """
    Map an exception to the command-line exit code.

    Configuration-family errors (including unreadable config files) exit with 2,
    everything else with 3.
    """
    if isinstance(exception, NLIError):
        return exception.exit_code
    if classify_exception(exception) in (ErrorCategory.RESOURCE, ErrorCategory.CONFIGURATION):
        return EXIT_CONFIGURATION_ERROR
    return EXIT_NUMERICAL_FAILURE

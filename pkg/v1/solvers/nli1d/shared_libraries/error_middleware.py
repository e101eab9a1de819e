"""
Error Handling Middleware Module

This module provides middleware for handling errors in the command-line front end.
It includes:

1. Error handling middleware for command handlers (exception -> exit code)
2. Graceful degradation for optional artifacts
3. Standardized error responses for report sidecars
"""

import functools
import logging
import sys
from typing import Any, Callable, Dict, TypeVar

from .error_handling import classify_exception, create_user_error_message, exit_code_for
from .logging_config import get_logger

# Get module logger
logger = get_logger(__name__)

# Function type for type hints
F = TypeVar("F", bound=Callable[..., Any])

# --- Command Error Handling Middleware ---

def handle_command_errors(func: Callable[..., int]) -> Callable[..., int]:
    """
    Decorator to handle errors in command handlers.

    The wrapped handler returns an exit code. Any exception is logged with its
    category, reported on stderr and converted to the mapped exit code.

    Args:
        func: The command handler to wrap

    Returns:
        Wrapped command handler
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            logger.debug(f"Executing command: {func.__name__}")
            code = func(*args, **kwargs)
            logger.debug(f"Command {func.__name__} finished with exit code {code}")
            return code

        except Exception as e:
            error_category = classify_exception(e)
            code = exit_code_for(e)
            logger.error_with_category(
                f"Error in command {func.__name__}: {type(e).__name__}: {str(e)}",
                error_category,
                extra={"exit_code": code},
            )
            # Traceback only reaches handlers open to DEBUG (log file, or a DEBUG console).
            logger.debug(f"Traceback of {func.__name__} failure", exc_info=True)

            user_message = create_user_error_message(e)
            print(f"error: {user_message} ({type(e).__name__}: {e})", file=sys.stderr)
            return code

    return wrapper

# --- Graceful Degradation Utilities ---

def with_graceful_degradation(
    fallback_value: Any,
    fallback_message: str = "Using fallback due to error",
    log_level: int = logging.WARNING,
) -> Callable[[F], F]:
    """
    Decorator to provide graceful degradation for non-critical functions.

    Args:
        fallback_value: Value to return if the function fails
        fallback_message: Message to log when falling back
        log_level: Log level to use for the fallback message

    Returns:
        Decorated function
    """
    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                logger.log(
                    log_level,
                    f"{fallback_message} in {func.__name__}: {type(e).__name__}: {str(e)}",
                )
                logger.debug(f"Traceback of {func.__name__} failure", exc_info=True)
                return fallback_value

        return wrapper

    return decorator

# --- Error Response Utilities ---

def create_error_response(exception: Exception, include_details: bool = False) -> Dict[str, Any]:
    """
    Create a standardized error response dictionary.

    Args:
        exception: The exception to create a response for
        include_details: Whether to include technical details in the response

    Returns:
        Error response dictionary
    """
    user_message = create_user_error_message(exception)

    response = {
        "success": False,
        "error": user_message,
    }

    if include_details:
        response.update({
            "error_type": type(exception).__name__,
            "error_details": str(exception),
            "error_category": classify_exception(exception).name,
        })

    return response

"""
Centralized error handling utilities for commands and API responses.
"""

import functools
import logging
from typing import Dict, Any, Callable

from app.core.exceptions import GentleEngineException, InternalServerError
from app.core.status_codes import ExitCode

logger = logging.getLogger(__name__)


class EngineErrorHandler:
    """Centralized error handling around engine calls"""

    @staticmethod
    def handle_engine_exceptions(operation_context: str = "Engine call") -> Callable:
        """
        Decorator that lets engine exceptions through and wraps anything else

        Args:
            operation_context (str): Context about the operation being performed

        Returns:
            Callable: Decorator function
        """
        def decorator(func: Callable) -> Callable:
            @functools.wraps(func)
            def wrapper(*args, **kwargs):
                try:
                    return func(*args, **kwargs)
                except GentleEngineException:
                    raise
                except Exception as e:
                    logger.exception("%s failed", operation_context)
                    raise InternalServerError(
                        detail=f"{operation_context}: {str(e)}",
                        error_message="An unexpected error occurred inside the engine"
                    )
            return wrapper
        return decorator

    @staticmethod
    def exit_code(exception: Exception) -> int:
        """
        Process exit code of the batch front end for an exception

        Args:
            exception (Exception): The exception to classify

        Returns:
            int: 1 for invalid input, 2 for I/O, 3 for a violated d = 0, 4 for incomplete results
        """
        if isinstance(exception, GentleEngineException):
            return exception.exit_code
        return ExitCode.IO_ERROR.value


def create_success_response(
    data: Any,
    message: str = None,
    operation: str = None,
    resource: str = None,
    count: int = None
) -> Dict[str, Any]:
    """
    Create a standardized success response

    Args:
        data (Any): The response data
        message (str): Custom success message
        operation (str): The operation performed
        resource (str): The resource type
        count (int): Count of items (for list operations)

    Returns:
        Dict[str, Any]: Standardized response dictionary
    """
    from app.core.status_codes import get_success_message

    response = {}

    if message:
        response["message"] = message
    elif operation and resource:
        response["message"] = get_success_message(operation, resource)
    else:
        response["message"] = "Operation completed successfully"

    if isinstance(data, list):
        response["items"] = data
        response["count"] = count if count is not None else len(data)
    elif isinstance(data, dict):
        response.update(data)
    else:
        response["data"] = data

    return response

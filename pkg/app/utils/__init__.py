"""
Shared error plumbing for the routes and the command line.
"""

from app.core.exceptions import GentleEngineException, InvalidInputError, FixtureNotFound
from app.core.status_codes import ExitCode
from app.utils.error_handler import EngineErrorHandler, create_success_response

__all__ = [
    'GentleEngineException',
    'InvalidInputError',
    'FixtureNotFound',
    'ExitCode',
    'EngineErrorHandler',
    'create_success_response',
]

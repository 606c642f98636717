"""
Custom exceptions for the bracketlab application.
"""
from typing import Dict, Any
from rest_framework import status
from rest_framework.views import exception_handler
from rest_framework.response import Response
import logging

logger = logging.getLogger(__name__)


# Command-line exit codes
EXIT_INVALID_INPUT = 1
EXIT_CHECK_FAILED = 2
EXIT_RESOURCE_LIMIT = 3


# Base Custom Exceptions
class BracketLabException(Exception):
    """Base exception for bracketlab application."""

    def __init__(self, message: str = "An error occurred", code: str = "GENERIC_ERROR",
                 status_code: int = status.HTTP_400_BAD_REQUEST, details: Dict = None,
                 exit_code: int = EXIT_INVALID_INPUT):
        self.message = message
        self.code = code
        self.status_code = status_code
        self.details = details or {}
        self.exit_code = exit_code
        super().__init__(self.message)


class ValidationException(BracketLabException):
    """Malformed input (bad JSON document, unknown ids, wrong option values)."""

    def __init__(self, message: str = "Validation failed", field_errors: Dict = None):
        super().__init__(
            message=message,
            code="VALIDATION_ERROR",
            status_code=status.HTTP_400_BAD_REQUEST,
            details={'field_errors': field_errors or {}}
        )


class InvalidDiagramException(BracketLabException):
    """Diagram violates the matched-diagram invariants."""

    def __init__(self, message: str = "Invalid diagram", violations: list = None):
        super().__init__(
            message=message,
            code="INVALID_DIAGRAM",
            status_code=status.HTTP_400_BAD_REQUEST,
            details={'violations': violations or []}
        )


class PolynomialParseException(BracketLabException):
    """Polynomial text does not follow the canonical grammar."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(
            message=f"{message} at position {position}",
            code="POLYNOMIAL_PARSE_ERROR",
            status_code=status.HTTP_400_BAD_REQUEST,
            details={'position': position}
        )


class MoveException(BracketLabException):
    """A rewrite or check precondition does not hold."""

    def __init__(self, message: str = "Move refused", move: str = None):
        super().__init__(
            message=message,
            code="MOVE_REFUSED",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            details={'move': move}
        )


class ResourceLimitException(BracketLabException):
    """Configured state-space or enumeration limit exceeded."""

    def __init__(self, message: str = "Resource limit exceeded", limit: int = None, required: int = None):
        super().__init__(
            message=message,
            code="RESOURCE_LIMIT_EXCEEDED",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            details={'limit': limit, 'required': required},
            exit_code=EXIT_RESOURCE_LIMIT
        )


class VerificationFailedException(BracketLabException):
    """At least one identity check failed, or a bounded search ran dry."""

    def __init__(self, message: str = "Verification failed", failures: list = None):
        super().__init__(
            message=message,
            code="VERIFICATION_FAILED",
            status_code=status.HTTP_409_CONFLICT,
            details={'failures': failures or []},
            exit_code=EXIT_CHECK_FAILED
        )


class SearchExhaustedException(VerificationFailedException):
    """Short-cycle reduction search exhausted its depth."""

    def __init__(self, message: str, depth: int):
        super().__init__(message=message, failures=[{'check': 'short_cycle_reduction', 'depth': depth}])


# Custom Exception Handler
def custom_exception_handler(exc, context):
    """
    Custom exception handler for DRF that renders our exceptions
    in the same error envelope as the framework's own errors.
    """
    response = exception_handler(exc, context)

    if isinstance(exc, BracketLabException):
        custom_response_data = {
            'error': {
                'message': exc.message,
                'code': exc.code,
                'details': exc.details
            }
        }

        logger.warning(f"Request refused: {exc.code} - {exc.message}", extra={
            'exception_code': exc.code,
            'status_code': exc.status_code,
            'path': context['request'].path,
            'method': context['request'].method,
        })

        response = Response(custom_response_data, status=exc.status_code)

    elif response is not None:
        custom_response_data = {
            'error': {
                'message': 'Request failed',
                'code': 'REQUEST_ERROR',
                'details': response.data if response.data else {}
            }
        }

        if response.status_code == status.HTTP_404_NOT_FOUND:
            custom_response_data['error']['message'] = 'Resource not found'
            custom_response_data['error']['code'] = 'RESOURCE_NOT_FOUND'

        elif response.status_code == status.HTTP_405_METHOD_NOT_ALLOWED:
            custom_response_data['error']['message'] = 'Method not allowed'
            custom_response_data['error']['code'] = 'METHOD_NOT_ALLOWED'

        elif response.status_code == status.HTTP_400_BAD_REQUEST:
            custom_response_data['error']['message'] = 'Bad request'
            custom_response_data['error']['code'] = 'BAD_REQUEST'

        response.data = custom_response_data

    else:
        logger.error(f"Unhandled exception: {str(exc)}", extra={
            'exception_type': type(exc).__name__,
            'path': context['request'].path,
            'method': context['request'].method,
        }, exc_info=True)

        response = Response({
            'error': {
                'message': 'Internal server error',
                'code': 'INTERNAL_SERVER_ERROR',
                'details': {}
            }
        }, status=status.HTTP_500_INTERNAL_SERVER_ERROR)

    return response

"""
Error handling utilities and decorators.
"""
import functools
import logging
from typing import Callable, Optional

from django.core.management.base import CommandError

from .exceptions import BracketLabException, ValidationException

logger = logging.getLogger(__name__)


def handle_service_errors(
    default_message: str = "Service error occurred",
    log_errors: bool = True,
    reraise_exceptions: Optional[tuple] = None
):
    """
    Decorator to handle service layer errors consistently.

    Args:
        default_message: Message used when an unexpected exception is wrapped
        log_errors: Whether to log unexpected errors
        reraise_exceptions: Tuple of exception types to reraise untouched
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)

            except BracketLabException:
                raise

            except Exception as e:
                if reraise_exceptions and isinstance(e, reraise_exceptions):
                    raise

                if log_errors:
                    logger.error(
                        f"Service error in {func.__name__}: {str(e)}",
                        extra={
                            'function': func.__name__,
                            'exception_type': type(e).__name__
                        },
                        exc_info=True
                    )

                raise BracketLabException(
                    message=f"{default_message}: {e}",
                    code="SERVICE_ERROR"
                ) from e

        return wrapper
    return decorator


def handle_command_errors(func: Callable) -> Callable:
    """
    Decorator for management command ``handle`` methods.

    Domain exceptions become ``CommandError`` carrying the exit code of the
    exception, so ``manage.py`` exits 1 on bad input, 2 on a failed check
    and 3 on a refused resource limit.
    """
    @functools.wraps(func)
    def wrapper(self, *args, **options):
        try:
            return func(self, *args, **options)

        except BracketLabException as e:
            logger.warning(
                f"Command refused: {e.code} - {e.message}",
                extra={'command': type(self).__module__, 'code': e.code}
            )
            raise CommandError(e.message, returncode=e.exit_code) from e

        except (OSError, ValueError) as e:
            raise CommandError(str(e), returncode=ValidationException().exit_code) from e

    return wrapper

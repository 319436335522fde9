import logging

from fastapi import HTTPException

from ...core.errors import CapacityError, DegenerateSpecializationError, InvariantViolation

logger = logging.getLogger(__name__)


def to_http_error(error: Exception) -> HTTPException:
    """Map engine exceptions to HTTP status codes."""
    if isinstance(error, HTTPException):
        return error
    if isinstance(error, CapacityError):
        return HTTPException(status_code=413, detail=str(error))
    if isinstance(error, (InvariantViolation, DegenerateSpecializationError)):
        logger.error(f"Internal error: {error}")
        return HTTPException(status_code=500, detail=str(error))
    if isinstance(error, ValueError):
        return HTTPException(status_code=422, detail=str(error))
    logger.error(f"Unexpected error: {error}")
    return HTTPException(status_code=500, detail=str(error))

import logging
from typing import Callable

from fastapi import FastAPI

from ..config import settings
from .log_configs import get_logger
from .resultant import reference_resultant

logger = logging.getLogger(__name__)

# small spaces whose normalization is computed at startup
WARM_SPACES = [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4)]


def create_start_app_handler(app: FastAPI) -> Callable:
    async def start_app() -> None:
        get_logger(settings.LOG_LEVEL)
        logger.info("Starting up application...")
        for n, d in WARM_SPACES:
            if n <= settings.MAX_VARIABLES:
                reference_resultant(n, d)

    return start_app


def create_stop_app_handler(app: FastAPI) -> Callable:
    async def stop_app() -> None:
        logger.info("Shutting down application...")
        reference_resultant.cache_clear()

    return stop_app

import logging
import time

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .api.certify import router as certify_router
from .api.forms import router as forms_router
from .api.roots import router as roots_router
from .api.utils.errors import to_http_error
from .config import settings
from .core.errors import PositivityError
from .core.events import create_start_app_handler, create_stop_app_handler
from .core.log_configs import uvicorn_log_config

logger = logging.getLogger(__name__)

VERSION = "0.1.0"


def get_application() -> FastAPI:
    """Create and configure the FastAPI application."""
    app = FastAPI(
        title="Positivity Certification API",
        description="Exact rational certificates of positivity for homogeneous forms",
        version=VERSION,
        docs_url="/docs",
        redoc_url="/redoc",
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # Event handlers
    app.add_event_handler("startup", create_start_app_handler(app))
    app.add_event_handler("shutdown", create_stop_app_handler(app))

    # Routers
    app.include_router(
        certify_router,
        prefix="/api/v1/certify",
        tags=["certify"]
    )
    app.include_router(
        forms_router,
        prefix="/api/v1/forms",
        tags=["forms"]
    )
    app.include_router(
        roots_router,
        prefix="/api/v1/roots",
        tags=["roots"]
    )

    @app.exception_handler(RequestValidationError)
    async def validation_exception_handler(
        request: Request,
        exc: RequestValidationError
    ):
        """Handle validation errors."""
        return JSONResponse(
            status_code=422,
            content={
                "detail": "Validation Error",
                "errors": exc.errors()
            }
        )

    @app.exception_handler(PositivityError)
    async def positivity_exception_handler(request: Request, exc: PositivityError):
        error = to_http_error(exc)
        return JSONResponse(status_code=error.status_code, content={"detail": error.detail})

    @app.get("/", tags=["health"])
    async def root():
        """Root endpoint with API information."""
        return {
            "name": "Positivity Certification API",
            "version": VERSION,
            "max_variables": settings.MAX_VARIABLES,
            "docs_url": "/docs",
            "redoc_url": "/redoc"
        }

    return app


app = get_application()


@app.middleware("http")
async def add_timing_logs(request: Request, call_next):
    """Log request timing information."""
    start_time = time.time()
    response = await call_next(request)
    elapsed_time = time.time() - start_time

    logger.info(
        f"processed request: path={request.url.path}, "
        f"status={response.status_code}, "
        f"time_elapsed={elapsed_time:.4f}"
    )
    return response


def run_main_app() -> None:
    """Run the application using uvicorn."""
    uvicorn.run(
        "app.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        log_config=uvicorn_log_config(settings.LOG_LEVEL),
    )


if __name__ == "__main__":
    run_main_app()

"""FastAPI application entry point."""

from contextlib import asynccontextmanager

from fastapi import FastAPI
from slowapi import _rate_limit_exceeded_handler
from slowapi.errors import RateLimitExceeded

from app.core.config.settings import settings
from app.core.exceptions import (
    DomainException,
    domain_exception_handler,
    generic_exception_handler,
)
from app.core.logging import logger
from app.core.middleware.rate_limit import limiter
from app.core.middleware.request_logging import request_logging_middleware
from app.modules.experiments.api.router import router as experiments_router

VERSION = "0.1.0"


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan events."""
    logger.info("Starting BRNES simulator API...")
    logger.info(f"Environment: {settings.environment}")
    logger.info(f"Run limits: {settings.api_max_episodes} episodes, {settings.api_rate_limit}")
    yield
    logger.info("Shutting down BRNES simulator API...")


app = FastAPI(
    title="BRNES Simulator",
    description="Multi-agent experience sharing under privacy and adversarial attacks",
    version=VERSION,
    lifespan=lifespan,
)

app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)

app.middleware("http")(request_logging_middleware)

app.add_exception_handler(DomainException, domain_exception_handler)
app.add_exception_handler(Exception, generic_exception_handler)

app.include_router(experiments_router, prefix="/api/v1")


@app.get("/health")
def health_check():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "version": VERSION,
        "limits": {
            "max_episodes": settings.api_max_episodes,
            "rate_limit": settings.api_rate_limit,
        },
    }


@app.get("/")
def root():
    """Root endpoint."""
    return {
        "name": "BRNES Simulator",
        "version": VERSION,
        "docs": "/docs",
        "health": "/health",
    }

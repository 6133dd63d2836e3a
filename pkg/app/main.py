"""
Refined Broccoli Engine - Main Application

HTTP surface for exact computation of refined broccoli, refined
descendant and refined Severi invariants of rational tropical curves.
"""

from contextlib import asynccontextmanager
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import logging
import time

from app.api.routes import curves, invariants, verification
from app.config import configure_logging, get_settings
from app.models.schemas import ENGINE_VERSION, HealthResponse

configure_logging()
logger = logging.getLogger(__name__)

APP_TITLE = "Refined Broccoli Engine"
APP_DESCRIPTION = (
    "Refined counts of rational tropical curves through real and complex points. "
    'Values are Laurent polynomials in y; rationals travel as "num/den" strings.'
)
API_PREFIX = "/api/v1"

ENDPOINTS = {
    "health": f"{API_PREFIX}/health",
    "compute": f"{API_PREFIX}/invariants/compute",
    "enumerate": f"{API_PREFIX}/curves/enumerate",
    "relations": f"{API_PREFIX}/verify/relations",
    "invariance": f"{API_PREFIX}/verify/invariance",
    "kontsevich": f"{API_PREFIX}/verify/kontsevich",
    "welschinger": f"{API_PREFIX}/verify/welschinger",
}


@asynccontextmanager
async def lifespan(app: FastAPI):
    settings = get_settings()
    logger.info(
        f"Starting {APP_TITLE} v{ENGINE_VERSION} "
        f"(spread={settings.spread}, retry_budget={settings.retry_budget}, workers={settings.workers})"
    )
    yield
    logger.info(f"Stopping {APP_TITLE}")


app = FastAPI(title=APP_TITLE, description=APP_DESCRIPTION, version=ENGINE_VERSION, lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)


# --- Middleware ---

@app.middleware("http")
async def add_process_time_header(request: Request, call_next):
    """Milliseconds spent on the request."""
    start = time.perf_counter()
    response = await call_next(request)
    response.headers["X-Process-Time"] = str(round((time.perf_counter() - start) * 1000, 2))
    return response


# --- Exception Handlers ---

@app.exception_handler(ValueError)
async def engine_error_handler(request: Request, exc: ValueError):
    """Engine errors are ValueErrors; report the concrete class to the client."""
    logger.warning(f"{type(exc).__name__} on {request.url.path}: {exc}")
    return JSONResponse(status_code=400, content={"error": type(exc).__name__, "detail": str(exc)})


@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    logger.error(f"Unexpected error on {request.url.path}: {exc}")
    return JSONResponse(
        status_code=500,
        content={"error": "InternalServerError", "detail": "An unexpected error occurred"},
    )


# --- Routes ---

for router in (invariants.router, curves.router, verification.router):
    app.include_router(router, prefix=API_PREFIX)


@app.get(ENDPOINTS["health"], response_model=HealthResponse, tags=["Health"])
async def health_check():
    return HealthResponse(status="healthy", version=ENGINE_VERSION)


@app.get("/", tags=["Root"])
async def root():
    """Engine name, version and the computation endpoints."""
    return {
        "name": APP_TITLE,
        "version": ENGINE_VERSION,
        "documentation": {"swagger": app.docs_url, "openapi": app.openapi_url},
        "endpoints": ENDPOINTS,
    }

"""
Invariant Routes

API endpoints for computing invariants:
- Refined broccoli, descendant and Severi invariants through a configuration
"""

from fastapi import APIRouter, HTTPException, status
import logging

from app.config import get_settings
from app.models.schemas import (
    ComputeRequest,
    InvariantResultSchema,
    ErrorResponse,
)
from app.services.curve_model import Degree
from app.services.enumeration import (
    Config,
    EnumerationReport,
    enumerate_through,
    generic_configuration,
)
from app.services.invariants import compute_invariant

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/invariants",
    tags=["Invariants"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request"},
        500: {"model": ErrorResponse, "description": "Internal Server Error"},
    }
)


def resolve_config(request, degree: Degree) -> tuple[Config, EnumerationReport]:
    """The request's explicit configuration, or a generic one drawn from its seed."""
    if request.config is not None:
        cfg = request.config.to_config()
        return cfg, enumerate_through(degree, request.real, request.complex, cfg)
    return generic_configuration(
        degree, request.real, request.complex, request.seed, **get_settings().draw_options()
    )


@router.post(
    "/compute",
    response_model=InvariantResultSchema,
    summary="Compute an invariant",
    description="""
    Compute one invariant of a degree with r real and s complex markings.

    Without an explicit configuration a generic one is drawn from the seed,
    so the same request always returns the same value. Coefficients are
    exact rationals serialized as "num/den" strings.
    """
)
def compute(request: ComputeRequest):
    try:
        degree = request.resolve()
        logger.info(
            f"Computing {request.invariant.value} for {len(degree.ends)} ends, "
            f"r={request.real}, s={request.complex}"
        )
        cfg, report = resolve_config(request, degree)
        seeds = () if request.config is not None else (request.seed,)
        result = compute_invariant(
            request.invariant, degree, request.real, request.complex, cfg, report, seeds
        )
        logger.info(f"{request.invariant.value} = {result.value}")
        return InvariantResultSchema.from_result(result)

    except ValueError as e:
        logger.error(f"Validation error during compute: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(e)
        )
    except Exception as e:
        logger.error(f"Error computing invariant: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while computing the invariant"
        )

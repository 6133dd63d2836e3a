"""
Curve Routes

API endpoints for inspecting the curves behind an invariant.
"""

from fastapi import APIRouter, HTTPException, status
import logging

from app.models.schemas import (
    EnumerateRequest,
    EnumerationReportSchema,
    ErrorResponse,
)
from .invariants import resolve_config

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/curves",
    tags=["Curves"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request"},
        500: {"model": ErrorResponse, "description": "Internal Server Error"},
    }
)


@router.post(
    "/enumerate",
    response_model=EnumerationReportSchema,
    response_model_by_alias=True,
    summary="Enumerate curves through a configuration",
    description="""
    List every rational tropical curve of the degree through the point and
    line conditions, one representative per relabeling orbit, each with its
    refined multiplicity. Rejected types are counted by reason.
    """
)
def enumerate_curves(request: EnumerateRequest):
    try:
        degree = request.resolve()
        cfg, report = resolve_config(request, degree)
        logger.info(f"Found {len(report.curves)} curves ({report.labeled_count} labeled)")
        return EnumerationReportSchema.from_report(report, cfg, degree.fixed, request.list_curves)

    except ValueError as e:
        logger.error(f"Validation error during enumeration: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(e)
        )
    except Exception as e:
        logger.error(f"Error enumerating curves: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while enumerating curves"
        )

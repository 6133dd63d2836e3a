"""
Verification Routes

API endpoints for the verifiers and oracles:
- Fuzz the wall-crossing relations
- Compare an invariant across seeded configurations
- Classical Kontsevich and Welschinger numbers
"""

from fastapi import APIRouter, HTTPException, Query, status
import logging

from app.config import get_settings
from app.models.schemas import (
    RelationRequest,
    RelationResponse,
    InvarianceRequest,
    InvarianceResponse,
    LaurentSchema,
    WelschingerRequest,
    OracleResponse,
    ErrorResponse,
)
from app.services.curve_model import Degree
from app.services.enumeration import generic_configuration
from app.services.verification import (
    fuzz_relation,
    invariance_harness,
    kontsevich_N,
    welschinger_total,
)

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/verify",
    tags=["Verification"],
    responses={
        400: {"model": ErrorResponse, "description": "Bad Request"},
        500: {"model": ErrorResponse, "description": "Internal Server Error"},
    }
)


@router.post(
    "/relations",
    response_model=RelationResponse,
    summary="Fuzz a wall-crossing relation",
    description="Evaluate the relation on random balanced stars and report every nonzero sample."
)
def verify_relation(request: RelationRequest):
    try:
        report = fuzz_relation(request.relation, request.samples, request.max_entry, request.seed)
        logger.info(f"Relation {request.relation}: {len(report.violations)} violations")
        return RelationResponse(**report.to_dict())

    except ValueError as e:
        logger.error(f"Validation error during relation check: {str(e)}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.error(f"Error checking relation: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while checking the relation"
        )


@router.post(
    "/invariance",
    response_model=InvarianceResponse,
    summary="Check invariance across seeds",
    description="""
    Compute the invariant through one generic configuration per seed and
    compare the values exactly. A mismatch names the first pair of seeds.
    """
)
def verify_invariance(request: InvarianceRequest):
    try:
        degree = request.resolve()
        settings = get_settings()
        report = invariance_harness(
            degree,
            request.real,
            request.complex,
            request.seeds,
            kind=request.invariant,
            workers=settings.workers,
            **settings.draw_options(),
        )
        mismatch_seeds = None
        if report.mismatch is not None:
            mismatch_seeds = [request.seeds[i] for i in report.mismatch]
        return InvarianceResponse(
            consistent=report.consistent,
            value=LaurentSchema.from_laurent(report.value),
            values={str(r.seeds[0]): LaurentSchema.from_laurent(r.value) for r in report.results},
            mismatch_seeds=mismatch_seeds,
        )

    except ValueError as e:
        logger.error(f"Validation error during invariance check: {str(e)}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.error(f"Error checking invariance: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while checking invariance"
        )


@router.get(
    "/kontsevich",
    response_model=OracleResponse,
    summary="Kontsevich numbers",
    description="Rational plane curves of degree d through 3d-1 general points, for d up to max_degree."
)
async def kontsevich(max_degree: int = Query(default=4, ge=1, le=12)):
    values = {d: str(kontsevich_N(d)) for d in range(1, max_degree + 1)}
    return OracleResponse(oracle="kontsevich", values=values)


@router.post(
    "/welschinger",
    response_model=OracleResponse,
    summary="Welschinger number",
    description="Sum of the real multiplicities of the tropical curves through 3d-1 real points."
)
def welschinger(request: WelschingerRequest):
    try:
        degree = Degree.projective_plane(request.p2_degree)
        r = 3 * request.p2_degree - 1
        cfg, report = generic_configuration(degree, r, 0, request.seed, **get_settings().draw_options())
        value = welschinger_total(degree, r, cfg, report)
        return OracleResponse(oracle="welschinger", values={request.p2_degree: str(value)})

    except ValueError as e:
        logger.error(f"Validation error during Welschinger count: {str(e)}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing Welschinger number: {str(e)}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while computing the Welschinger number"
        )

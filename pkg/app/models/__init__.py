"""
Models package - Pydantic schemas for requests, responses and result files.
"""

from .schemas import (
    LaurentSchema,
    DegreeSchema,
    DegreeInput,
    ConfigSchema,
    CombTypeSchema,
    PlacedCurveSchema,
    InvariantResultSchema,
    EnumerationReportSchema,
    RunManifest,
    ComputeRequest,
    EnumerateRequest,
    RelationRequest,
    InvarianceRequest,
    WelschingerRequest,
    RelationResponse,
    InvarianceResponse,
    OracleResponse,
    HealthResponse,
    ErrorResponse,
)

__all__ = [
    "LaurentSchema",
    "DegreeSchema",
    "DegreeInput",
    "ConfigSchema",
    "CombTypeSchema",
    "PlacedCurveSchema",
    "InvariantResultSchema",
    "EnumerationReportSchema",
    "RunManifest",
    "ComputeRequest",
    "EnumerateRequest",
    "RelationRequest",
    "InvarianceRequest",
    "WelschingerRequest",
    "RelationResponse",
    "InvarianceResponse",
    "OracleResponse",
    "HealthResponse",
    "ErrorResponse",
]

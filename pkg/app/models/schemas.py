"""
API Schemas

Pydantic models that define the shape of requests, responses and result
files. Rationals travel as "num/den" strings, never as floats.
"""

from datetime import datetime, timezone
from typing import Literal, Optional
import hashlib
import json

from pydantic import BaseModel, Field, model_validator

from app.services.curve_model import CombType, Degree, PlacedCurve
from app.services.enumeration import Config, EnumerationReport
from app.services.invariants import InvariantKind, InvariantResult, refined_value
from app.services.laurent import YLaurent, format_rational

ENGINE_VERSION = "0.1.0"


# --- Algebra Schemas ---

class LaurentSchema(BaseModel):
    """A y-Laurent polynomial, stored by q-exponent (q = y^(1/2))."""

    exponents_q: list[tuple[int, str]] = Field(
        description="Pairs [q-exponent, 'num/den' coefficient], exponents ascending"
    )
    variable: Literal["y"] = "y"
    text: Optional[str] = Field(default=None, description="Human-readable form, e.g. 'y + 10 + y^-1'")

    @classmethod
    def from_laurent(cls, value: YLaurent) -> "LaurentSchema":
        payload = value.to_json()
        return cls(exponents_q=[tuple(t) for t in payload["exponents_q"]], text=str(value))

    def to_laurent(self) -> YLaurent:
        return YLaurent.from_json({"exponents_q": [list(t) for t in self.exponents_q], "variable": "y"})


# --- Input Schemas ---

class DegreeSchema(BaseModel):
    """End directions (1-based labels in list order) and fixed end labels."""

    ends: list[tuple[int, int]] = Field(min_length=2, description="Outward end directions")
    fixed: list[int] = Field(default_factory=list, description="Labels of fixed ends")

    def to_degree(self) -> Degree:
        return Degree(tuple(self.ends), frozenset(self.fixed))

    @classmethod
    def from_degree(cls, degree: Degree) -> "DegreeSchema":
        return cls(**degree.to_dict())


class DegreeInput(BaseModel):
    """Either a plane degree d or an explicit degree."""

    p2_degree: Optional[int] = Field(default=None, ge=1, description="Degree d in P^2")
    degree: Optional[DegreeSchema] = Field(default=None, description="Explicit degree")
    fixed: list[int] = Field(default_factory=list, description="Fixed ends for a plane degree")

    @model_validator(mode="after")
    def exactly_one_degree(self):
        if (self.p2_degree is None) == (self.degree is None):
            raise ValueError("Give exactly one of p2_degree or degree")
        return self

    def resolve(self) -> Degree:
        if self.p2_degree is not None:
            return Degree.projective_plane(self.p2_degree, frozenset(self.fixed))
        return self.degree.to_degree()


class LineSchema(BaseModel):
    end: int
    covector: tuple[int, int]
    value: str


class ConfigSchema(BaseModel):
    """Point and line conditions."""

    points: list[tuple[str, str]]
    lines: list[LineSchema] = Field(default_factory=list)
    r: int = Field(ge=0)
    s: int = Field(ge=0)
    fixed: list[int] = Field(default_factory=list)

    def to_config(self) -> Config:
        return Config.from_dict(self.model_dump())

    @classmethod
    def from_config(cls, cfg: Config) -> "ConfigSchema":
        return cls(**cfg.to_dict())


# --- Curve Schemas ---

class EdgeSchema(BaseModel):
    model_config = {"populate_by_name": True}

    tail: int = Field(alias="from")
    head: int = Field(alias="to")
    dir: tuple[int, int]


class EndSchema(BaseModel):
    vertex: int
    label: int
    dir: tuple[int, int]
    inward: bool = False


class MarkingSchema(BaseModel):
    vertex: int
    label: int
    kind: Literal["real", "complex"]


class CombTypeSchema(BaseModel):
    """A labeled combinatorial type."""

    vertices: list[int]
    edges: list[EdgeSchema]
    ends: list[EndSchema]
    markings: list[MarkingSchema]
    oriented: bool = False

    @classmethod
    def from_comb(cls, comb: CombType) -> "CombTypeSchema":
        return cls.model_validate(comb.to_dict())

    def to_comb(self) -> CombType:
        return CombType.from_dict(self.model_dump(by_alias=True))


class PlacedCurveSchema(BaseModel):
    """A curve through the configuration."""

    comb: CombTypeSchema
    anchor: tuple[str, str]
    lengths: list[str]
    orbit: int = Field(description="Labeled curves represented by this one")
    multiplicity: Optional[LaurentSchema] = Field(default=None, description="Refined multiplicity m_C(y)")

    @classmethod
    def from_curve(cls, curve: PlacedCurve, fixed: frozenset[int] | None = None) -> "PlacedCurveSchema":
        return cls(
            comb=CombTypeSchema.from_comb(curve.comb),
            anchor=(format_rational(curve.anchor[0]), format_rational(curve.anchor[1])),
            lengths=[format_rational(length) for length in curve.lengths],
            orbit=curve.orbit,
            multiplicity=LaurentSchema.from_laurent(refined_value(curve, fixed)) if fixed is not None else None,
        )


# --- Result Schemas ---

class InvariantResultSchema(BaseModel):
    """An invariant value."""

    invariant: InvariantKind
    degree: DegreeSchema
    r: int
    s: int
    fixed: list[int]
    seeds: list[int]
    value: LaurentSchema
    curves: int = Field(description="Labeled curves counted")
    g_order: int = Field(description="|G(degree, F)|")

    @classmethod
    def from_result(cls, result: InvariantResult) -> "InvariantResultSchema":
        return cls(
            invariant=result.invariant,
            degree=DegreeSchema.from_degree(result.degree),
            r=result.r,
            s=result.s,
            fixed=sorted(result.degree.fixed),
            seeds=list(result.seeds),
            value=LaurentSchema.from_laurent(result.value),
            curves=result.curves,
            g_order=result.g_order,
        )

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "invariant": "rB",
                    "degree": {"ends": [[-1, 0], [0, -1], [1, 1]], "fixed": []},
                    "r": 2,
                    "s": 0,
                    "fixed": [],
                    "seeds": [7],
                    "value": {"exponents_q": [[0, "1"]], "variable": "y", "text": "1"},
                    "curves": 1,
                    "g_order": 1,
                }
            ]
        }
    }


class EnumerationReportSchema(BaseModel):
    """Curves through one configuration."""

    config: ConfigSchema
    curves: list[PlacedCurveSchema]
    labeled_count: int
    rejected_types: dict[str, int] = Field(default_factory=dict)
    degenerate: bool = False
    diagnostics: list[str] = Field(default_factory=list)
    g_order: int

    @classmethod
    def from_report(
        cls, report: EnumerationReport, cfg: Config, fixed: frozenset[int], list_curves: bool = True
    ) -> "EnumerationReportSchema":
        return cls(
            config=ConfigSchema.from_config(cfg),
            curves=[PlacedCurveSchema.from_curve(c, fixed) for c in report.curves] if list_curves else [],
            labeled_count=report.labeled_count,
            rejected_types=report.rejected_types,
            degenerate=report.degenerate,
            diagnostics=report.diagnostics,
            g_order=report.g_order,
        )


class RunManifest(BaseModel):
    """Provenance embedded in every result file."""

    command: str
    flags: dict = Field(default_factory=dict)
    seeds: list[int] = Field(default_factory=list)
    engine_version: str = ENGINE_VERSION
    input_sha256: str = Field(description="SHA-256 of the canonical JSON of the inputs")
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    duration_ms: float = 0.0

    @staticmethod
    def hash_inputs(inputs: dict) -> str:
        canonical = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @classmethod
    def build(cls, command: str, flags: dict, seeds: list[int], inputs: dict, duration_ms: float = 0.0) -> "RunManifest":
        return cls(
            command=command,
            flags=flags,
            seeds=seeds,
            input_sha256=cls.hash_inputs(inputs),
            duration_ms=round(duration_ms, 2),
        )

    def reproducible(self) -> dict:
        """The manifest without wall-clock fields."""
        return self.model_dump(mode="json", exclude={"created_at", "duration_ms"})


# --- Request Schemas ---

class ComputeRequest(DegreeInput):
    """Request to compute an invariant through a seeded or explicit configuration."""

    invariant: InvariantKind = Field(default=InvariantKind.REFINED_BROCCOLI)
    real: int = Field(ge=0, description="Number of real markings r")
    complex: int = Field(default=0, ge=0, description="Number of complex markings s")
    seed: int = Field(default=0, description="Seed for the configuration")
    config: Optional[ConfigSchema] = Field(default=None, description="Explicit configuration (overrides seed)")

    model_config = {
        "json_schema_extra": {
            "examples": [
                {"invariant": "rB", "p2_degree": 3, "real": 8, "complex": 0, "seed": 7}
            ]
        }
    }


class EnumerateRequest(DegreeInput):
    real: int = Field(ge=0)
    complex: int = Field(default=0, ge=0)
    seed: int = 0
    config: Optional[ConfigSchema] = None
    list_curves: bool = True


class RelationRequest(BaseModel):
    relation: Literal["A", "B", "C"] = "A"
    samples: int = Field(default=1000, ge=1, le=100_000)
    max_entry: int = Field(default=10, ge=1)
    seed: int = 0


class InvarianceRequest(DegreeInput):
    invariant: InvariantKind = Field(default=InvariantKind.REFINED_BROCCOLI)
    real: int = Field(ge=0)
    complex: int = Field(default=0, ge=0)
    seeds: list[int] = Field(min_length=2)


class WelschingerRequest(BaseModel):
    p2_degree: int = Field(ge=1, le=4)
    seed: int = 0


class RelationResponse(BaseModel):
    relation: str
    samples: int
    seed: int
    skipped: int
    violations: list[list[tuple[int, int]]]
    ok: bool


class InvarianceResponse(BaseModel):
    consistent: bool
    value: LaurentSchema
    values: dict[str, LaurentSchema]
    mismatch_seeds: Optional[list[int]] = None


class OracleResponse(BaseModel):
    oracle: str
    values: dict[int, str] = Field(description="Degree -> value as a rational string")


# --- Health Schemas ---

class HealthResponse(BaseModel):
    status: str = "healthy"
    version: str


class ErrorResponse(BaseModel):
    error: str
    detail: str


from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Any


# Error Response Models
class ErrorResponse(BaseModel):
    """Standard error response model"""
    statusCode: int = Field(..., description="HTTP status code", example=422)
    errorMessage: str = Field(..., description="Human-readable error message", example="Face too short")
    statusMessage: str = Field(..., description="HTTP status message", example="Unprocessable Entity")
    detail: str = Field(..., description="Detailed error information", example="Face 0 has 2 boundary arcs, at least 3 are required")

    class Config:
        json_schema_extra = {
            "example": {
                "statusCode": 422,
                "errorMessage": "Face too short",
                "statusMessage": "Unprocessable Entity",
                "detail": "Face 0 has 2 boundary arcs, at least 3 are required"
            }
        }


class ValidationErrorResponse(BaseModel):
    """Validation error response model"""
    statusCode: int = Field(422, description="HTTP status code")
    errorMessage: str = Field("Validation failed", description="Error message")
    statusMessage: str = Field("Unprocessable Entity", description="HTTP status message")
    detail: List[Dict] = Field(..., description="Validation error details")

    class Config:
        json_schema_extra = {
            "example": {
                "statusCode": 422,
                "errorMessage": "Validation failed",
                "statusMessage": "Unprocessable Entity",
                "detail": [
                    {
                        "loc": ["body", "config", "truncation"],
                        "msg": "Input should be greater than or equal to 0",
                        "type": "greater_than_equal"
                    }
                ]
            }
        }


# Report models
class FixtureListResponse(BaseModel):
    """Model for the list of shipped fixtures"""
    items: List[str] = Field([], description="Fixture names", example=["ntorus1", "ntorus2", "q3", "torus1"])
    count: int = Field(0, description="Number of fixtures", example=4)
    message: str = Field("Fixtures retrieved successfully", description="Response message")


class FaceReport(BaseModel):
    """Model for one derived face"""
    index: int = Field(..., description="Face index", example=0)
    length: int = Field(..., description="Number of boundary arcs", example=3)
    orientation: str = Field(..., description="clockwise, counterclockwise or mixed", example="clockwise")
    arcs: List[str] = Field(..., description="Boundary arcs with '-' for backward traversal", example=["h1", "v2", "d1"])


class ValidateResponse(BaseModel):
    """Model for a validation report"""
    message: str = Field("Dimer validated successfully", description="Response message")
    fixture: str = Field(..., description="Dimer name", example="ntorus1")
    valid: bool = Field(True, description="Whether the rotation system is valid")
    is_dimer: bool = Field(..., description="Uniformly oriented faces of length at least 3")
    genus: int = Field(..., description="Genus of the surface", example=1)
    punctures: int = Field(..., description="Number of punctures", example=1)
    arcs: int = Field(..., description="Number of arcs", example=3)
    faces: List[FaceReport] = Field([], description="Derived faces")
    consistency: Dict[str, Any] = Field(..., description="Geometric consistency verdict", example={"verdict": "Consistent"})
    nmd: Dict[str, Any] = Field(..., description="No monogons or digons", example={"verdict": "Holds"})
    nmdc: Dict[str, Any] = Field(..., description="No monogons or digons in the closed surface", example={"verdict": "Holds"})


class ProductResponse(BaseModel):
    """Model for a gentle algebra or minimal-model product"""
    message: str = Field("Product computed successfully", description="Response message")
    fixture: str = Field(..., description="Dimer name", example="torus1")
    inputs: List[str] = Field(..., description="Inputs in product order", example=["δ", "γ", "β", "α"])
    result: str = Field(..., description="Canonical text of the product", example="id_b")
    terms: Dict[str, str] = Field({}, description="Coefficient per output basis element", example={"id_b": "1"})
    complete: bool = Field(True, description="Whether every disk search finished within caps")


class CompareRow(BaseModel):
    """Model for one compared tuple"""
    inputs: List[str] = Field(..., description="Basis elements in product order")
    transversal: bool = Field(..., description="Pairwise distinct zigzag paths")
    minimal: str = Field(..., description="Minimal-model product")
    oracle: str = Field(..., description="Disk oracle product")
    minimal_complete: bool = Field(True, description="Minimal model complete within caps")
    oracle_complete: bool = Field(True, description="Disk enumeration complete within caps")
    match: bool = Field(..., description="Whether both products agree")


class CompareResponse(BaseModel):
    """Model for a comparison report"""
    message: str = Field("Report compared successfully", description="Response message")
    fixture: str = Field(..., description="Dimer name", example="ntorus2")
    tuples: int = Field(..., description="Number of tuples compared", example=40)
    mismatches: int = Field(..., description="Number of disagreeing tuples", example=0)
    complete: bool = Field(..., description="Whether every row is complete")
    rows: List[CompareRow] = Field([], description="Per-tuple results")


class ZigzagItem(BaseModel):
    """Model for one zigzag path"""
    name: str = Field(..., description="Path name", example="L0")
    length: int = Field(..., description="Number of arcs", example=2)
    path: str = Field(..., description="Arcs with their turns", example="h1L v1R")
    identity_at: int = Field(0, description="Identity arc position")
    coidentity_at: int = Field(0, description="Co-identity junction")


class ZigzagResponse(BaseModel):
    """Model for the zigzag paths of a dimer"""
    message: str = Field("Zigzag paths retrieved successfully", description="Response message")
    fixture: str = Field(..., description="Dimer name", example="ntorus1")
    items: List[ZigzagItem] = Field([], description="Zigzag paths")
    count: int = Field(0, description="Number of zigzag paths", example=3)
    cohomology: Dict[str, int] = Field({}, description="dim H per ordered pair 'Li->Lj'", example={"L0->L0": 2})


class RenderResponse(BaseModel):
    """Model for a rendered SVG"""
    message: str = Field("Render rendered successfully", description="Response message")
    fixture: str = Field(..., description="Dimer name", example="ntorus1")
    what: str = Field(..., description="What was drawn", example="dimer")
    svg: Optional[str] = Field(None, description="SVG document")
    path: Optional[str] = Field(None, description="Output file when written to disk")

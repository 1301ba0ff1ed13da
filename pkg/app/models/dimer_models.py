from pydantic import BaseModel, Field, model_validator
from typing import Optional, List, Dict, Literal
from app.config import settings


# Dimer file models
class ArcEntry(BaseModel):
    """Model for one oriented arc of a dimer file"""
    id: str = Field(..., description="Arc ID", example="a")
    head: str = Field(..., description="Puncture at the head of the arc", example="q")
    tail: str = Field(..., description="Puncture at the tail of the arc", example="q")


class DimerFile(BaseModel):
    """Model for the dimer file format (format 1)"""
    format: Literal[1] = Field(1, description="File format version", example=1)
    name: Optional[str] = Field(None, description="Display name of the dimer", example="torus1")
    punctures: List[str] = Field(..., description="Puncture IDs", example=["q"])
    arcs: List[ArcEntry] = Field(..., description="Oriented arcs")
    rotation: Dict[str, List[List[str]]] = Field(
        ...,
        description="Counterclockwise incidence order at every puncture",
        example={"q": [["a", "tail"], ["b", "tail"], ["a", "head"], ["b", "head"]]}
    )
    spin: Optional[Dict[str, int]] = Field(None, description="Spin sign per indecomposable angle 'puncture:index'", example={"q:0": 1})
    angle_names: Optional[Dict[str, str]] = Field(None, description="Display name per indecomposable angle 'puncture:index'")
    identity_locations: Optional[Dict[str, int]] = Field(None, description="Identity arc position per zigzag path")
    coidentity_locations: Optional[Dict[str, int]] = Field(None, description="Co-identity junction per zigzag path")

    @model_validator(mode="after")
    def check_rotation_entries(self):
        for puncture, incidences in self.rotation.items():
            for item in incidences:
                if len(item) != 2 or item[1] not in ("head", "tail"):
                    raise ValueError(f"rotation entry {item} at '{puncture}' must be [arc, 'head'|'tail']")
        return self

    class Config:
        json_schema_extra = {
            "example": {
                "format": 1,
                "name": "torus1",
                "punctures": ["q"],
                "arcs": [
                    {"id": "a", "head": "q", "tail": "q"},
                    {"id": "b", "head": "q", "tail": "q"}
                ],
                "rotation": {
                    "q": [["a", "tail"], ["b", "tail"], ["a", "head"], ["b", "head"]]
                },
                "angle_names": {"q:0": "δ", "q:1": "γ", "q:2": "β", "q:3": "α"}
            }
        }


# Run configuration
class RunConfig(BaseModel):
    """Caps and per-path assignments shared by all commands"""
    truncation: int = Field(default_factory=lambda: settings.TRUNCATION, description="Truncation N of the deformation base", ge=0, example=3)
    winding: int = Field(default_factory=lambda: settings.WINDING_CAP, description="Winding cap W", ge=0, example=2)
    area: int = Field(default_factory=lambda: settings.AREA_CAP, description="Disk area cap A", ge=0, example=12)
    radius: int = Field(default_factory=lambda: settings.RADIUS, description="Consistency radius R", ge=0, example=8)
    periods: int = Field(default_factory=lambda: settings.SEGMENT_PERIODS, description="Smooth-disk segment cap in periods", ge=0, example=2)
    require_complete: bool = Field(False, description="Fail when a result is incomplete within caps")
    spin: Optional[Dict[str, int]] = Field(None, description="Spin overrides per angle 'puncture:index'")
    identity_locations: Optional[Dict[str, int]] = Field(None, description="Identity arc position per zigzag path")
    coidentity_locations: Optional[Dict[str, int]] = Field(None, description="Co-identity junction per zigzag path")

    def apply(self, raw: dict) -> dict:
        """Overlay the per-path assignments on a raw dimer description."""
        out = dict(raw)
        for key in ("spin", "identity_locations", "coidentity_locations"):
            value = getattr(self, key)
            if value:
                merged = dict(out.get(key) or {})
                merged.update(value)
                out[key] = merged
        return out

    class Config:
        json_schema_extra = {
            "example": {
                "truncation": 3,
                "winding": 2,
                "area": 12,
                "radius": 8,
                "periods": 2,
                "require_complete": False
            }
        }


# Request models
class FixtureRequest(BaseModel):
    """A dimer given by fixture name or inline"""
    fixture: Optional[str] = Field(None, description="Fixture name or path", example="ntorus2")
    dimer: Optional[DimerFile] = Field(None, description="Inline dimer description")
    config: RunConfig = Field(default_factory=RunConfig, description="Run configuration")

    @model_validator(mode="after")
    def check_source(self):
        if (self.fixture is None) == (self.dimer is None):
            raise ValueError("exactly one of 'fixture' and 'dimer' is required")
        return self


class MuRequest(FixtureRequest):
    """Higher product of gentle algebra angles"""
    inputs: List[str] = Field(..., description="Angles a_k, ..., a_1 (a_1 applied first)", min_length=1, example=["δ", "γ", "β", "α"])

    class Config:
        json_schema_extra = {
            "example": {
                "fixture": "torus1",
                "inputs": ["δ", "γ", "β", "α"],
                "config": {"truncation": 4, "area": 12}
            }
        }


class MinimalRequest(FixtureRequest):
    """Minimal-model product of cohomology basis elements"""
    inputs: List[str] = Field(..., description="Basis elements h_k, ..., h_1 (h_1 applied first)", min_length=2, example=["C(0,1)[L1->L2]", "B(1,0)[L0->L1]"])

    class Config:
        json_schema_extra = {
            "example": {
                "fixture": "ntorus2",
                "inputs": ["id[L0->L0]", "coid[L0->L0]"],
                "config": {"truncation": 3}
            }
        }


class CompareRequest(FixtureRequest):
    """Minimal model against the disk oracle"""
    arity: int = Field(2, description="Number of inputs per tuple", ge=2, le=4, example=2)
    transversal: bool = Field(True, description="Only sequences of pairwise distinct zigzag paths")
    limit: Optional[int] = Field(None, description="Maximum number of tuples", ge=1, example=50)
    inputs: Optional[List[List[str]]] = Field(None, description="Explicit tuples instead of the generated suite")


class RenderRequest(FixtureRequest):
    """SVG rendering of a dimer, its zigzag curves or a disk"""
    what: Literal["dimer", "zigzags", "disk"] = Field("dimer", description="What to draw", example="zigzags")
    inputs: Optional[List[str]] = Field(None, description="Basis elements of the disk to draw")
    index: int = Field(0, description="Which disk of the enumeration to draw", ge=0)

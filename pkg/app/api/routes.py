from fastapi import APIRouter
from app.models.dimer_models import FixtureRequest, MuRequest, MinimalRequest, CompareRequest, RenderRequest
from app.services.commands import (
    cmd_fixtures, cmd_validate, cmd_mu, cmd_minimal, cmd_compare, cmd_zigzags, cmd_render
)
from app.utils import create_success_response
from app.api.swagger_config import (
    LIST_FIXTURES_CONFIG, VALIDATE_CONFIG, MU_CONFIG, MINIMAL_CONFIG, COMPARE_CONFIG, ZIGZAGS_CONFIG, RENDER_CONFIG
)

router = APIRouter()


def _source(request: FixtureRequest):
    """Fixture name, or the inline dimer as a raw description"""
    if request.dimer is not None:
        return request.dimer.model_dump(exclude_none=True)
    return request.fixture


@router.get("/fixtures", **LIST_FIXTURES_CONFIG)
def list_fixtures_endpoint():
    """List the shipped dimer files"""
    return create_success_response(cmd_fixtures(), operation="list", resource="fixtures")


@router.post("/validate", **VALIDATE_CONFIG)
def validate_endpoint(request: FixtureRequest):
    """Validate a dimer and report consistency, NMD and NMDC"""
    return create_success_response(
        cmd_validate(_source(request), request.config), operation="validate", resource="dimer"
    )


@router.post("/mu", **MU_CONFIG)
def mu_endpoint(request: MuRequest):
    """Evaluate mu(a_k, ..., a_1) in the deformed gentle algebra"""
    return create_success_response(
        cmd_mu(_source(request), request.inputs, request.config), operation="compute", resource="product"
    )


@router.post("/minimal", **MINIMAL_CONFIG)
def minimal_endpoint(request: MinimalRequest):
    """Evaluate a product of the deformed minimal model"""
    return create_success_response(
        cmd_minimal(_source(request), request.inputs, request.config), operation="compute", resource="product"
    )


@router.post("/compare", **COMPARE_CONFIG)
def compare_endpoint(request: CompareRequest):
    """Compare minimal-model products with the disk oracle

    Args:
        request (CompareRequest): fixture, arity, transversality, limit or explicit tuples
    """
    record = cmd_compare(
        _source(request), request.config,
        arity=request.arity, transversal=request.transversal, limit=request.limit, inputs=request.inputs,
    )
    return create_success_response(record, operation="compare", resource="report")


@router.post("/zigzags", **ZIGZAGS_CONFIG)
def zigzags_endpoint(request: FixtureRequest):
    """List zigzag paths and cohomology dimensions"""
    return create_success_response(
        cmd_zigzags(_source(request), request.config), message="Zigzag paths retrieved successfully"
    )


@router.post("/render", **RENDER_CONFIG)
def render_endpoint(request: RenderRequest):
    """Render an SVG drawing"""
    record = cmd_render(
        _source(request), request.what, request.config, inputs=request.inputs, index=request.index
    )
    return create_success_response(record, operation="render", resource="drawing")

"""
Swagger/OpenAPI configuration for the Gentle Engine API endpoints
"""

from fastapi import status
from app.models.report_models import (
    ErrorResponse, ValidationErrorResponse, FixtureListResponse, ValidateResponse,
    ProductResponse, CompareResponse, ZigzagResponse, RenderResponse
)

# Common tags
FIXTURE_TAG = "Fixtures"
ENGINE_TAG = "Engine"

# Common error responses for all endpoints
COMMON_ERROR_RESPONSES = {
    404: {
        "model": ErrorResponse,
        "description": "Fixture not found"
    },
    422: {
        "model": ValidationErrorResponse,
        "description": "Invalid dimer or request body"
    },
    500: {
        "model": ErrorResponse,
        "description": "Internal Server Error"
    }
}

# Solver outcomes share the conflict status
SOLVER_ERROR_RESPONSES = {
    409: {
        "model": ErrorResponse,
        "description": "Solver could not proceed or result incomplete within caps"
    }
}

# GET /fixtures configuration
LIST_FIXTURES_CONFIG = {
    "response_model": FixtureListResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": FixtureListResponse,
            "description": "Successfully listed the shipped dimers"
        },
        500: {
            "model": ErrorResponse,
            "description": "Internal Server Error"
        }
    },
    "summary": "List Fixtures",
    "tags": [FIXTURE_TAG]
}

# POST /validate configuration
VALIDATE_CONFIG = {
    "response_model": ValidateResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": ValidateResponse,
            "description": "Dimer is valid; consistency and monogon/digon verdicts attached"
        },
        **COMMON_ERROR_RESPONSES
    },
    "summary": "Validate Dimer",
    "tags": [FIXTURE_TAG]
}

# POST /mu configuration
MU_CONFIG = {
    "response_model": ProductResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": ProductResponse,
            "description": "Higher product of gentle algebra angles"
        },
        **SOLVER_ERROR_RESPONSES,
        **COMMON_ERROR_RESPONSES
    },
    "summary": "Gentle Algebra Product",
    "tags": [ENGINE_TAG]
}

# POST /minimal configuration
MINIMAL_CONFIG = {
    "response_model": ProductResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": ProductResponse,
            "description": "Minimal-model product of cohomology basis elements"
        },
        **SOLVER_ERROR_RESPONSES,
        **COMMON_ERROR_RESPONSES
    },
    "summary": "Minimal Model Product",
    "tags": [ENGINE_TAG]
}

# POST /compare configuration
COMPARE_CONFIG = {
    "response_model": CompareResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": CompareResponse,
            "description": "Minimal model compared with the disk oracle"
        },
        **SOLVER_ERROR_RESPONSES,
        **COMMON_ERROR_RESPONSES
    },
    "summary": "Compare With Disk Oracle",
    "tags": [ENGINE_TAG]
}

# POST /zigzags configuration
ZIGZAGS_CONFIG = {
    "response_model": ZigzagResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": ZigzagResponse,
            "description": "Zigzag paths with cohomology dimensions"
        },
        **COMMON_ERROR_RESPONSES
    },
    "summary": "Zigzag Paths",
    "tags": [ENGINE_TAG]
}

# POST /render configuration
RENDER_CONFIG = {
    "response_model": RenderResponse,
    "status_code": status.HTTP_200_OK,
    "responses": {
        200: {
            "model": RenderResponse,
            "description": "SVG drawing of the dimer, its zigzag curves or a disk"
        },
        **COMMON_ERROR_RESPONSES
    },
    "summary": "Render SVG",
    "tags": [ENGINE_TAG]
}

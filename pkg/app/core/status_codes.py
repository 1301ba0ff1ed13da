"""
Status codes, exit codes and messages for consistent reports.
"""

from enum import Enum


class HTTPStatus(Enum):
    """HTTP status codes used by the API surface"""

    # Success codes
    OK = 200

    # Client error codes
    BAD_REQUEST = 400
    NOT_FOUND = 404
    CONFLICT = 409
    UNPROCESSABLE_ENTITY = 422

    # Server error codes
    INTERNAL_SERVER_ERROR = 500


class ExitCode(Enum):
    """Process exit codes of the batch front end"""

    OK = 0
    INVALID_INPUT = 1
    IO_ERROR = 2
    DZERO_VIOLATED = 3
    INCOMPLETE = 4


class ErrorMessages:
    """Standard error messages for consistent responses"""

    # Dimer validation
    UNKNOWN_PUNCTURE = "Arc '{}' references unknown puncture '{}'"
    DUPLICATE_INCIDENCE = "Incidence {} appears more than once in the rotation tables"
    MISSING_INCIDENCE = "Incidence {} does not appear in any rotation table"
    MISPLACED_INCIDENCE = "Incidence {} is listed at puncture '{}' but belongs to '{}'"
    FACE_TOO_SHORT = "Face {} has {} boundary arcs, at least 3 are required"
    FACE_ORIENTATION = "Face {} mixes forward and backward arcs"
    DISCONNECTED = "Rotation system is disconnected ({} components)"
    BAD_EULER = "V - E + F = {} does not give a nonnegative integer genus"
    SPHERE_TOO_SMALL = "Sphere with {} punctures, at least 3 are required"
    UNSUPPORTED_FORMAT = "Unsupported dimer file format {}"

    # Algebra
    TRUNCATION_MISMATCH = "Cannot combine series over {} and {}"
    ARC_MISMATCH = "Cannot compose {} with {}"
    AMBIGUOUS_DISK = "Tuple {} decomposes under both {} and {}"
    CYCLIC_DELTA = "Band differential has a directed cycle through {}"
    SHIFT_INCONSISTENT = "Shift assignment fails at entry {}"
    ANGLE_TOO_LONG = "Angle {} is not shorter than a full turn"
    IDENTITY_ANGLE = "Identity {} cannot be complemented"
    NOT_ELEMENTARY = "Angle {} does not connect positions {} and {}"
    UNCLASSIFIED = "Term {} cannot be decomposed within winding cap {}"
    NON_TRANSVERSAL = "Zigzag path {} occurs twice in the sequence"
    NOT_A_DIMER = "Zigzag paths need uniformly oriented faces of length at least 3"
    COIDENTITY_CONVENTION = "Co-identity of zigzag path {} at junction {} is not in a counterclockwise polygon"
    LOCATION_RANGE = "Location {} is out of range for zigzag path {} of length {}"
    AMBIGUOUS_ROLE = "Term {} has {} situation roles"

    # Solvers
    DZERO_VIOLATED = "Cohomology component at order {}: {}"
    UNSOLVABLE = "Residual at order {} has a complement component: {}"
    NOT_IN_IMAGE = "Morphism has components outside the image: {}"

    # Generic
    FIXTURE_NOT_FOUND = "Fixture '{}' not found in {}"
    INVALID_SETTING = "Invalid value for {}: {}"
    INCOMPLETE = "Result for {} is incomplete within caps"
    INTERNAL_ERROR = "Internal server error occurred"


class EngineMessages:
    """Wrapping messages for unexpected failures inside the engine"""

    VALIDATION_FAILED = "Dimer validation failed: {}"
    PRODUCT_FAILED = "Product evaluation failed: {}"
    MINIMAL_FAILED = "Minimal model evaluation failed: {}"
    COMPARISON_FAILED = "Comparison run failed: {}"
    RENDER_FAILED = "Rendering failed: {}"
    FIXTURE_LOAD_FAILED = "Could not read dimer file: {}"


def get_success_message(operation: str, resource: str = None) -> str:
    """
    Get appropriate success message based on operation

    Args:
        operation (str): The operation performed (validate, compute, compare, render, list)
        resource (str): The resource type (dimer, product, report, etc.)

    Returns:
        str: Appropriate success message
    """
    success_map = {
        "validate": "validated successfully",
        "compute": "computed successfully",
        "compare": "compared successfully",
        "render": "rendered successfully",
        "list": "retrieved successfully"
    }

    action = success_map.get(operation.lower(), "processed successfully")

    if resource:
        return f"{resource.capitalize()} {action}"

    return f"Operation {action}"

"""
Custom exceptions for the gentle engine.
"""

from fastapi import HTTPException
from typing import Optional, Dict, Any

from app.core.status_codes import HTTPStatus, ErrorMessages


class GentleEngineException(HTTPException):
    """Base exception for all engine errors"""

    exit_code: int = 1

    def __init__(
        self,
        status_code: int,
        detail: str,
        error_message: str = None,
        status_message: str = None,
        headers: Optional[Dict[str, Any]] = None
    ):
        # Create detailed response body
        error_response = {
            "statusCode": status_code,
            "errorMessage": error_message or detail,
            "statusMessage": status_message or self._get_status_message(status_code),
            "detail": detail
        }
        super().__init__(status_code=status_code, detail=error_response, headers=headers)
        self.message = detail

    def __str__(self) -> str:
        return self.message

    def _get_status_message(self, status_code: int) -> str:
        """Get standard HTTP status message"""
        status_messages = {
            400: "Bad Request",
            404: "Not Found",
            409: "Conflict",
            422: "Unprocessable Entity",
            500: "Internal Server Error",
        }
        return status_messages.get(status_code, "Unknown Error")


class InvalidInputError(GentleEngineException):
    """Exception raised when an input object violates a structural condition"""

    def __init__(self, detail: str = "Invalid input", error_message: str = None):
        super().__init__(
            status_code=HTTPStatus.UNPROCESSABLE_ENTITY.value,
            detail=detail,
            error_message=error_message or "The input violates a structural condition",
            status_message="Unprocessable Entity"
        )


class MalformedDimer(InvalidInputError):
    """Rotation tables are not a permutation of the declared incidences"""

    def __init__(self, detail: str = "Malformed rotation tables", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Malformed dimer description")


class NonClosedFace(InvalidInputError):
    """A face boundary does not close up"""

    def __init__(self, detail: str = "Face boundary does not close", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Non-closed face")


class FaceTooShort(InvalidInputError):
    """A face has fewer than three boundary arcs"""

    def __init__(self, detail: str = "Face is bounded by fewer than three arcs", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Face too short")


class InconsistentFaceOrientation(InvalidInputError):
    """Arcs along a face boundary are not uniformly oriented"""

    def __init__(self, detail: str = "Face boundary is not uniformly oriented", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Inconsistent face orientation")


class EulerMismatch(InvalidInputError):
    """V - E + F does not describe a connected closed oriented surface"""

    def __init__(self, detail: str = "Euler characteristic mismatch", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Euler characteristic mismatch")


class SphereTooSmall(InvalidInputError):
    """Spheres need at least three punctures"""

    def __init__(self, detail: str = "Sphere with fewer than three punctures", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Sphere too small")


class TruncationMismatch(InvalidInputError):
    """Series from different deformation bases were combined"""

    def __init__(self, detail: str = "Series live in different truncated rings", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Truncation mismatch")


class ArcMismatch(InvalidInputError):
    """Morphisms are not composable"""

    def __init__(self, detail: str = "Morphisms are not composable", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Arc mismatch")


class CyclicDelta(InvalidInputError):
    """No summand order makes the twisted differential upper triangular"""

    def __init__(self, detail: str = "Twisted differential is cyclic", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Cyclic twisted differential")


class ShiftInconsistent(InvalidInputError):
    """Shifts cannot make every differential entry odd"""

    def __init__(self, detail: str = "Shift assignment is inconsistent", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Inconsistent shifts")


class AngleTooLong(InvalidInputError):
    """Complementary angles need angles shorter than a full turn"""

    def __init__(self, detail: str = "Angle is at least a full turn", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Angle too long")


class IdentityAngle(InvalidInputError):
    """Complementary angles are undefined for identities"""

    def __init__(self, detail: str = "Identity entry in twisted differential", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Identity angle")


class NotElementary(InvalidInputError):
    """The morphism is not a single angle between indexed arcs"""

    def __init__(self, detail: str = "Morphism is not elementary", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Not an elementary morphism")


class UnclassifiedTerm(InvalidInputError):
    """A term could not be placed in the homological splitting"""

    def __init__(self, detail: str = "Term lies outside the splitting window", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Unclassified term")


class NonTransversal(InvalidInputError):
    """Smooth products need pairwise distinct zigzag paths"""

    def __init__(self, detail: str = "Sequence of zigzag curves is not transversal", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Non-transversal sequence")


class DecompositionAmbiguity(InvalidInputError):
    """A basis tuple matched two disk rules"""

    def __init__(self, detail: str = "Basis tuple matches two disk rules", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Ambiguous disk decomposition")


class SolverError(GentleEngineException):
    """Exception raised when an order-by-order solve cannot proceed"""

    def __init__(self, detail: str = "Solver failed", error_message: str = None):
        super().__init__(
            status_code=HTTPStatus.CONFLICT.value,
            detail=detail,
            error_message=error_message or "The order-by-order solver could not proceed",
            status_message="Conflict"
        )


class DZeroViolated(SolverError):
    """The differential of a cohomology element has a cohomology component"""

    exit_code = 3

    def __init__(self, order: int, residual: str = "", detail: str = None, error_message: str = None):
        self.order = order
        self.residual = residual
        super().__init__(
            detail=detail or f"Differential leaves the image at order {order}: {residual}",
            error_message=error_message or "Simplified deformed construction does not apply"
        )


class UnsolvableResidual(SolverError):
    """A residual is not in the image of the undeformed differential"""

    def __init__(self, detail: str = "Residual is not in the image of the differential", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Unsolvable residual")


class NotInImage(SolverError):
    """The morphism has components outside the image of the differential"""

    def __init__(self, detail: str = "Morphism is not in the image of the differential", error_message: str = None):
        super().__init__(detail=detail, error_message=error_message or "Not in image")


class FixtureNotFound(GentleEngineException):
    """Exception raised when a dimer file cannot be found"""

    exit_code = 2

    def __init__(self, detail: str = "Fixture not found", error_message: str = None):
        super().__init__(
            status_code=HTTPStatus.NOT_FOUND.value,
            detail=detail,
            error_message=error_message or "The requested fixture was not found",
            status_message="Not Found"
        )


class IncompleteResult(GentleEngineException):
    """Exception raised when a result was truncated by caps and completeness was required"""

    exit_code = 4

    def __init__(self, detail: str = "Result is incomplete within caps", error_message: str = None):
        super().__init__(
            status_code=HTTPStatus.CONFLICT.value,
            detail=detail,
            error_message=error_message or "Increase the caps or drop --require-complete",
            status_message="Conflict"
        )


class InternalServerError(GentleEngineException):
    """Exception raised for internal errors and configuration problems"""

    exit_code = 2

    def __init__(self, detail: str = ErrorMessages.INTERNAL_ERROR, error_message: str = None):
        super().__init__(
            status_code=HTTPStatus.INTERNAL_SERVER_ERROR.value,
            detail=detail,
            error_message=error_message or "An internal server error occurred",
            status_message="Internal Server Error"
        )

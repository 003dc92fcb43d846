"""Exception hierarchy shared by all eigenlower modules."""


class EigenlowerError(Exception):
    """Base class for all package errors."""


# -- numerics ---------------------------------------------------------------

class NonConvergence(EigenlowerError):
    """An iterative numeric routine hit its subdivision/refinement limit."""


class NonFiniteSample(EigenlowerError):
    """An integrand returned NaN or infinity."""


class StepUnderflow(EigenlowerError):
    """ODE step size shrank below machine resolution (stiffness/singularity)."""


class NonFiniteState(EigenlowerError):
    """ODE state or right-hand side became non-finite."""


class NoSignChange(EigenlowerError):
    """Root bracket endpoints have the same sign."""


# -- geometry ---------------------------------------------------------------

class InvalidDimension(EigenlowerError):
    """Dimension parameters outside the catalog's validity range."""


class InvalidCurvature(EigenlowerError):
    """Curvature argument outside a formula's domain."""


class OutOfTubeRange(EigenlowerError):
    """Normal distance at or beyond the focal distance of the tube."""


class HypothesisViolated(EigenlowerError):
    """Input violates a standing hypothesis of the bound being evaluated."""


class QTooSmall(EigenlowerError):
    """Rayleigh quotient below m+1; the bound formula is undefined."""


class OdeSingularity(EigenlowerError):
    """Radial ODE integration failed before reaching the boundary."""


class InvariantViolation(EigenlowerError):
    """A mathematically guaranteed inequality failed numerically."""


# -- meshes -----------------------------------------------------------------

class InvalidResolution(EigenlowerError):
    """Mesh resolution below the supported minimum."""


class ParseError(EigenlowerError):
    """Malformed OFF input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class NotClosed(EigenlowerError):
    """Mesh has boundary or non-manifold edges."""


class NotUnitSphere(EigenlowerError):
    """Mesh vertices are not on the unit 3-sphere."""


class DegenerateTriangle(EigenlowerError):
    """Triangle with (near) zero area encountered during assembly."""


class SolverStagnation(EigenlowerError):
    """Eigenvalue iteration failed to reach the residual tolerance."""


class SingularShift(EigenlowerError):
    """Shifted stiffness matrix could not be factorized."""

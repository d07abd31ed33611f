"""Exception hierarchy.

``DomainError`` covers every "the input is outside the mathematical domain
of this operation" failure; the CLI maps it to exit code 3.  Parse/usage
problems are not represented here (argparse and the JSON loader handle
those, exit code 2).
"""


class EsdgeoError(Exception):
    """Base class for all package errors."""


class ParseError(EsdgeoError):
    """Malformed input text or file (CLI exit code 2)."""


class DomainError(EsdgeoError):
    """Input violates a mathematical precondition (CLI exit code 3)."""


class TetrahedronViolation(DomainError):
    """Coordinates lie outside the Bell-diagonal state tetrahedron."""


class DegenerateApex(DomainError):
    """Leading coefficient of a cone point is too close to zero to normalize."""


class ClassificationAmbiguous(DomainError):
    """Eigenvalue clustering of the normal-form computation cannot be
    resolved within tolerance; refusing to guess a class."""


class InvalidState(DomainError):
    """Matrix does not describe a (possibly unnormalized) two-qubit state."""


class WrongBranch(DomainError):
    """Closed-form concurrence called on the wrong sign branch of x3."""


class InvalidRepresentative(DomainError):
    """Parameters violate the boundary-class constraints x0 >= |x1|, k > 0."""


class SpectrumNotReal(DomainError):
    """Spin-flip spectrum came out with non-negligible imaginary parts."""


class SpectrumNegative(DomainError):
    """Spin-flip spectrum has an eigenvalue below the negativity tolerance."""


class StepTooLarge(DomainError):
    """Integrator step exceeds the fixed-step stability bound."""


class NotEsd(DomainError):
    """Geometric death-time formulas require a point of the finite-death class."""


class NoInitialEntanglement(DomainError):
    """Numeric death-time search needs a positive raw concurrence at tau=0."""


class UnknownSurface(DomainError):
    """Requested boundary surface name is not one of the known surfaces."""

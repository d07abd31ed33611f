"""Long-time entanglement fate of Bell-diagonal states and boundary-class
representatives under independent amplitude damping.

Every point of the tetrahedron falls in exactly one class:

* ``Separable`` -- inside the closed octahedron |x1| + |x2| + |x3| <= 1;
  separable states stay separable under the purely local noise.
* ``ESD``       -- entangled, concurrence reaches zero at a finite tau
  (entanglement sudden death).
* ``EAD``       -- entangled, concurrence decays to zero only
  asymptotically (entanglement asymptotic death).

For x3 < 0 (the pyramids at vertices A and B) the ESD region is bounded
below by the open quadratic surface (x1 + x2)^2 / 4 - 1 = x3: strictly above
it is ESD, on or below it is EAD.  For x3 >= 0 (pyramids at C and D) every
entangled point is ESD except the vertices C and D themselves, the only
tetrahedron points on the planes |x1 - x2| = 2.

Boundary-class representatives (parameters x0 >= |x1|, k > 0) always
satisfy x1^2 < 2 k x0 + x0^2, so every entangled one is ESD.

The companion geometric quantities are

    d_p = -1 + |x1| + |x2| + |x3|          (> 0 iff entangled)
    d_1 = 1 + x3 - (x1 + x2)^2 / 4         (x3 < 0 branch)
    d_2 = 2 - |x1| - |x2|                  (x3 >= 0 branch)

d_p measures separation from the local separability face of the octahedron,
d_1 and d_2 the perpendicular reach from the point to the asymptotic-death
boundary of its branch.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DegenerateApex
from .lorentz import check_nondiagonal_params, normalize_cone_point
from .states import BellPoint, ConePoint

__all__ = [
    "BOUNDARY_TOL",
    "DynamicalClass",
    "Distances",
    "distances",
    "classify_bell_point",
    "classify_cone_point",
    "classify_nondiagonal",
]

BOUNDARY_TOL = 1e-12


class DynamicalClass(enum.Enum):
    SEPARABLE = "Separable"
    ESD = "ESD"
    EAD = "EAD"


@dataclass(frozen=True)
class Distances:
    d_p: float
    d_1: float
    d_2: float


def distances(p: BellPoint) -> Distances:
    """The three geometric quantities at p; d_1 is meaningful on the x3 < 0
    branch, d_2 on the x3 >= 0 branch."""
    s = abs(p.x1) + abs(p.x2)
    return Distances(
        d_p=-1.0 + s + abs(p.x3),
        d_1=1.0 + p.x3 - 0.25 * (p.x1 + p.x2) ** 2,
        d_2=2.0 - s,
    )


def classify_bell_point(p: BellPoint) -> DynamicalClass:
    """Dynamical class of the Bell-diagonal state at p.

    Boundaries: the octahedron is closed (points on the separability plane
    are separable for all times), while the asymptotic-death surfaces are
    open boundaries of the ESD region (points on them classify EAD).
    """
    if abs(p.x1) + abs(p.x2) + abs(p.x3) <= 1.0 + BOUNDARY_TOL:
        return DynamicalClass.SEPARABLE
    if p.x3 < 0.0:
        above_surface = p.x3 - (0.25 * (p.x1 + p.x2) ** 2 - 1.0)
        return DynamicalClass.ESD if above_surface > BOUNDARY_TOL else DynamicalClass.EAD
    if 2.0 - abs(p.x1 - p.x2) <= BOUNDARY_TOL:
        return DynamicalClass.EAD  # only the vertices C and D
    return DynamicalClass.ESD


def classify_cone_point(c: ConePoint) -> DynamicalClass:
    """Dynamical class of an unnormalized diagonal representative; the
    classification depends only on the x0 = 1 cross-section point."""
    if c.x0 <= 1e-12:
        raise DegenerateApex(f"cone point with x0 = {c.x0} cannot be classified")
    return classify_bell_point(normalize_cone_point(c))


def classify_nondiagonal(x0: float, x1: float, k: float) -> DynamicalClass:
    """Boundary-class representatives: separable at x1 = 0, ESD otherwise
    (their death condition x1^2 < 2 k x0 + x0^2 always holds)."""
    check_nondiagonal_params(x0, x1, k)
    if x1 == 0.0:
        return DynamicalClass.SEPARABLE
    return DynamicalClass.ESD

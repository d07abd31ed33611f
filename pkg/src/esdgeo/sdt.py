"""Sudden-death time (SDT): the finite dimensionless time tau* = gamma*t at
which the concurrence of an ESD state first reaches zero.

Three independent routes are implemented and must agree:

* coordinate closed forms -- with y = exp(tau),

      x3 < 0 :  tau* = log[ -(1 + x3) / (sqrt((x1 + x2)^2 - 4 x3) - 2) ]
      x3 >= 0:  tau* = log[ (1 + x3) / (2 - |x1 - x2|) ]

* geometric forms in the distances d_p, d_1, d_2,

      x3 < 0 :  tau* = log[ (d_p/2 - 1 + sqrt(1 - d_p - d_1))
                              / (sqrt(1 - d_1) - 1) ]
      x3 >= 0:  tau* = log[ d_p / d_2 + 1 ]

* numeric bisection on the sign change of the raw closed-form concurrence.

For boundary-class representatives the death condition is the quadratic

    (x1^2 - x0 (2k + x0)) y^2 + 2 x0 (k + x0) y - x0^2 = 0

whose discriminant is 4 x0^2 (k^2 + x1^2) > 0; exactly one root satisfies
y >= 1 and the leading coefficient is strictly negative throughout the
admissible parameter range.  Both facts are asserted rather than patched
over so that region-classification bugs surface immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import DynamicalClass, classify_bell_point, classify_nondiagonal, distances
from .concurrence import raw_branch_concurrence
from .dynamics import check_tau
from .errors import DomainError, NoInitialEntanglement, NotEsd
from .lorentz import check_nondiagonal_params
from .states import BellPoint

__all__ = [
    "SdtResult",
    "sdt_closed_form",
    "sdt_geometric",
    "sdt_nondiagonal",
    "sdt_numeric",
    "sdt_bell_numeric",
    "tau_star_negative_branch",
    "tau_star_positive_branch",
]

#: default search horizon: raw concurrences decay like exp(-tau), so a root
#: beyond tau = 60 would need initial data below double-precision resolution
DEFAULT_TAU_MAX = 60.0
SCAN_SAMPLES = 10_000


@dataclass(frozen=True)
class SdtResult:
    """Dynamical class plus the death time (tau_star is set iff ESD)."""

    kind: DynamicalClass
    tau_star: float | None = None

    def __post_init__(self):
        if (self.kind is DynamicalClass.ESD) != (self.tau_star is not None):
            raise DomainError("tau_star must be present exactly for the ESD class")


def sdt_closed_form(p: BellPoint) -> SdtResult:
    """Death time from the coordinate closed forms (class label included)."""
    kind = classify_bell_point(p)
    if kind is not DynamicalClass.ESD:
        return SdtResult(kind)
    if p.x3 < 0.0:
        numerator = -(1.0 + p.x3)
        denominator = math.sqrt((p.x1 + p.x2) ** 2 - 4.0 * p.x3) - 2.0
        # both strictly negative inside the finite-death region
        assert numerator < 0.0 and denominator < 0.0, (p, numerator, denominator)
        return SdtResult(DynamicalClass.ESD, math.log(numerator / denominator))
    return SdtResult(
        DynamicalClass.ESD, math.log((1.0 + p.x3) / (2.0 - abs(p.x1 - p.x2)))
    )


def tau_star_negative_branch(d_p: float, d_1: float) -> float:
    """Geometric death time on the x3 < 0 branch.

    Diverges as d_1 -> 0 (approaching the asymptotic-death surface) and
    vanishes as d_p -> 0 (approaching the separability plane).
    """
    numerator = 0.5 * d_p - 1.0 + math.sqrt(max(1.0 - d_p - d_1, 0.0))
    denominator = math.sqrt(1.0 - d_1) - 1.0
    return math.log(numerator / denominator)


def tau_star_positive_branch(d_p: float, d_2: float) -> float:
    """Geometric death time on the x3 >= 0 branch."""
    return math.log(d_p / d_2 + 1.0)


def sdt_geometric(p: BellPoint) -> SdtResult:
    """Death time from the distance formulas; defined only for ESD points."""
    kind = classify_bell_point(p)
    if kind is not DynamicalClass.ESD:
        raise NotEsd(f"point {p.as_tuple()} classifies {kind.value}, not ESD")
    d = distances(p)
    if p.x3 < 0.0:
        return SdtResult(DynamicalClass.ESD, tau_star_negative_branch(d.d_p, d.d_1))
    return SdtResult(DynamicalClass.ESD, tau_star_positive_branch(d.d_p, d.d_2))


def sdt_nondiagonal(x0: float, x1: float, k: float) -> SdtResult:
    """Death time of a boundary-class representative from its quadratic."""
    check_nondiagonal_params(x0, x1, k)
    if classify_nondiagonal(x0, x1, k) is DynamicalClass.SEPARABLE:
        return SdtResult(DynamicalClass.SEPARABLE)
    lead = x1 * x1 - x0 * (2.0 * k + x0)
    assert lead < 0.0, (x0, x1, k, lead)
    # y = x0 (k + x0 +- sqrt(k^2 + x1^2)) / (x0 (x0 + 2k) - x1^2)
    spread = math.sqrt(k * k + x1 * x1)
    y_big = x0 * (k + x0 + spread) / -lead
    y_small = x0 * (k + x0 - spread) / -lead
    assert y_big >= 1.0 > y_small, (x0, x1, k, y_big, y_small)
    return SdtResult(DynamicalClass.ESD, math.log(y_big))


def sdt_numeric(
    raw_concurrence,
    tau_max: float = DEFAULT_TAU_MAX,
    scan_samples: int = SCAN_SAMPLES,
) -> SdtResult:
    """Bracket-and-bisect the first zero of a raw concurrence curve.

    ``raw_concurrence`` must accept numpy arrays of tau.  The grid scan uses
    ``scan_samples`` uniform points on (0, tau_max]; no sign change there
    means asymptotic death (with the default horizon, any missed root would
    require initial values below double-precision resolution).  The
    bisection tightens the bracket to |delta tau| <= 1e-12.
    """
    tau_max = check_tau(tau_max)
    initial = float(raw_concurrence(0.0))
    if initial <= 0.0:
        raise NoInitialEntanglement(f"raw concurrence at tau=0 is {initial}")
    grid = np.linspace(0.0, tau_max, scan_samples + 1)
    values = np.asarray(raw_concurrence(grid[1:]), dtype=float)
    hits = np.nonzero(values <= 0.0)[0]
    if len(hits) == 0:
        return SdtResult(DynamicalClass.EAD)
    first = int(hits[0])
    lo = float(grid[first])  # grid[1:][first - 1] == grid[first]
    hi = float(grid[first + 1])
    while hi - lo > 1e-13 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if float(raw_concurrence(mid)) <= 0.0:
            hi = mid
        else:
            lo = mid
    return SdtResult(DynamicalClass.ESD, 0.5 * (lo + hi))


def sdt_bell_numeric(p: BellPoint, tau_max: float = DEFAULT_TAU_MAX) -> SdtResult:
    """Numeric death time of a Bell point via its raw branch concurrence."""
    kind = classify_bell_point(p)
    if kind is DynamicalClass.SEPARABLE:
        return SdtResult(kind)
    return sdt_numeric(raw_branch_concurrence(p), tau_max)

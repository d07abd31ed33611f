"""Closed-form time evolution of X-states under independent zero-temperature
amplitude damping of both qubits.

Time enters only through the dimensionless combination tau = gamma * t
(gamma is the vacuum decay rate), so tau is the only time variable in this
package.  Writing e = exp(-tau), the X-state parameters evolve as

    x0(tau) = X0
    x1(tau) = X1 e               x2(tau) = X2 e
    x3(tau) = X0 (1 - e)^2 + X3 e^2 - (X4 + X5) e (1 - e)
    x4(tau) = X0 (e - 1) + X4 e  x5(tau) = X0 (e - 1) + X5 e

with capital letters the values at tau = 0.  The x3/x4/x5 expressions are
algebraically identical to the textbook ones written with exp(+tau) factors
but stay bounded for arbitrarily large tau.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .states import BellPoint, XStateParams

__all__ = ["check_tau", "evolve_xstate", "evolve_bell_point"]


def check_tau(tau: float) -> float:
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0.0:
        raise DomainError(f"tau must be finite and >= 0, got {tau}")
    return tau


def evolve_xstate(init: XStateParams, tau: float) -> XStateParams:
    """Evolve X-state parameters to dimensionless time tau = gamma*t.

    tau = 0 returns ``init`` unchanged; the trace component x0 is conserved
    exactly for every tau.
    """
    tau = check_tau(tau)
    if tau == 0.0:
        return init
    e = math.exp(-tau)
    x0, x1, x2, x3, x4, x5 = init.as_tuple()
    decay = 1.0 - e
    return XStateParams(
        x0,
        x1 * e,
        x2 * e,
        x0 * decay * decay + x3 * e * e - (x4 + x5) * e * decay,
        x0 * (e - 1.0) + x4 * e,
        x0 * (e - 1.0) + x5 * e,
    )


def evolve_bell_point(p: BellPoint, tau: float) -> XStateParams:
    """Evolve the Bell-diagonal state at p; the initial X-state is
    (1, x1, x2, x3, 0, 0)."""
    return evolve_xstate(XStateParams(1.0, p.x1, p.x2, p.x3, 0.0, 0.0), tau)

"""Concurrence of two-qubit states.

The concurrence of rho is

    C(rho) = max{0, 2 sqrt(lam_max) - sum_i sqrt(lam_i)},

with lam_i the eigenvalues of rho * (Y x Y) * conj(rho) * (Y x Y) (Y is the
second Pauli matrix).  The untruncated combination 2 sqrt(lam_max) - sum is
exposed as the "raw" value throughout: death-time root finding needs the
sign change through zero that truncation destroys.

Two spectral paths are kept deliberately.  The general path feeds the 4x4
product matrix to the shared companion-matrix quartic solver; X-shaped
states additionally have exact 2x2-block closed forms

    sqrt(lam) in { sqrt(ad) +- |w|, sqrt(bc) +- |z| }

(a, d and w the outer diagonal/antidiagonal entries, b, c and z the inner
ones).  For X-shaped input the block values are returned and the companion
path must agree with them, guarding the most error-prone computation in the
package.

Closed-form concurrences along the amplitude-damping flow:

* Bell-diagonal start (x1, x2, x3), x3 < 0 branch (the pyramids around the
  singlet-type vertices A, B):
      (1/2) [ e |x1 + x2| - sqrt((1 + x3) * (4e^2 - 4e^3 + (1 + x3) e^4)) ]
* x3 >= 0 branch (pyramids around C, D):
      (1/2) [ e |x1 - x2| + e^2 (1 + x3) - 2e ]
* boundary-class representative (x0, x1, -x1, x0 - 2k shape, k > 0):
      e |x1| - sqrt(x0 (e - e^2) ((2k + x0) e - x0 e^2))

where e = exp(-tau).  All three are written with decaying exponentials only
so they stay finite for arbitrarily large tau, and all accept numpy arrays
of tau.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, EsdgeoError, SpectrumNegative, SpectrumNotReal, WrongBranch
from .lorentz import check_nondiagonal_params, collapsed_quartic_eigenvalues
from .states import SIGMA, BellPoint, DensityMatrix, XStateParams, is_x_shaped, xstate_blocks

__all__ = [
    "SPIN_FLIP",
    "wootters_concurrence",
    "wootters_concurrence_raw",
    "wootters_concurrence_from_array",
    "wootters_raw_from_array",
    "spin_flip_sqrt_spectrum",
    "concurrence_xstate",
    "concurrence_xstate_raw",
    "concurrence_c1",
    "concurrence_c1_raw",
    "concurrence_c2",
    "concurrence_c2_raw",
    "concurrence_nondiagonal",
    "concurrence_nondiagonal_raw",
    "raw_branch_concurrence",
]

SPIN_FLIP = np.kron(SIGMA[2], SIGMA[2])

# Residual tolerances after degenerate-cluster collapsing.  The block path
# keeps full precision for X states; the companion cross-check guards
# against structural mistakes (wrong pairing, sign slips), which show up
# orders of magnitude above its own noise floor at degenerate pairs.
_IMAG_TOL = 1e-8
_NEG_TOL = 1e-8
_CROSS_CHECK_TOL = 1e-4


def _check_tau_values(tau):
    arr = np.asarray(tau, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise DomainError("tau values must be finite and >= 0")
    return arr


def spin_flip_sqrt_spectrum(rho: np.ndarray) -> np.ndarray:
    """Square roots of the spin-flip product spectrum, sorted descending,
    via the companion-matrix quartic solver."""
    rho = np.asarray(rho, dtype=complex)
    rho_hat = rho @ SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    lam = collapsed_quartic_eigenvalues(rho_hat)
    scale = max(1.0, float(np.max(np.abs(lam))))
    if float(np.max(np.abs(lam.imag))) > _IMAG_TOL * scale:
        raise SpectrumNotReal("spin-flip spectrum has non-negligible imaginary parts")
    real = lam.real
    if float(np.min(real)) < -_NEG_TOL * scale:
        raise SpectrumNegative("spin-flip spectrum has a genuinely negative eigenvalue")
    return np.sort(np.sqrt(np.clip(real, 0.0, None)))[::-1]


def _xblock_sqrt_spectrum(rho: np.ndarray) -> np.ndarray:
    a = max(rho[0, 0].real, 0.0)
    d = max(rho[3, 3].real, 0.0)
    b = max(rho[1, 1].real, 0.0)
    c = max(rho[2, 2].real, 0.0)
    w = abs(rho[0, 3])
    z = abs(rho[1, 2])
    sad = np.sqrt(a * d)
    sbc = np.sqrt(b * c)
    return np.sort([sad + w, abs(sad - w), sbc + z, abs(sbc - z)])[::-1]


def _sqrt_spectrum(rho: np.ndarray) -> np.ndarray:
    if is_x_shaped(rho):
        vals = _xblock_sqrt_spectrum(rho)
        check = spin_flip_sqrt_spectrum(rho)
        if float(np.max(np.abs(vals - check))) > _CROSS_CHECK_TOL * max(1.0, vals[0]):
            raise EsdgeoError(
                "X-block and companion spin-flip spectra disagree: "
                f"{vals} vs {check}"
            )
        return vals
    return spin_flip_sqrt_spectrum(rho)


def wootters_raw_from_array(rho: np.ndarray) -> float:
    vals = _sqrt_spectrum(np.asarray(rho, dtype=complex))
    return float(2.0 * vals[0] - np.sum(vals))


def wootters_concurrence_from_array(rho: np.ndarray) -> float:
    return max(0.0, wootters_raw_from_array(rho))


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Concurrence of a (possibly unnormalized) state; scales linearly with
    the trace for unnormalized input."""
    return wootters_concurrence_from_array(rho.entries)


def wootters_concurrence_raw(rho: DensityMatrix) -> float:
    """Untruncated value 2 sqrt(lam_max) - sum_i sqrt(lam_i)."""
    return wootters_raw_from_array(rho.entries)


def concurrence_xstate_raw(x: XStateParams) -> float:
    """Raw concurrence directly from X-state parameters (block closed form)."""
    a, b, c, d, w, z = xstate_blocks(x)
    branch_w = 2.0 * (abs(w) - np.sqrt(max(b * c, 0.0)))
    branch_z = 2.0 * (abs(z) - np.sqrt(max(a * d, 0.0)))
    return float(max(branch_w, branch_z))


def concurrence_xstate(x: XStateParams) -> float:
    return max(0.0, concurrence_xstate_raw(x))


# ---------------------------------------------------------------------------
# Closed forms along the amplitude-damping flow
# ---------------------------------------------------------------------------

def concurrence_c1_raw(p: BellPoint, tau):
    """Raw closed-form concurrence of an evolved Bell point, x3 < 0 branch.

    Accepts a scalar or array tau.
    """
    if p.x3 >= 0.0:
        raise WrongBranch(f"x3 = {p.x3} >= 0: use the x3 >= 0 branch")
    tau = _check_tau_values(tau)
    e = np.exp(-tau)
    one_x3 = 1.0 + p.x3
    inner = e * e * (4.0 - 4.0 * e + one_x3 * e * e)
    return 0.5 * (e * abs(p.x1 + p.x2) - np.sqrt(one_x3 * inner))


def concurrence_c1(p: BellPoint, tau):
    return np.maximum(0.0, concurrence_c1_raw(p, tau))


def concurrence_c2_raw(p: BellPoint, tau):
    """Raw closed-form concurrence of an evolved Bell point, x3 >= 0 branch."""
    if p.x3 < 0.0:
        raise WrongBranch(f"x3 = {p.x3} < 0: use the x3 < 0 branch")
    tau = _check_tau_values(tau)
    e = np.exp(-tau)
    return 0.5 * (e * abs(p.x1 - p.x2) + e * e * (1.0 + p.x3) - 2.0 * e)


def concurrence_c2(p: BellPoint, tau):
    return np.maximum(0.0, concurrence_c2_raw(p, tau))


def concurrence_nondiagonal_raw(x0: float, x1: float, k: float, tau):
    """Raw concurrence of an evolved boundary-class representative."""
    check_nondiagonal_params(x0, x1, k)
    tau = _check_tau_values(tau)
    e = np.exp(-tau)
    product = x0 * (e - e * e) * ((2.0 * k + x0) * e - x0 * e * e)
    return e * abs(x1) - np.sqrt(np.maximum(product, 0.0))


def concurrence_nondiagonal(x0: float, x1: float, k: float, tau):
    return np.maximum(0.0, concurrence_nondiagonal_raw(x0, x1, k, tau))


def raw_branch_concurrence(p: BellPoint):
    """The raw closed-form concurrence of p as a callable of tau, on the
    branch selected by the sign of x3."""
    if p.x3 < 0.0:
        return lambda tau: concurrence_c1_raw(p, tau)
    return lambda tau: concurrence_c2_raw(p, tau)

"""Normal form of a two-qubit state under local invertible filtering.

Determinant-one local filters act on the Pauli coefficient matrix R as a
pair of proper orthochronous Lorentz transformations, R -> L1 R L2^T.  The
invariants of that action are the Lorentz singular values (X0, X1, X2, X3):
the squares X_i^2 are the eigenvalues of

    N = eta R^T eta R,        eta = diag(1, -1, -1, -1).

Three equivalence structures occur:

* ``Diagonal``      -- N diagonalizable with real nonnegative spectrum; the
                       state filters to diag(X0, X1, X2, X3), X0 >= |X_i|.
* ``NonDiagonal``   -- N has a 2x2 Jordan block on its leading eigenvalue
                       pair; the representative carries an extra parameter
                       k > 0 whose magnitude is not an invariant.
* ``Apex``          -- all singular values vanish (separable classes).

Reported values are normalized by X0 (so x0 = 1 for non-apex classes); the
raw leading singular value is kept in ``scale``.

Sign and ordering canon (the invariants only fix |X_i| and the sign of the
product X1*X2*X3 through det R; signs can be flipped only in pairs):
magnitudes are reported in increasing order |x1| <= |x2| <= |x3|, and among
the sign patterns that keep the normalized diagonal inside the state
tetrahedron and preserve the sign of det R, the lexicographically smallest
(x1, x2, x3) is chosen.  Under this canon the singlet is the fixed point
(1, -1, -1, -1).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ClassificationAmbiguous,
    DegenerateApex,
    InvalidRepresentative,
    InvalidState,
)
from .states import BellPoint, ConePoint, RMatrix, eigenvalue_forms

__all__ = [
    "ETA",
    "NormalFormClass",
    "NormalForm",
    "characteristic_polynomial",
    "quartic_eigenvalues",
    "lorentz_normal_form",
    "normalize_cone_point",
    "check_nondiagonal_params",
]

ETA = np.diag([1.0, -1.0, -1.0, -1.0])

# Eigenvalues closer than CLUSTER_TOL (relative) are probed as a possibly
# degenerate group.  The window is much wider than the 1e-9 rank tolerance
# because machine-precision perturbations scatter a double root by
# ~eps^(1/2) and a quadruple Jordan root by ~eps^(1/4) ~ 1e-4; the
# singular-value probe below decides defective vs. merely close, so a
# generous window costs nothing.
CLUSTER_TOL = 5e-4
RANK_TOL = 1e-9
IMAG_TOL = 1e-9
NEGATIVE_TOL = 1e-8
APEX_TOL = 1e-9
SIGN_VALID_TOL = 1e-9


class NormalFormClass(enum.Enum):
    DIAGONAL = "Diagonal"
    NONDIAGONAL = "NonDiagonal"
    APEX = "Apex"


@dataclass(frozen=True)
class NormalForm:
    """Class label and normalized Lorentz singular values.

    ``scale`` is the raw leading singular value X0 (itself a filtering
    invariant); x1..x3 are the remaining singular values divided by it.
    ``k`` is reported as the canonical value 1.0 for the NonDiagonal class
    (only its positivity is invariant) and is None otherwise.
    """

    kind: NormalFormClass
    x0: float
    x1: float
    x2: float
    x3: float
    k: float | None = None
    scale: float = 1.0

    def values(self) -> tuple:
        return (self.x0, self.x1, self.x2, self.x3)


def characteristic_polynomial(matrix: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda*I - M) for a 4x4 matrix, highest power
    first, via power-trace (Newton) identities."""
    m1 = matrix
    m2 = m1 @ m1
    t1 = m1.trace()
    t2 = m2.trace()
    t3 = (m2 @ m1).trace()
    t4 = (m2 @ m2).trace()
    e1 = t1
    e2 = (t1 * t1 - t2) / 2.0
    e3 = (t1 ** 3 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0
    e4 = (t1 ** 4 - 6.0 * t1 * t1 * t2 + 3.0 * t2 * t2 + 8.0 * t1 * t3 - 6.0 * t4) / 24.0
    return np.array([1.0, -e1, e2, -e3, e4])


def _snapped_coefficients(matrix: np.ndarray) -> np.ndarray:
    """Characteristic polynomial with coefficients below the noise floor of
    their own computation snapped to zero; this recovers exact zero roots
    for rank-deficient input, where an expanded quartic would otherwise
    scatter them by ~eps^(1/3).

    The noise floor is expressed through the Cauchy-type root bound
    max_k |c_k|^(1/k), not the matrix entries: the spin-flip product fed in
    by the concurrence path is non-normal, so its entries can dwarf its
    spectral radius and an entry-based threshold would wipe out meaningful
    small coefficients.
    """
    coeffs = characteristic_polynomial(matrix)
    root_scale = 1e-300
    for k in range(1, 5):
        if np.abs(coeffs[k]) > 0.0:
            root_scale = max(root_scale, float(np.abs(coeffs[k]) ** (1.0 / k)))
    eps = np.finfo(float).eps
    for k in range(1, 5):
        if np.abs(coeffs[k]) <= 64.0 * eps * root_scale ** k:
            coeffs[k] = 0.0
    return coeffs


def _roots_of_quartic(coeffs: np.ndarray) -> np.ndarray:
    roots = np.roots(coeffs)
    if len(roots) < 4:  # guard: trailing zero coefficients
        roots = np.concatenate([roots, np.zeros(4 - len(roots), dtype=complex)])
    deriv = np.polyder(coeffs)
    guard = 1e-4 * max(1.0, float(np.max(np.abs(roots)))) ** 3
    for _ in range(2):
        values = np.polyval(coeffs, roots)
        slopes = np.polyval(deriv, roots)
        safe = np.abs(slopes) > guard
        step = np.zeros_like(roots)
        step[safe] = values[safe] / slopes[safe]
        roots = roots - step
    return roots


def quartic_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 4x4 matrix from the companion matrix of its
    characteristic polynomial, Newton-polished at simple roots."""
    return _roots_of_quartic(_snapped_coefficients(matrix))


def collapsed_quartic_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Companion-matrix eigenvalues with degenerate groups re-centered.

    A multiple root of the expanded quartic scatters by ~eps^(1/m) in any
    root finder; each near-degenerate group is re-centered on the simple
    root of the (m-1)-th derivative, and for pairs a genuine small split is
    recovered from the local quadratic term while a noise split (imaginary-
    dominated) collapses onto the center.  Intended for matrices expected
    to carry a real spectrum.
    """
    coeffs = _snapped_coefficients(matrix)
    roots = _roots_of_quartic(coeffs)
    scale = float(np.max(np.abs(roots)))
    if scale == 0.0:
        return roots
    out = []
    for members in _clusters(roots, CLUSTER_TOL * scale):
        m = len(members)
        if m == 1:
            out.append(roots[members[0]])
            continue
        mean = float(np.mean(roots[members]).real)
        center = _refine_cluster_center(coeffs, mean, m, CLUSTER_TOL * scale)
        if m == 2:
            curvature = np.polyval(np.polyder(np.polyder(coeffs)), center)
            if curvature != 0.0:
                step = np.sqrt(-2.0 * np.polyval(coeffs, center) / curvature)
                if abs(step.imag) <= 0.5 * abs(step.real):
                    out.extend([center - step.real, center + step.real])
                    continue
            out.extend([center, center])
        else:
            out.extend([center] * m)
    return np.array(out, dtype=complex)


def _refine_cluster_center(coeffs: np.ndarray, center: float, multiplicity: int,
                           window: float) -> float:
    """Sharpen the location of a multiplicity-m root: it is a simple,
    well-conditioned root of the (m-1)-th derivative, so Newton there
    recovers ~eps accuracy where the companion-root mean can be off by
    orders more (close double-double structures)."""
    reduced = coeffs
    for _ in range(multiplicity - 1):
        reduced = np.polyder(reduced)
    slope_poly = np.polyder(reduced)
    lam = center
    for _ in range(6):
        slope = np.polyval(slope_poly, lam)
        if slope == 0.0:
            break
        step = np.polyval(reduced, lam) / slope
        lam = lam - step
        if abs(step) <= 1e-16 * max(1.0, abs(lam)):
            break
    lam = float(np.real(lam))
    if abs(lam - center) > window:
        return center  # refinement escaped the cluster: keep the mean
    return lam


def _clusters(values: np.ndarray, tol: float) -> list:
    """Connected components of the roots under |a - b| <= tol."""
    n = len(values)
    groups = []
    assigned = [False] * n
    for i in range(n):
        if assigned[i]:
            continue
        stack, members = [i], []
        assigned[i] = True
        while stack:
            a = stack.pop()
            members.append(a)
            for b in range(n):
                if not assigned[b] and abs(values[a] - values[b]) <= tol:
                    assigned[b] = True
                    stack.append(b)
        groups.append(sorted(members))
    return groups


def _kernel_dimension(n_matrix: np.ndarray, lam: float, tol: float) -> int:
    sv = np.linalg.svd(n_matrix - lam * np.eye(4), compute_uv=False)
    return int(np.sum(sv <= tol))


def _canonical_signs(mags: np.ndarray, parities: tuple) -> tuple:
    """Smallest valid state-sign assignment for normalized magnitudes given
    the admissible parities (number of minus signs mod 2) of det R."""
    candidates = []
    for signs in itertools.product((-1.0, 1.0), repeat=3):
        if (signs.count(-1.0) % 2) not in parities:
            continue
        cand = tuple(float(s * m) + 0.0 for s, m in zip(signs, mags))
        if np.min(eigenvalue_forms(*cand)) >= -SIGN_VALID_TOL:
            candidates.append(cand)
    if not candidates:
        return None
    return min(candidates)


def lorentz_normal_form(r: RMatrix) -> NormalForm:
    """Compute class label and normalized Lorentz singular values of R.

    Raises InvalidState when the spectrum of N = eta R^T eta R is not
    consistent with any state (complex or negative eigenvalues, or no sign
    assignment yields a valid normalized diagonal), and
    ClassificationAmbiguous when a degenerate eigenvalue group shows a
    Jordan structure that matches no known class.
    """
    big_r = r.entries
    n_matrix = ETA @ big_r.T @ ETA @ big_r
    coeffs = _snapped_coefficients(n_matrix)
    roots = _roots_of_quartic(coeffs)

    # apex first: with a vanishing leading singular value there is nothing
    # to cluster or normalize
    r_scale = max(1.0, float(np.linalg.norm(big_r)))
    scale = float(np.max(np.abs(roots)))
    if np.sqrt(scale) <= APEX_TOL * r_scale:
        return NormalForm(NormalFormClass.APEX, 0.0, 0.0, 0.0, 0.0, scale=0.0)

    groups = _clusters(roots, CLUSTER_TOL * scale)
    # (eigenvalue, algebraic multiplicity, defective?) per group
    resolved = []
    for members in groups:
        vals = roots[members]
        mean = complex(np.mean(vals))
        if abs(mean.imag) > IMAG_TOL * scale:
            raise InvalidState("leading spectrum is not real: no valid normal form")
        m = len(members)
        if m == 1:
            if abs(vals[0].imag) > IMAG_TOL * scale:
                raise InvalidState("complex eigenvalue: no valid normal form")
            resolved.append((mean.real, 1, False))
            continue
        lam = _refine_cluster_center(coeffs, mean.real, m, CLUSTER_TOL * scale)
        kernel = _kernel_dimension(n_matrix, lam, RANK_TOL * scale)
        if kernel == 0:
            # merely close, not degenerate: keep the individual roots
            for v in vals:
                if abs(v.imag) > IMAG_TOL * scale:
                    raise ClassificationAmbiguous(
                        "eigenvalue group can be resolved neither as degenerate "
                        "nor as distinct real values"
                    )
                resolved.append((v.real, 1, False))
        elif kernel == m:
            resolved.append((lam, m, False))
        else:
            resolved.append((lam, m, True))

    eigs = []
    defective = []
    for lam, m, is_def in resolved:
        if lam < -NEGATIVE_TOL * scale:
            raise InvalidState(f"negative eigenvalue {lam}: no valid normal form")
        lam = max(lam, 0.0)
        if is_def:
            defective.append((lam, m))
        eigs.extend([lam] * m)
    eigs = np.sort(np.array(eigs))[::-1]
    x0_raw = float(np.sqrt(eigs[0]))

    if defective:
        return _nondiagonal_form(defective, resolved, eigs, scale)

    mags = np.sqrt(eigs[1:]) / x0_raw
    mags = np.sort(np.minimum(mags, 1.0))  # increasing magnitude order
    det_r = float(np.linalg.det(big_r))
    if abs(det_r) <= 1e-9 * x0_raw ** 4:
        parities = (0, 1)
    elif det_r > 0:
        parities = (0,)
    else:
        parities = (1,)
    signed = _canonical_signs(mags, parities)
    if signed is None:
        raise InvalidState(
            "no sign assignment places the diagonal inside the state tetrahedron"
        )
    return NormalForm(
        NormalFormClass.DIAGONAL, 1.0, signed[0], signed[1], signed[2], scale=x0_raw
    )


def _nondiagonal_form(defective, resolved, eigs, scale) -> NormalForm:
    if len(defective) != 1:
        raise ClassificationAmbiguous(
            "more than one defective eigenvalue group; no known class matches"
        )
    lam_def, m_def = defective[0]
    if m_def == 4:
        # fully degenerate boundary case |x1| = x0
        x1 = 1.0
    elif m_def == 2:
        others = [lam for lam, m, d in resolved if not d for _ in range(m)]
        if len(others) != 2 or abs(others[0] - others[1]) > CLUSTER_TOL * scale:
            raise InvalidState(
                "defective pair is not accompanied by an equal eigenvalue pair"
            )
        lam_other = 0.5 * (others[0] + others[1])
        if lam_other > lam_def * (1.0 + CLUSTER_TOL):
            raise InvalidState("defective eigenvalue pair is not the leading one")
        x1 = float(np.sqrt(max(lam_other, 0.0) / lam_def))
        x1 = min(x1, 1.0)
    else:
        raise ClassificationAmbiguous(
            f"defective group of multiplicity {m_def} matches no known class"
        )
    x0_raw = float(np.sqrt(lam_def))
    # canonical orientation x1 >= 0 (signs flip only in pairs) and k = 1
    return NormalForm(
        NormalFormClass.NONDIAGONAL, 1.0, x1, -x1, 1.0, k=1.0, scale=x0_raw
    )


def normalize_cone_point(c: ConePoint) -> BellPoint:
    """Cross-section of the cone at x0 = 1: divide through by x0."""
    if c.x0 <= 1e-12:
        raise DegenerateApex(f"cannot normalize cone point with x0 = {c.x0}")
    return BellPoint(c.x1 / c.x0, c.x2 / c.x0, c.x3 / c.x0)


def check_nondiagonal_params(x0: float, x1: float, k: float) -> None:
    """Validate boundary-class representative parameters: x0 > 0 with
    x0 >= |x1|, and k > 0."""
    if not all(math.isfinite(v) for v in (x0, x1, k)):
        raise InvalidRepresentative("parameters must be finite")
    if x0 <= 0.0:
        raise InvalidRepresentative(f"x0 must be positive, got {x0}")
    if abs(x1) > x0 + 1e-12:
        raise InvalidRepresentative(f"|x1| = {abs(x1)} exceeds x0 = {x0}")
    if k <= 0.0:
        raise InvalidRepresentative(f"k must be positive, got {k}")

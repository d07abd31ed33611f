"""Core two-qubit state representations and conversions.

A two-qubit density matrix rho is encoded by the real 4x4 matrix R with

    rho = (1/4) * sum_ij R[i,j] sigma_i (x) sigma_j,      i,j in {0,1,2,3},

where sigma_0 is the identity and sigma_1..3 are the Pauli matrices in the
standard convention (sigma_1 = X, sigma_2 = Y, sigma_3 = Z).  Bell-diagonal
states correspond to R = diag(1, x1, x2, x3) with (x1, x2, x3) inside the
tetrahedron whose vertices

    A = (1, 1, -1)   B = (-1, -1, -1)   C = (1, -1, 1)   D = (-1, 1, 1)

are the four Bell states (B is the singlet).  The separable Bell-diagonal
states form the octahedron |x1| + |x2| + |x3| <= 1 inscribed in that
tetrahedron.

X-states are the states whose R matrix has nonzero entries only at
(0,0), (1,1), (2,2), (3,3), (0,3) and (3,0); this family is closed under
independent amplitude damping of both qubits.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass

from .errors import InvalidState, TetrahedronViolation

__all__ = [
    "SIGMA",
    "PAULI_PRODUCTS",
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "PSD_TOL",
    "GEOMETRY_TOL",
    "DensityMatrix",
    "RMatrix",
    "BellPoint",
    "XStateParams",
    "ConePoint",
    "eigenvalue_forms",
    "in_tetrahedron",
    "bell_point_clamped",
    "is_separable_bell",
    "density_from_r",
    "r_from_density",
    "density_array_from_r_array",
    "r_array_from_density_array",
    "bell_point_to_density",
    "bell_point_eigenvalues",
    "xstate_to_r",
    "xstate_to_density",
    "xstate_density_array",
    "xstate_from_r",
    "xstate_blocks",
    "is_x_shaped",
    "partial_transpose",
]

# Pauli matrices, pinned entry by entry; every other convention in the
# package (spin flip, Bell vertices, damping direction) derives from these.
SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

#: PAULI_PRODUCTS[i][j] = sigma_i (x) sigma_j
PAULI_PRODUCTS = tuple(
    tuple(np.kron(SIGMA[i], SIGMA[j]) for j in range(4)) for i in range(4)
)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10  # absorbs eigensolver noise, rejects genuinely unphysical input
GEOMETRY_TOL = 1e-12


def _as_complex_4x4(entries) -> np.ndarray:
    arr = np.asarray(entries, dtype=complex)
    if arr.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InvalidState("matrix entries must be finite")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """A physical two-qubit state: Hermitian, positive semidefinite, and
    unit trace unless flagged ``unnormalized`` (then only trace > 0).

    Unnormalized states are first class because the boundary-class
    representatives of the local-filtering normal form carry trace != 1.
    """

    entries: np.ndarray
    unnormalized: bool = False

    def __post_init__(self):
        arr = _as_complex_4x4(self.entries)
        if np.max(np.abs(arr - arr.conj().T)) > HERMITICITY_TOL:
            raise InvalidState("density matrix is not Hermitian")
        tr = arr.trace().real
        if self.unnormalized:
            if tr <= 0:
                raise InvalidState(f"unnormalized state needs trace > 0, got {tr}")
        elif abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"trace must be 1 (got {tr}); pass unnormalized=True")
        if np.min(np.linalg.eigvalsh(arr)) < -PSD_TOL:
            raise InvalidState("density matrix is not positive semidefinite")
        object.__setattr__(self, "entries", _freeze(arr))

    @property
    def trace(self) -> float:
        return float(self.entries.trace().real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class RMatrix:
    """Real Pauli-basis coefficient matrix R_ij = Tr[rho sigma_i (x) sigma_j].

    Any real 4x4 matrix is accepted; physicality of the induced rho is the
    concern of :class:`DensityMatrix`.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.shape != (4, 4):
            raise InvalidState(f"expected a 4x4 real matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidState("R-matrix entries must be finite")
        object.__setattr__(self, "entries", _freeze(arr))


def eigenvalue_forms(x1: float, x2: float, x3: float) -> np.ndarray:
    """The four eigenvalues of the Bell-diagonal state with coordinates
    (x1, x2, x3), one per Bell basis vector."""
    return 0.25 * np.array(
        [
            1.0 - x1 - x2 - x3,
            1.0 - x1 + x2 + x3,
            1.0 + x1 - x2 + x3,
            1.0 + x1 + x2 - x3,
        ]
    )


def in_tetrahedron(point, tol: float = GEOMETRY_TOL) -> bool:
    """True iff (x1, x2, x3) lies in the closed Bell-state tetrahedron."""
    x1, x2, x3 = (float(v) for v in point)
    if not all(np.isfinite([x1, x2, x3])):
        return False
    return bool(np.min(eigenvalue_forms(x1, x2, x3)) >= -tol)


@dataclass(frozen=True)
class BellPoint:
    """Coordinates of a Bell-diagonal state inside the tetrahedron."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        coords = (float(self.x1), float(self.x2), float(self.x3))
        if not in_tetrahedron(coords):
            raise TetrahedronViolation(
                f"point {coords} lies outside the Bell-state tetrahedron"
            )
        object.__setattr__(self, "x1", coords[0])
        object.__setattr__(self, "x2", coords[1])
        object.__setattr__(self, "x3", coords[2])

    def as_tuple(self) -> tuple:
        return (self.x1, self.x2, self.x3)


def bell_point_clamped(x1: float, x2: float, x3: float,
                       max_violation: float = 1e-8) -> BellPoint:
    """BellPoint that tolerates slightly-outside coordinates (up to
    ``max_violation`` on the eigenvalue forms) by shrinking toward the
    origin; used when coordinates come out of floating-point pipelines."""
    worst = float(np.min(eigenvalue_forms(x1, x2, x3)))
    if worst >= -GEOMETRY_TOL:
        return BellPoint(x1, x2, x3)
    if worst < -max_violation:
        raise TetrahedronViolation(
            f"point ({x1}, {x2}, {x3}) misses the tetrahedron by {-worst}"
        )
    shrink = 1.0 / (1.0 + 8.0 * -worst)
    return BellPoint(shrink * x1, shrink * x2, shrink * x3)


def is_separable_bell(p: BellPoint) -> bool:
    """Membership in the closed separability octahedron."""
    return abs(p.x1) + abs(p.x2) + abs(p.x3) <= 1.0 + GEOMETRY_TOL


@dataclass(frozen=True)
class XStateParams:
    """Parameters (x0..x5) of an X-shaped R matrix:

        [[x0, 0, 0, x4],
         [0, x1, 0,  0],
         [0,  0, x2, 0],
         [x5, 0, 0, x3]]

    x0 equals the trace of the induced density matrix.
    """

    x0: float
    x1: float
    x2: float
    x3: float
    x4: float
    x5: float

    def __post_init__(self):
        vals = [float(getattr(self, f"x{i}")) for i in range(6)]
        if not all(np.isfinite(vals)):
            raise InvalidState("X-state parameters must be finite")
        for i, v in enumerate(vals):
            object.__setattr__(self, f"x{i}", v)

    def as_tuple(self) -> tuple:
        return (self.x0, self.x1, self.x2, self.x3, self.x4, self.x5)

    def is_physical(self, tol: float = PSD_TOL) -> bool:
        """True iff the induced density matrix is positive semidefinite."""
        arr = xstate_density_array(self)
        return bool(np.min(np.linalg.eigvalsh(arr)) >= -tol)


@dataclass(frozen=True)
class ConePoint:
    """Unnormalized diagonal representative (x0, x1, x2, x3), x0 > 0 and
    x0 >= max(|x1|, |x2|, |x3|)."""

    x0: float
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        vals = [float(getattr(self, f"x{i}")) for i in range(4)]
        if not all(np.isfinite(vals)):
            raise InvalidState("cone point coordinates must be finite")
        x0 = vals[0]
        if x0 <= 0:
            raise InvalidState(f"cone point needs x0 > 0, got {x0}")
        if x0 < max(abs(v) for v in vals[1:]) - GEOMETRY_TOL:
            raise InvalidState("cone point needs x0 >= max(|x1|, |x2|, |x3|)")
        for i, v in enumerate(vals):
            object.__setattr__(self, f"x{i}", v)

    def as_tuple(self) -> tuple:
        return (self.x0, self.x1, self.x2, self.x3)


# ---------------------------------------------------------------------------
# Pauli-basis conversions.  The array-level functions are total and exactly
# inverse to each other on any real 4x4 input; the typed wrappers add the
# physicality checks.
# ---------------------------------------------------------------------------

def density_array_from_r_array(r: np.ndarray) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            rij = r[i, j]
            if rij != 0.0:
                rho += rij * PAULI_PRODUCTS[i][j]
    return 0.25 * rho


def r_array_from_density_array(rho: np.ndarray) -> np.ndarray:
    r = np.empty((4, 4), dtype=float)
    for i in range(4):
        for j in range(4):
            r[i, j] = np.trace(rho @ PAULI_PRODUCTS[i][j]).real
    return r


def density_from_r(r: RMatrix, unnormalized: bool | None = None) -> DensityMatrix:
    """Build the density matrix of an R matrix.

    With ``unnormalized=None`` the flag is inferred from R[0,0] (the trace).
    """
    rho = density_array_from_r_array(r.entries)
    if unnormalized is None:
        unnormalized = abs(r.entries[0, 0] - 1.0) > TRACE_TOL
    return DensityMatrix(rho, unnormalized=unnormalized)


def r_from_density(rho: DensityMatrix) -> RMatrix:
    return RMatrix(r_array_from_density_array(rho.entries))


def bell_point_to_density(p: BellPoint) -> DensityMatrix:
    """Density matrix of the Bell-diagonal state at p."""
    r = np.diag([1.0, p.x1, p.x2, p.x3])
    return DensityMatrix(density_array_from_r_array(r))


def bell_point_eigenvalues(p: BellPoint) -> np.ndarray:
    return eigenvalue_forms(p.x1, p.x2, p.x3)


# ---------------------------------------------------------------------------
# X-state helpers
# ---------------------------------------------------------------------------

# R-matrix slots that may be nonzero for an X-state
_X_SLOTS = ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0))


def xstate_to_r(x: XStateParams) -> RMatrix:
    r = np.zeros((4, 4))
    r[0, 0], r[1, 1], r[2, 2], r[3, 3] = x.x0, x.x1, x.x2, x.x3
    r[0, 3], r[3, 0] = x.x4, x.x5
    return RMatrix(r)


def xstate_density_array(x: XStateParams) -> np.ndarray:
    """Density matrix of an X-state assembled directly from its blocks
    (identical to the Pauli sum over the X-shaped R matrix)."""
    a, b, c, d, w, z = xstate_blocks(x)
    arr = np.zeros((4, 4), dtype=complex)
    arr[0, 0], arr[1, 1], arr[2, 2], arr[3, 3] = a, b, c, d
    arr[0, 3] = arr[3, 0] = w
    arr[1, 2] = arr[2, 1] = z
    return arr


def xstate_to_density(x: XStateParams, unnormalized: bool | None = None) -> DensityMatrix:
    if unnormalized is None:
        unnormalized = abs(x.x0 - 1.0) > TRACE_TOL
    return DensityMatrix(xstate_density_array(x), unnormalized=unnormalized)


def xstate_from_r(r: RMatrix, tol: float = 1e-11) -> XStateParams:
    """Read off X-state parameters; raises if R is not X-shaped."""
    arr = r.entries
    mask = np.ones((4, 4), dtype=bool)
    for ij in _X_SLOTS:
        mask[ij] = False
    if np.max(np.abs(arr[mask])) > tol:
        raise InvalidState("R matrix does not have the X sparsity pattern")
    return XStateParams(arr[0, 0], arr[1, 1], arr[2, 2], arr[3, 3], arr[0, 3], arr[3, 0])


def xstate_blocks(x: XStateParams) -> tuple:
    """Entries (a, b, c, d, w, z) of the induced density matrix

        [[a, 0, 0, w],
         [0, b, z, 0],
         [0, z, c, 0],
         [w, 0, 0, d]]

    in the product basis |00>, |01>, |10>, |11>.
    """
    a = 0.25 * (x.x0 + x.x3 + x.x4 + x.x5)
    b = 0.25 * (x.x0 - x.x3 - x.x4 + x.x5)
    c = 0.25 * (x.x0 - x.x3 + x.x4 - x.x5)
    d = 0.25 * (x.x0 + x.x3 - x.x4 - x.x5)
    w = 0.25 * (x.x1 - x.x2)
    z = 0.25 * (x.x1 + x.x2)
    return a, b, c, d, w, z


def is_x_shaped(rho: np.ndarray, tol: float = 1e-11) -> bool:
    """True iff the density matrix has (within tol) the X sparsity pattern."""
    off = [
        (0, 1), (0, 2), (1, 0), (2, 0),
        (1, 3), (2, 3), (3, 1), (3, 2),
    ]
    return all(abs(rho[ij]) <= tol for ij in off)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over the second qubit."""
    return (
        np.asarray(rho)
        .reshape(2, 2, 2, 2)
        .transpose(0, 3, 2, 1)
        .reshape(4, 4)
    )

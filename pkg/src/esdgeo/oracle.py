"""Brute-force integrator of the two-qubit amplitude-damping master equation.

In dimensionless time tau = gamma*t the equation reads

    drho/dtau = (1/2) sum_n (2 s_n rho s_n' - s_n' s_n rho - rho s_n' s_n)

with s_1 = sigma (x) 1, s_2 = 1 (x) sigma and sigma = [[0, 0], [1, 0]]
(primes denote adjoints).  In this convention each qubit decays toward its
second basis vector, so |11><11| is the global steady state.

The generator is linear and time independent, so a classical fixed-step
RK4 sweep is implemented by one precomputed 16x16 propagator applied per
step; Hermiticity is restored by symmetrization after every step, while
positivity is only monitored (projecting it would mask integrator bugs).
This module is the independent cross-check for every closed form in the
package.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .concurrence import wootters_concurrence_from_array
from .dynamics import check_tau
from .errors import DomainError, StepTooLarge
from .states import DensityMatrix

__all__ = [
    "LOWERING_OPS",
    "IntegratorConfig",
    "lindblad_rhs",
    "integrate",
    "integrate_path",
    "propagate_batch",
    "concurrence_trajectory",
]

_SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

LOWERING_OPS = (np.kron(_SIGMA_MINUS, _I2), np.kron(_I2, _SIGMA_MINUS))
_NUMBER_OPS = tuple(op.conj().T @ op for op in LOWERING_OPS)

MAX_STEP = 1e-2


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 configuration; the default step keeps the global
    error around 1e-10 per unit tau."""

    step: float = 1e-3

    def __post_init__(self):
        if not (0.0 < self.step <= MAX_STEP):
            raise StepTooLarge(
                f"step must satisfy 0 < step <= {MAX_STEP}, got {self.step}"
            )


def lindblad_rhs(rho) -> np.ndarray:
    """drho/dtau for a density matrix (or any 4x4 array); the output is
    Hermitian and traceless whenever the input is Hermitian."""
    arr = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, complex)
    out = np.zeros((4, 4), dtype=complex)
    for op, num in zip(LOWERING_OPS, _NUMBER_OPS):
        out += op @ arr @ op.conj().T - 0.5 * (num @ arr + arr @ num)
    return out


def _liouvillian() -> np.ndarray:
    """16x16 matrix form of the generator acting on row-flattened rho."""
    mat = np.zeros((16, 16), dtype=complex)
    for k in range(16):
        basis = np.zeros((4, 4), dtype=complex)
        basis.flat[k] = 1.0
        mat[:, k] = lindblad_rhs(basis).ravel()
    return mat


def _propagator_matrix(step: float) -> np.ndarray:
    """One RK4 step of the constant linear system as a single matrix:
    I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24."""
    hl = step * _liouvillian()
    out = np.eye(16, dtype=complex)
    term = np.eye(16, dtype=complex)
    for order in (1.0, 2.0, 3.0, 4.0):
        term = term @ hl / order
        out = out + term
    return out


# remainder steps vary per call and are computed uncached
_propagator = functools.lru_cache(maxsize=32)(_propagator_matrix)


def _symmetrize(vecs: np.ndarray) -> np.ndarray:
    """(rho + rho^dagger)/2 on a (16, n) batch of flattened matrices."""
    arrs = vecs.reshape(4, 4, -1)
    return (0.5 * (arrs + arrs.transpose(1, 0, 2).conj())).reshape(16, -1)


def _split_steps(tau: float, step: float) -> tuple:
    n = int(np.floor(tau / step + 1e-12))
    rem = tau - n * step
    if rem <= 1e-14 * max(1.0, tau):
        rem = 0.0
    return n, rem


def _run(vecs: np.ndarray, tau: float, step: float) -> np.ndarray:
    n, rem = _split_steps(tau, step)
    prop = _propagator(step)
    for _ in range(n):
        vecs = _symmetrize(prop @ vecs)
    if rem > 0.0:
        # final partial step sized to land exactly on tau
        vecs = _symmetrize(_propagator_matrix(rem) @ vecs)
    return vecs


def propagate_batch(
    vecs: np.ndarray, tau: float, config: IntegratorConfig = IntegratorConfig()
) -> np.ndarray:
    """Advance a (16, n) batch of flattened density matrices by tau."""
    return _run(np.asarray(vecs, dtype=complex), check_tau(tau), config.step)


def integrate(
    rho0: DensityMatrix, tau: float, config: IntegratorConfig = IntegratorConfig()
) -> DensityMatrix:
    """Integrate rho0 forward to dimensionless time tau."""
    tau = check_tau(tau)
    if tau == 0.0:
        return rho0
    vec = _run(rho0.entries.reshape(16, 1).astype(complex), tau, config.step)
    return DensityMatrix(vec.reshape(4, 4), unnormalized=rho0.unnormalized)


def integrate_path(
    rho0: DensityMatrix,
    taus,
    config: IntegratorConfig = IntegratorConfig(),
) -> list:
    """States at an increasing sequence of tau marks, computed in one sweep.

    Returns plain arrays (one 4x4 matrix per mark); wrap in DensityMatrix
    only where the physicality check is wanted.
    """
    marks = [check_tau(t) for t in taus]
    if any(b < a for a, b in zip(marks, marks[1:])):
        raise DomainError("tau marks must be nondecreasing")
    out = []
    vec = rho0.entries.reshape(16, 1).astype(complex)
    prev = 0.0
    for t in marks:
        vec = _run(vec, t - prev, config.step)
        prev = t
        out.append(vec.reshape(4, 4).copy())
    return out


def concurrence_trajectory(
    rho0: DensityMatrix,
    tau_max: float,
    samples: int,
    config: IntegratorConfig = IntegratorConfig(),
) -> np.ndarray:
    """Concurrence along the integrated trajectory on a uniform tau grid.

    Returns an array of shape (samples, 2) with columns (tau, concurrence).
    """
    tau_max = check_tau(tau_max)
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    grid = np.linspace(0.0, tau_max, samples)
    states = integrate_path(rho0, grid, config)
    conc = [wootters_concurrence_from_array(arr) for arr in states]
    return np.column_stack([grid, conc])

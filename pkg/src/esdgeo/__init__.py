"""Disentanglement dynamics of two-qubit states under independent
zero-temperature amplitude damping.

The package computes, classifies and cross-verifies how entanglement of
Bell-diagonal states (and of the normal-form representatives of arbitrary
two-qubit states under local invertible filtering) decays when each qubit
couples to its own vacuum reservoir: closed-form evolution, concurrence,
separable/sudden-death/asymptotic-death region geometry, and closed
geometric formulas for the sudden-death time, all checked against a
brute-force master-equation integrator.
"""

from .classify import (
    DynamicalClass,
    Distances,
    classify_bell_point,
    classify_cone_point,
    classify_nondiagonal,
    distances,
)
from .concurrence import (
    concurrence_c1,
    concurrence_c1_raw,
    concurrence_c2,
    concurrence_c2_raw,
    concurrence_nondiagonal,
    concurrence_nondiagonal_raw,
    concurrence_xstate,
    concurrence_xstate_raw,
    raw_branch_concurrence,
    wootters_concurrence,
    wootters_concurrence_raw,
)
from .dynamics import evolve_bell_point, evolve_xstate
from .errors import (
    ClassificationAmbiguous,
    DegenerateApex,
    DomainError,
    EsdgeoError,
    InvalidRepresentative,
    InvalidState,
    NoInitialEntanglement,
    NotEsd,
    ParseError,
    SpectrumNegative,
    SpectrumNotReal,
    StepTooLarge,
    TetrahedronViolation,
    UnknownSurface,
    WrongBranch,
)
from .lorentz import (
    NormalForm,
    NormalFormClass,
    lorentz_normal_form,
    normalize_cone_point,
)
from .oracle import (
    IntegratorConfig,
    concurrence_trajectory,
    integrate,
    integrate_path,
    lindblad_rhs,
)
from .sdt import (
    SdtResult,
    sdt_bell_numeric,
    sdt_closed_form,
    sdt_geometric,
    sdt_nondiagonal,
    sdt_numeric,
    tau_star_negative_branch,
    tau_star_positive_branch,
)
from .states import (
    BellPoint,
    ConePoint,
    DensityMatrix,
    RMatrix,
    XStateParams,
    bell_point_clamped,
    bell_point_to_density,
    density_from_r,
    eigenvalue_forms,
    in_tetrahedron,
    is_separable_bell,
    r_from_density,
    xstate_from_r,
    xstate_to_density,
    xstate_to_r,
)
from .surfaces import SURFACE_NAMES, sample_surface
from .verify import run_verification

__version__ = "0.1.0"

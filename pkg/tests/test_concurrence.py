import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esdgeo.concurrence import (
    concurrence_c1,
    concurrence_c1_raw,
    concurrence_c2,
    concurrence_c2_raw,
    concurrence_nondiagonal,
    concurrence_nondiagonal_raw,
    concurrence_xstate,
    wootters_concurrence,
    wootters_concurrence_from_array,
    wootters_raw_from_array,
)
from esdgeo.dynamics import evolve_bell_point, evolve_xstate
from esdgeo.errors import (
    InvalidRepresentative,
    SpectrumNegative,
    SpectrumNotReal,
    WrongBranch,
)
from esdgeo.states import (
    BellPoint,
    DensityMatrix,
    XStateParams,
    bell_point_to_density,
    xstate_density_array,
    xstate_to_density,
)

ALPHA = BellPoint(-0.5, -0.7, -0.3)
# independently bisected first zero of the x3 < 0 closed form at ALPHA
ALPHA_DEATH = 0.6236415896752301


def _nondiag_xstate(x0, x1, k):
    return XStateParams(x0 + k, x1, -x1, x0 - k, -k, k)


def test_singlet_concurrence_is_one():
    assert wootters_concurrence(bell_point_to_density(BellPoint(-1, -1, -1))) == 1.0


def test_maximally_mixed_concurrence_is_zero():
    assert wootters_concurrence(DensityMatrix(np.eye(4, dtype=complex) / 4)) == 0.0


def test_alpha_initial_concurrence():
    # 0.5 * (|x1 + x2| - (1 + x3)) = 0.5 * (1.2 - 0.7)
    assert wootters_concurrence(bell_point_to_density(ALPHA)) == pytest.approx(
        0.25, abs=1e-12
    )


def test_negative_branch_on_singlet_is_pure_exponential():
    b = BellPoint(-1, -1, -1)
    for tau in (0.0, 0.3, 1.0, 4.0):
        assert concurrence_c1(b, tau) == pytest.approx(math.exp(-tau), abs=1e-14)


def test_negative_branch_alpha_values():
    assert concurrence_c1(ALPHA, 0.0) == pytest.approx(0.25, abs=1e-14)
    assert concurrence_c1(ALPHA, 0.6237) == pytest.approx(0.0, abs=1e-4)
    assert concurrence_c1_raw(ALPHA, ALPHA_DEATH) == pytest.approx(0.0, abs=1e-15)


def test_positive_branch_values():
    assert concurrence_c2(BellPoint(1, -1, 1), 0.0) == pytest.approx(1.0)
    assert concurrence_c2_raw(BellPoint(0.8, -0.8, 0.8), math.log(4.5)) == (
        pytest.approx(0.0, abs=1e-10)
    )
    assert concurrence_c2(BellPoint(0, 0, 0), 1.3) == 0.0


def test_branch_guards():
    with pytest.raises(WrongBranch):
        concurrence_c1(BellPoint(0.3, -0.3, 0.2), 1.0)
    with pytest.raises(WrongBranch):
        concurrence_c2(ALPHA, 1.0)


def test_branch_functions_accept_arrays():
    taus = np.linspace(0.0, 3.0, 7)
    vals = concurrence_c1_raw(ALPHA, taus)
    assert vals.shape == taus.shape
    assert vals[0] == pytest.approx(0.25)


def test_nondiagonal_closed_form_values():
    assert concurrence_nondiagonal(1.0, 0.8, 0.5, 0.0) == pytest.approx(0.8)
    assert concurrence_nondiagonal(1.0, 0.0, 0.7, 2.0) == 0.0
    # independently bisected zero for (1, 0.8, 0.5)
    assert concurrence_nondiagonal_raw(1.0, 0.8, 0.5, 0.5859050400392118) == (
        pytest.approx(0.0, abs=1e-12)
    )


def test_nondiagonal_validation():
    with pytest.raises(InvalidRepresentative):
        concurrence_nondiagonal(1.0, 1.5, 0.5, 0.0)
    with pytest.raises(InvalidRepresentative):
        concurrence_nondiagonal(1.0, 0.5, -0.1, 0.0)


def test_closed_forms_match_wootters_along_the_flow():
    rng = np.random.default_rng(17)
    verts = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]], float)
    worst = 0.0
    for _ in range(300):
        p = BellPoint(*(rng.dirichlet((1, 1, 1, 1)) @ verts))
        tau = rng.uniform(0.0, 5.0)
        rho = xstate_density_array(evolve_bell_point(p, tau))
        numeric = wootters_concurrence_from_array(rho)
        closed = (
            concurrence_c1(p, tau) if p.x3 < 0 else concurrence_c2(p, tau)
        )
        worst = max(worst, abs(float(closed) - numeric))
    assert worst < 1e-9


def test_nondiagonal_closed_form_matches_wootters():
    rng = np.random.default_rng(18)
    worst = 0.0
    for _ in range(200):
        x0 = rng.uniform(0.2, 2.0)
        x1 = x0 * rng.uniform(-1.0, 1.0)
        k = rng.uniform(0.05, 2.0)
        tau = rng.uniform(0.0, 4.0)
        evolved = evolve_xstate(_nondiag_xstate(x0, x1, k), tau)
        numeric = wootters_concurrence(xstate_to_density(evolved))
        closed = concurrence_nondiagonal(x0, x1, k, tau)
        worst = max(worst, abs(float(closed) - numeric))
    assert worst < 1e-9


@given(st.floats(0.1, 5.0, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_concurrence_scales_linearly_with_trace(scale):
    rho = bell_point_to_density(ALPHA).entries
    base = wootters_concurrence_from_array(rho)
    scaled = wootters_concurrence_from_array(scale * rho)
    assert scaled == pytest.approx(scale * base, rel=1e-11)


def test_initial_concurrence_equals_plane_distance_on_each_branch():
    rng = np.random.default_rng(19)
    verts = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]], float)
    for _ in range(200):
        p = BellPoint(*(rng.dirichlet((1, 1, 1, 1)) @ verts))
        if p.x3 < 0:
            raw = concurrence_c1_raw(p, 0.0)
            expected = 0.5 * (abs(p.x1 + p.x2) - (1.0 + p.x3))
        else:
            raw = concurrence_c2_raw(p, 0.0)
            expected = 0.5 * (abs(p.x1 - p.x2) - (1.0 - p.x3))
        assert raw == pytest.approx(expected, abs=1e-12)


def test_xstate_closed_form_agrees_with_wootters():
    x = XStateParams(1.0, -0.25, -0.25, -0.5, -0.24, -0.24)
    assert concurrence_xstate(x) == pytest.approx(
        wootters_concurrence(xstate_to_density(x)), abs=1e-12
    )


def test_indefinite_matrix_rejected_by_spectrum_checks():
    # Hermitian but not positive semidefinite: the spin-flip spectrum turns
    # genuinely negative (X-shaped case goes through the cross-check path)
    with pytest.raises(SpectrumNegative):
        wootters_raw_from_array(np.diag([1.0, 0.1, 0.1, -1.0]).astype(complex))
    h2 = np.diag([1.0, 0.1, 0.1, -1.0]).astype(complex)
    h2[0, 1] = h2[1, 0] = 0.05
    with pytest.raises(SpectrumNegative):
        wootters_raw_from_array(h2)


def test_complex_spectrum_rejected():
    h = np.array(
        [
            [0.12573 + 0.0j, -0.333887 - 0.093883j, -0.031656 - 0.24592j,
             -1.110065 + 0.75012j],
            [-0.333887 + 0.093883j, 0.361595 + 0.0j, 0.019289 - 0.379603j,
             0.364145 + 0.065657j],
            [-0.031656 + 0.24592j, 0.019289 + 0.379603j, -0.623274 + 0.0j,
             -0.602292 + 0.043946j],
            [-1.110065 - 0.75012j, 0.364145 - 0.065657j, -0.602292 - 0.043946j,
             -0.732267 + 0.0j],
        ]
    )
    with pytest.raises(SpectrumNotReal):
        wootters_raw_from_array(h)

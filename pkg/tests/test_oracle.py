import math

import numpy as np
import pytest

from esdgeo.dynamics import evolve_xstate
from esdgeo.errors import DomainError, StepTooLarge
from esdgeo.oracle import (
    IntegratorConfig,
    concurrence_trajectory,
    integrate,
    integrate_path,
    lindblad_rhs,
)
from esdgeo.states import (
    BellPoint,
    DensityMatrix,
    XStateParams,
    bell_point_to_density,
    r_array_from_density_array,
    xstate_to_density,
)

SINGLET = bell_point_to_density(BellPoint(-1, -1, -1))
REFERENCE_XSTATE = XStateParams(1.0, -0.25, -0.25, -0.5, -0.24, -0.24)


def test_ground_state_is_stationary():
    ground = np.zeros((4, 4), dtype=complex)
    ground[3, 3] = 1.0
    assert np.max(np.abs(lindblad_rhs(ground))) == 0.0


def test_generator_output_is_hermitian_and_traceless():
    rng = np.random.default_rng(31)
    for _ in range(20):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        out = lindblad_rhs(rho)
        assert abs(np.trace(out)) < 1e-14
        assert np.max(np.abs(out - out.conj().T)) < 1e-14


def test_generator_matches_analytic_rate_at_zero_time():
    # d/dtau of the closed-form parameters at tau = 0:
    # x1' = -x1, x2' = -x2, x3' = -2 x3 - x4 - x5, x4' = -x0 - x4, x5' = -x0 - x5
    for x in (XStateParams(1, -1, -1, -1, 0, 0), REFERENCE_XSTATE):
        rate = r_array_from_density_array(
            lindblad_rhs(xstate_to_density(x, unnormalized=False))
        )
        expected = np.zeros((4, 4))
        expected[1, 1] = -x.x1
        expected[2, 2] = -x.x2
        expected[3, 3] = -2.0 * x.x3 - x.x4 - x.x5
        expected[0, 3] = -x.x0 - x.x4
        expected[3, 0] = -x.x0 - x.x5
        np.testing.assert_allclose(rate, expected, atol=1e-13)


def test_integrate_singlet_to_log_two():
    got = integrate(SINGLET, math.log(2.0))
    expected = xstate_to_density(XStateParams(1, -0.5, -0.5, 0, -0.5, -0.5))
    np.testing.assert_allclose(got.entries, expected.entries, atol=1e-8)


def test_zero_time_returns_same_object():
    assert integrate(SINGLET, 0.0) is SINGLET


def test_integrate_matches_closed_form_at_long_time():
    got = integrate(xstate_to_density(REFERENCE_XSTATE), 5.0)
    expected = xstate_to_density(evolve_xstate(REFERENCE_XSTATE, 5.0))
    assert np.max(np.abs(got.entries - expected.entries)) < 1e-7


def test_trace_preserved_along_trajectory():
    rho = xstate_to_density(REFERENCE_XSTATE)
    for arr in integrate_path(rho, (1.0, 5.0, 10.0)):
        assert abs(np.trace(arr).real - 1.0) < 1e-9


def test_step_bound_enforced():
    with pytest.raises(StepTooLarge):
        IntegratorConfig(step=0.02)
    with pytest.raises(StepTooLarge):
        IntegratorConfig(step=0.0)


def test_fourth_order_convergence():
    tau = 1.0
    expected = xstate_to_density(evolve_xstate(REFERENCE_XSTATE, tau)).entries
    rho0 = xstate_to_density(REFERENCE_XSTATE)
    errors = []
    for step in (1e-2, 5e-3):
        got = integrate(rho0, tau, IntegratorConfig(step=step))
        errors.append(np.max(np.abs(got.entries - expected)))
    ratio = errors[0] / errors[1]
    assert 10.0 < ratio < 26.0  # halving the step cuts the error ~16x


def test_singlet_concurrence_trajectory_is_exponential():
    traj = concurrence_trajectory(SINGLET, 2.0, 5)
    assert traj.shape == (5, 2)
    for tau, conc in traj:
        assert conc == pytest.approx(math.exp(-tau), abs=1e-7)


def test_separable_trajectory_stays_zero():
    mixed = DensityMatrix(np.eye(4, dtype=complex) / 4)
    traj = concurrence_trajectory(mixed, 2.0, 9)
    assert np.all(traj[:, 1] == 0.0)


def test_alpha_trajectory_brackets_its_death_time():
    rho = bell_point_to_density(BellPoint(-0.5, -0.7, -0.3))
    traj = concurrence_trajectory(rho, 2.0, 201)
    assert traj[0, 1] == pytest.approx(0.25, abs=1e-10)
    positive = traj[traj[:, 1] > 0][:, 0]
    zero = traj[traj[:, 1] == 0.0][:, 0]
    # the first zero sample and last positive sample bracket ~0.6236
    assert positive.max() < 0.6236415896752301 < zero.min() + 1e-12
    assert zero.min() - positive.max() == pytest.approx(0.01, abs=1e-12)


def test_sample_count_validated():
    with pytest.raises(DomainError):
        concurrence_trajectory(SINGLET, 1.0, 1)


def test_tau_marks_must_be_nondecreasing():
    with pytest.raises(DomainError):
        integrate_path(SINGLET, (1.0, 0.5))

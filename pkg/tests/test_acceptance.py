"""Acceptance suite: every release criterion, each at its stated tolerance
and runtime budget, printing one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import math
import time

import numpy as np
import pytest

from esdgeo.classify import DynamicalClass, classify_bell_point, classify_cone_point, distances
from esdgeo.cli import main
from esdgeo.concurrence import (
    concurrence_c1,
    concurrence_nondiagonal_raw,
    concurrence_xstate_raw,
    wootters_concurrence_from_array,
    wootters_raw_from_array,
)
from esdgeo.dynamics import evolve_bell_point, evolve_xstate
from esdgeo.lorentz import NormalFormClass, lorentz_normal_form, normalize_cone_point
from esdgeo.oracle import IntegratorConfig, integrate_path
from esdgeo.sdt import (
    sdt_closed_form,
    sdt_geometric,
    sdt_nondiagonal,
    sdt_numeric,
    tau_star_negative_branch,
)
from esdgeo.states import (
    BellPoint,
    ConePoint,
    XStateParams,
    bell_point_clamped,
    bell_point_to_density,
    xstate_to_density,
    xstate_to_r,
)
from esdgeo.verify import (
    formula_equivalence_suite,
    make_rng,
    oracle_equivalence_suite,
    partition_suite,
    run_verification,
    sample_cone_points,
    sample_nondiagonal_reps,
    sample_octahedron_boundary,
    sample_physical_xstates,
    sample_quadratic_surface_entangled,
    sample_tetrahedron,
)

REFERENCE_XSTATE = XStateParams(1.0, -0.25, -0.25, -0.5, -0.24, -0.24)


def _report(number, name, passed, runtime, budget, detail=""):
    status = "PASS" if passed else "FAIL"
    print(
        f"[{status}] criterion {number:02d} {name}: "
        f"{runtime:.3f}s (budget {budget:g}s) {detail}".rstrip()
    )
    assert passed, f"criterion {number:02d} {name} failed: {detail}"
    assert runtime < budget, (
        f"criterion {number:02d} exceeded runtime budget: {runtime:.3f}s >= {budget}s"
    )


def test_criterion_01_sudden_death_time_of_the_reference_point(capsys):
    point = BellPoint(-0.5, -0.7, -0.3)
    sdt_closed_form(point)  # warm up
    start = time.perf_counter()
    result = sdt_closed_form(point)
    dist = distances(point)
    runtime = time.perf_counter() - start

    ok = (
        result.kind is DynamicalClass.ESD
        and abs(result.tau_star - 0.624) <= 1e-3
        and dist.d_p == pytest.approx(0.5, abs=1e-12)
        and dist.d_1 == pytest.approx(0.34, abs=1e-12)
    )
    # same numbers through the command-line surface
    code = main(["classify", "--point", "-0.5,-0.7,-0.3"])
    out = capsys.readouterr().out
    fields = dict(kv.split("=") for kv in out.split())
    ok = ok and code == 0 and fields["class"] == "ESD"
    ok = ok and abs(float(fields["gamma_t"]) - 0.624) <= 1e-3
    with capsys.disabled():
        _report(
            1, "reference-point death time", ok, runtime, 1e-3,
            f"gamma_t={result.tau_star:.6f}",
        )


def test_criterion_02_normal_form_and_original_state_verdict(capsys):
    start = time.perf_counter()
    nf = lorentz_normal_form(xstate_to_r(REFERENCE_XSTATE))
    values_ok = nf.kind is NormalFormClass.DIAGONAL and np.allclose(
        nf.values(), (1.0, -0.304878, -0.304878, -0.829268), atol=1e-5
    )
    rep_point = bell_point_clamped(nf.x1, nf.x2, nf.x3)
    rep_ok = classify_bell_point(rep_point) is DynamicalClass.ESD

    # raw concurrence of the original state stays positive through tau = 60:
    # dense closed-form scan plus the integrated trajectory
    taus = np.linspace(0.0, 60.0, 6001)[1:]
    analytic_min = min(
        concurrence_xstate_raw(evolve_xstate(REFERENCE_XSTATE, t)) for t in taus
    )
    marks = np.linspace(0.0, 60.0, 601)
    states = integrate_path(
        xstate_to_density(REFERENCE_XSTATE), marks, IntegratorConfig()
    )
    oracle_min = min(wootters_raw_from_array(arr) for arr in states[1:])
    runtime = time.perf_counter() - start
    ok = values_ok and rep_ok and analytic_min > 0.0 and oracle_min > 0.0
    with capsys.disabled():
        _report(
            2, "normal form and no finite death of the original", ok, runtime, 1.0,
            f"diag={tuple(round(v, 6) for v in nf.values())} "
            f"analytic_min={analytic_min:.3e} oracle_min={oracle_min:.3e}",
        )


def test_criterion_03_singlet_exponential_law(capsys):
    start = time.perf_counter()
    singlet = BellPoint(-1, -1, -1)
    taus = np.linspace(0.0, 2.0, 50)
    analytic_err = max(
        abs(float(concurrence_c1(singlet, t)) - math.exp(-t)) for t in taus
    )
    states = integrate_path(bell_point_to_density(singlet), taus, IntegratorConfig())
    oracle_err = max(
        abs(wootters_concurrence_from_array(arr) - math.exp(-t))
        for t, arr in zip(taus, states)
    )
    runtime = time.perf_counter() - start
    ok = analytic_err <= 1e-7 and oracle_err <= 1e-6
    with capsys.disabled():
        _report(
            3, "singlet concurrence decays exponentially", ok, runtime, 5.0,
            f"analytic_err={analytic_err:.2e} oracle_err={oracle_err:.2e}",
        )


def test_criterion_04_closed_form_evolution_matches_integrator(capsys):
    start = time.perf_counter()
    suite = oracle_equivalence_suite(make_rng(104), 1000)
    runtime = time.perf_counter() - start
    details = dict(suite.details)
    ok = (
        suite.passed
        and float(details["max_density_diff"]) <= 1e-7
        and float(details["max_concurrence_diff"]) <= 1e-6
    )
    with capsys.disabled():
        _report(
            4, "oracle equivalence on 1000 random X-states", ok, runtime, 60.0,
            " ".join(f"{k}={v}" for k, v in suite.details),
        )


def test_criterion_05_death_time_formulas_agree(capsys):
    start = time.perf_counter()
    suite = formula_equivalence_suite(make_rng(105), 10_000, 1000)
    runtime = time.perf_counter() - start
    with capsys.disabled():
        _report(
            5, "death-time formula equivalence on 11000 points", suite.passed,
            runtime, 120.0, " ".join(f"{k}={v}" for k, v in suite.details),
        )


def test_criterion_06_partition_and_boundary_semantics(capsys):
    start = time.perf_counter()
    rng = make_rng(106)
    suite = partition_suite(rng, 100_000)
    ok = suite.passed

    for p in sample_quadratic_surface_entangled(rng, 500):
        ok = ok and classify_bell_point(p) is DynamicalClass.EAD
    for p in sample_octahedron_boundary(rng, 500):
        ok = ok and classify_bell_point(p) is DynamicalClass.SEPARABLE
    positive_checked = 0
    while positive_checked < 500:
        for row in sample_tetrahedron(rng, 2000):
            p = BellPoint(*row)
            if p.x3 < 0 or classify_bell_point(p) is DynamicalClass.SEPARABLE:
                continue
            vertex_like = 2.0 - abs(p.x1 - p.x2) <= 1e-12
            ok = ok and (
                classify_bell_point(p) is
                (DynamicalClass.EAD if vertex_like else DynamicalClass.ESD)
            )
            positive_checked += 1
            if positive_checked == 500:
                break
    ok = ok and classify_bell_point(BellPoint(1, -1, 1)) is DynamicalClass.EAD
    ok = ok and classify_bell_point(BellPoint(-1, 1, 1)) is DynamicalClass.EAD
    runtime = time.perf_counter() - start
    with capsys.disabled():
        _report(
            6, "partition of 100000 samples and boundary rules", ok, runtime, 30.0,
            " ".join(f"{k}={v}" for k, v in suite.details),
        )


def test_criterion_07_boundary_class_always_dies_suddenly(capsys):
    start = time.perf_counter()
    reps = sample_nondiagonal_reps(make_rng(107), 1000)
    ok = True
    for x0, x1, k in reps:
        result = sdt_nondiagonal(x0, x1, k)
        ok = ok and result.kind is DynamicalClass.ESD
        ok = ok and result.tau_star is not None and 0.0 < result.tau_star < math.inf
        numeric = sdt_numeric(
            lambda t, a=x0, b=x1, c=k: concurrence_nondiagonal_raw(a, b, c, t)
        ).tau_star
        ok = ok and abs(numeric - result.tau_star) <= max(
            1e-9 * result.tau_star, 1e-12
        )
    runtime = time.perf_counter() - start
    with capsys.disabled():
        _report(7, "1000 boundary-class representatives all ESD", ok, runtime, 10.0)


def test_criterion_08_limit_laws_of_the_geometric_death_time(capsys):
    start = time.perf_counter()
    # d_1 -> 0 at fixed d_p: death time grows without bound
    taus = []
    crossed_at = None
    d_1 = 0.1
    while d_1 >= 1e-17:
        tau = tau_star_negative_branch(0.5, d_1)
        taus.append(tau)
        if tau > 20.0:
            crossed_at = d_1
            break
        d_1 /= 10.0
    monotone = all(b > a for a, b in zip(taus, taus[1:]))
    diverges = crossed_at is not None and crossed_at >= 1e-17

    # d_p -> 0 at fixed d_1: death time vanishes
    vanishes = tau_star_negative_branch(1e-8, 0.34) < 1e-8

    # the coordinate route agrees along the same path at moderate d_1
    agree = True
    for m in range(1, 7):
        d_1 = 10.0 ** -m
        s = 1.0 - math.sqrt(0.5 - d_1)  # x1 = x2 = -s, d_p fixed at 0.5
        p = BellPoint(-s, -s, -1.0 + 2.0 * s - 0.5)
        closed = sdt_closed_form(p).tau_star
        geometric = sdt_geometric(p).tau_star
        agree = agree and abs(closed - geometric) <= 1e-9 * closed
    runtime = time.perf_counter() - start
    ok = monotone and diverges and vanishes and agree
    with capsys.disabled():
        _report(
            8, "limit laws of the geometric death time", ok, runtime, 1.0,
            f"tau>20 reached at d_1={crossed_at:g}",
        )


def test_criterion_09_scale_invariance_of_cone_classification(capsys):
    start = time.perf_counter()
    cones = sample_cone_points(make_rng(109), 1000)
    ok = True
    for c in cones:
        base_class = classify_cone_point(c)
        base_tau = None
        if base_class is DynamicalClass.ESD:
            base_tau = sdt_closed_form(normalize_cone_point(c)).tau_star
        for factor in (0.1, 3.0, 42.0):
            scaled = ConePoint(
                factor * c.x0, factor * c.x1, factor * c.x2, factor * c.x3
            )
            ok = ok and classify_cone_point(scaled) is base_class
            if base_tau is not None:
                tau = sdt_closed_form(normalize_cone_point(scaled)).tau_star
                ok = ok and abs(tau - base_tau) <= 1e-10
    runtime = time.perf_counter() - start
    with capsys.disabled():
        _report(9, "cone classification is scale invariant", ok, runtime, 10.0)


def test_criterion_10_determinism_of_verify_and_sweep(capsys, tmp_path):
    start = time.perf_counter()
    first = run_verification(seed=7, count=1000)
    second = run_verification(seed=7, count=1000)
    verify_ok = first.passed and first.render() == second.render()

    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code_a = main(["sweep", "--grid", "51", "--out", str(a)])
    code_b = main(["sweep", "--grid", "51", "--out", str(b)])
    sweep_ok = code_a == code_b == 0 and a.read_bytes() == b.read_bytes()
    runtime = time.perf_counter() - start
    with capsys.disabled():
        _report(
            10, "byte-identical verify and sweep reruns", verify_ok and sweep_ok,
            runtime, 60.0,
        )

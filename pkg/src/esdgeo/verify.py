"""Randomized cross-verification suites and the samplers behind them.

Three suites tie the closed forms to machinery they share nothing with:

* ``oracle_equivalence``  -- analytic X-state evolution against the RK4
  master-equation integrator, both as density matrices and concurrences.
* ``formula_equivalence`` -- the coordinate, geometric and bisection death
  times against each other, on both x3 branches and on boundary-class
  representatives.
* ``partition``           -- every tetrahedron sample lands in exactly one
  dynamical class, boundary points classify per the open/closed boundary
  rules, cone classification is scale independent, and numeric death-time
  searches confirm the class labels on a subsample.

All randomness flows from one named 64-bit generator (PCG64) so a seed
reproduces a report byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import DynamicalClass, classify_bell_point, classify_cone_point
from .concurrence import (
    concurrence_nondiagonal_raw,
    concurrence_xstate,
    raw_branch_concurrence,
    wootters_concurrence_from_array,
)
from .errors import TetrahedronViolation
from .dynamics import evolve_xstate
from .oracle import IntegratorConfig, propagate_batch
from .sdt import sdt_closed_form, sdt_geometric, sdt_nondiagonal, sdt_numeric
from .states import BellPoint, ConePoint, XStateParams, xstate_density_array
from .stateio import fmt

__all__ = [
    "RNG_NAME",
    "SuiteResult",
    "VerificationReport",
    "run_verification",
    "sample_tetrahedron",
    "sample_bell_points",
    "sample_esd_points",
    "sample_physical_xstates",
    "sample_nondiagonal_reps",
    "sample_cone_points",
    "sample_quadratic_surface_entangled",
    "sample_octahedron_boundary",
]

RNG_NAME = "PCG64"

# rows are the Bell-basis weights' vertices: mixing weights map linearly
# onto tetrahedron coordinates
_VERTICES = np.array(
    [[-1.0, -1.0, -1.0], [-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]]
)

ORACLE_DENSITY_TOL = 1e-7
ORACLE_CONCURRENCE_TOL = 1e-6
FORMULA_REL_TOL = 1e-9
FORMULA_ABS_FLOOR = 1e-12
ORACLE_TAUS = (0.1, 0.5, 1.0, 2.0, 5.0)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------

def sample_tetrahedron(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform points of the tetrahedron via Bell-basis mixing weights."""
    return rng.dirichlet((1.0, 1.0, 1.0, 1.0), size=n) @ _VERTICES


def sample_bell_points(rng: np.random.Generator, n: int) -> list:
    return [BellPoint(*row) for row in sample_tetrahedron(rng, n)]


def sample_esd_points(rng: np.random.Generator, n: int, branch: str) -> list:
    """Rejection-sample ESD points with x3 < 0 (``negative``) or x3 >= 0
    (``positive``)."""
    want_negative = branch == "negative"
    out = []
    while len(out) < n:
        for row in sample_tetrahedron(rng, max(4 * (n - len(out)), 16)):
            p = BellPoint(*row)
            if (p.x3 < 0.0) != want_negative:
                continue
            if classify_bell_point(p) is DynamicalClass.ESD:
                out.append(p)
                if len(out) == n:
                    break
    return out


def sample_physical_xstates(rng: np.random.Generator, n: int) -> list:
    """Random normalized physical X-states (uniform diagonal simplex,
    coherences uniform within the positivity disks)."""
    out = []
    for _ in range(n):
        a, b, c, d = rng.dirichlet((1.0, 1.0, 1.0, 1.0))
        w = rng.uniform(-1.0, 1.0) * np.sqrt(a * d)
        z = rng.uniform(-1.0, 1.0) * np.sqrt(b * c)
        out.append(
            XStateParams(
                1.0,
                2.0 * (w + z),
                2.0 * (z - w),
                a - b - c + d,
                a - b + c - d,
                a + b - c - d,
            )
        )
    return out


def sample_nondiagonal_reps(rng: np.random.Generator, n: int) -> list:
    """Random boundary-class parameter triples (x0, x1, k) with x1 bounded
    away from zero so death times stay well conditioned."""
    out = []
    for _ in range(n):
        x0 = rng.uniform(0.2, 2.0)
        x1 = x0 * rng.uniform(0.05, 1.0) * rng.choice((-1.0, 1.0))
        k = rng.uniform(0.05, 2.0)
        out.append((x0, x1, k))
    return out


def sample_cone_points(rng: np.random.Generator, n: int) -> list:
    pts = sample_tetrahedron(rng, n)
    scales = rng.uniform(0.1, 3.0, size=n)
    return [
        ConePoint(s, s * row[0], s * row[1], s * row[2])
        for s, row in zip(scales, pts)
    ]


def sample_quadratic_surface_entangled(rng: np.random.Generator, n: int) -> list:
    """Entangled points exactly on the asymptotic-death surface."""
    out = []
    while len(out) < n:
        x1 = rng.uniform(-1.0, 1.0)
        x2 = rng.uniform(-1.0, 1.0)
        x3 = 0.25 * (x1 + x2) ** 2 - 1.0
        try:
            p = BellPoint(x1, x2, x3)
        except TetrahedronViolation:
            continue
        if abs(x1) + abs(x2) + abs(x3) > 1.0 + 1e-9:
            out.append(p)
    return out


def sample_octahedron_boundary(rng: np.random.Generator, n: int) -> list:
    """Points with |x1| + |x2| + |x3| = 1 exactly (up to rounding)."""
    weights = rng.dirichlet((1.0, 1.0, 1.0), size=n)
    signs = rng.choice((-1.0, 1.0), size=(n, 3))
    return [BellPoint(*(w * s)) for w, s in zip(weights, signs)]


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    passed: bool
    details: tuple  # ordered (key, formatted value) pairs

    def render(self) -> str:
        parts = [f"suite={self.name}", f"trials={self.trials}"]
        parts += [f"{key}={value}" for key, value in self.details]
        parts.append(f"result={'pass' if self.passed else 'FAIL'}")
        return " ".join(parts)


def oracle_equivalence_suite(rng: np.random.Generator, states: int) -> SuiteResult:
    xs = sample_physical_xstates(rng, states)
    vecs = np.stack([xstate_density_array(x).ravel() for x in xs], axis=1)
    config = IntegratorConfig()
    max_density = 0.0
    max_conc = 0.0
    prev = 0.0
    for mark in ORACLE_TAUS:
        vecs = propagate_batch(vecs, mark - prev, config)
        prev = mark
        for i, x in enumerate(xs):
            evolved = evolve_xstate(x, mark)
            numeric = vecs[:, i].reshape(4, 4)
            max_density = max(
                max_density,
                float(np.max(np.abs(xstate_density_array(evolved) - numeric))),
            )
            max_conc = max(
                max_conc,
                abs(concurrence_xstate(evolved) - wootters_concurrence_from_array(numeric)),
            )
    passed = max_density <= ORACLE_DENSITY_TOL and max_conc <= ORACLE_CONCURRENCE_TOL
    return SuiteResult(
        "oracle_equivalence",
        states * len(ORACLE_TAUS),
        passed,
        (
            ("max_density_diff", fmt(max_density)),
            ("max_concurrence_diff", fmt(max_conc)),
        ),
    )


def _spread_margin(*values) -> float:
    """Spread of death-time estimates over the allowed disagreement:
    1e-9 relative with a 1e-12 absolute floor (the floor is what the
    bisection route guarantees; a tau* below ~1e-3 cannot carry 1e-9
    relative accuracy through order-one logarithm arguments in doubles)."""
    lo, hi = min(values), max(values)
    return (hi - lo) / max(FORMULA_REL_TOL * abs(hi), FORMULA_ABS_FLOOR)


def formula_equivalence_suite(
    rng: np.random.Generator, esd_points: int, nondiagonal: int
) -> SuiteResult:
    points = sample_esd_points(rng, esd_points // 2, "negative")
    points += sample_esd_points(rng, esd_points - esd_points // 2, "positive")
    worst = 0.0
    for p in points:
        closed = sdt_closed_form(p).tau_star
        geometric = sdt_geometric(p).tau_star
        numeric = sdt_numeric(raw_branch_concurrence(p)).tau_star
        worst = max(worst, _spread_margin(closed, geometric, numeric))
    for x0, x1, k in sample_nondiagonal_reps(rng, nondiagonal):
        quadratic = sdt_nondiagonal(x0, x1, k).tau_star
        numeric = sdt_numeric(
            lambda t, a=x0, b=x1, c=k: concurrence_nondiagonal_raw(a, b, c, t)
        ).tau_star
        worst = max(worst, _spread_margin(quadratic, numeric))
    passed = worst <= 1.0
    return SuiteResult(
        "formula_equivalence",
        len(points) + nondiagonal,
        passed,
        (("max_spread_over_allowed", fmt(worst)),),
    )


def partition_suite(rng: np.random.Generator, samples: int) -> SuiteResult:
    violations = 0

    counts = {cls: 0 for cls in DynamicalClass}
    for row in sample_tetrahedron(rng, samples):
        counts[classify_bell_point(BellPoint(*row))] += 1
    if sum(counts.values()) != samples:
        violations += 1

    boundary = max(16, samples // 100)
    for p in sample_quadratic_surface_entangled(rng, boundary):
        if classify_bell_point(p) is not DynamicalClass.EAD:
            violations += 1
    for p in sample_octahedron_boundary(rng, boundary):
        if classify_bell_point(p) is not DynamicalClass.SEPARABLE:
            violations += 1

    for c in sample_cone_points(rng, boundary):
        normalized = BellPoint(c.x1 / c.x0, c.x2 / c.x0, c.x3 / c.x0)
        if classify_cone_point(c) is not classify_bell_point(normalized):
            violations += 1

    # numeric confirmation of labels on a subsample
    confirm = max(8, samples // 1000)
    for p in sample_esd_points(rng, confirm, "negative"):
        if sdt_numeric(raw_branch_concurrence(p)).kind is not DynamicalClass.ESD:
            violations += 1
    ead_checked = 0
    while ead_checked < confirm:
        for row in sample_tetrahedron(rng, 4 * confirm):
            p = BellPoint(*row)
            if classify_bell_point(p) is DynamicalClass.EAD:
                if sdt_numeric(raw_branch_concurrence(p)).kind is not DynamicalClass.EAD:
                    violations += 1
                ead_checked += 1
                if ead_checked == confirm:
                    break

    return SuiteResult(
        "partition",
        samples,
        violations == 0,
        (
            ("separable", str(counts[DynamicalClass.SEPARABLE])),
            ("esd", str(counts[DynamicalClass.ESD])),
            ("ead", str(counts[DynamicalClass.EAD])),
            ("violations", str(violations)),
        ),
    )


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    count: int
    suites: tuple

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def render(self) -> str:
        lines = [
            "verification report",
            f"rng={RNG_NAME} seed={self.seed} count={self.count}",
        ]
        lines += [s.render() for s in self.suites]
        lines.append(f"overall={'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def run_verification(seed: int = 0, count: int = 1000) -> VerificationReport:
    """Run all suites; ``count`` scales the trial numbers (the default
    reproduces the full published counts: count oracle states, 10*count
    death-time points, 100*count partition samples)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = make_rng(seed)
    suites = (
        oracle_equivalence_suite(rng, count),
        formula_equivalence_suite(rng, 10 * count, count),
        partition_suite(rng, 100 * count),
    )
    return VerificationReport(seed, count, suites)

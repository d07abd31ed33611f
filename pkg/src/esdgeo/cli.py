"""Command-line driver.

Commands::

    classify     dynamical class, distances and death time of a point
    evolve       closed-form or integrated trajectory as CSV
    sweep        classification/death-time map over a coordinate grid
    normal-form  local-filtering normal form of a state
    verify       randomized cross-verification suites
    surface      boundary-surface point clouds as CSV

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 domain error (outside the tetrahedron, unphysical state, ...).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import __version__
from .classify import DynamicalClass, classify_cone_point, classify_nondiagonal, distances
from .concurrence import concurrence_xstate, wootters_concurrence_from_array, wootters_raw_from_array
from .dynamics import check_tau, evolve_xstate
from .errors import DomainError, InvalidState, ParseError
from .lorentz import NormalFormClass, lorentz_normal_form, normalize_cone_point
from .oracle import IntegratorConfig, integrate_path
from .sdt import sdt_closed_form, sdt_nondiagonal
from .states import (
    BellPoint,
    ConePoint,
    DensityMatrix,
    RMatrix,
    XStateParams,
    bell_point_clamped,
    bell_point_to_density,
    density_from_r,
    in_tetrahedron,
    r_from_density,
    xstate_density_array,
    xstate_from_r,
    xstate_to_density,
    xstate_to_r,
)
from .stateio import fmt, load_state
from .surfaces import surface_rows
from .verify import run_verification

VERDICT_TAU_MAX = 60.0
VERDICT_SAMPLES = 601

# flags whose value may begin with a negative number; argparse would take
# "-0.5,-0.7,-0.3" for an option string, so such pairs are merged to
# "--flag=value" before parsing
_VALUE_FLAGS = ("--point", "--cone", "--tau", "--slice", "--seed")
_NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d)")


def _merge_negative_values(argv: list) -> list:
    out = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if (
            token in _VALUE_FLAGS
            and i + 1 < len(argv)
            and _NEGATIVE_VALUE.match(argv[i + 1])
        ):
            out.append(f"{token}={argv[i + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def _parse_floats(text: str, count: int, what: str) -> list:
    parts = text.split(",")
    if len(parts) != count:
        raise ParseError(f"{what} needs {count} comma-separated values, got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"bad {what} value in {text!r}") from exc
    if not all(np.isfinite(values)):
        raise ParseError(f"{what} values must be finite: {text!r}")
    return values


def _emit(lines: list, out_path: str | None):
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def _bell_point_from_state(obj) -> BellPoint:
    if isinstance(obj, BellPoint):
        return obj
    if isinstance(obj, DensityMatrix):
        obj = r_from_density(obj)
    if isinstance(obj, XStateParams):
        obj = xstate_to_r(obj)
    arr = obj.entries
    off = arr - np.diag(np.diag(arr))
    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(off)) > 1e-10 * scale:
        raise DomainError(
            "state is not Bell-diagonal; run normal-form to obtain its "
            "diagonal representative first"
        )
    x0 = arr[0, 0]
    if x0 <= 1e-12:
        raise DomainError(f"state has nonpositive weight x0 = {x0}")
    return bell_point_clamped(arr[1, 1] / x0, arr[2, 2] / x0, arr[3, 3] / x0)


def cmd_classify(args) -> int:
    chosen = [v for v in (args.point, args.cone, args.state) if v is not None]
    if len(chosen) != 1:
        raise ParseError("classify needs exactly one of --point, --cone, --state")
    if args.point is not None:
        point = BellPoint(*_parse_floats(args.point, 3, "--point"))
    elif args.cone is not None:
        cone = ConePoint(*_parse_floats(args.cone, 4, "--cone"))
        classify_cone_point(cone)  # validates normalizability
        point = normalize_cone_point(cone)
    else:
        point = _bell_point_from_state(load_state(args.state))

    result = sdt_closed_form(point)
    dist = distances(point)
    branch_key, branch_val = ("d_1", dist.d_1) if point.x3 < 0 else ("d_2", dist.d_2)

    if args.json:
        payload = {
            "class": result.kind.value,
            "gamma_t": result.tau_star,
            "d_p": dist.d_p,
            "d_1": dist.d_1,
            "d_2": dist.d_2,
        }
        _emit([json.dumps(payload)], args.out)
        return 0

    parts = [f"class={result.kind.value}"]
    if result.kind is DynamicalClass.ESD:
        parts.append(f"gamma_t={fmt(result.tau_star)}")
    if result.kind is not DynamicalClass.SEPARABLE:
        parts.append(f"d_p={fmt(dist.d_p)}")
        parts.append(f"{branch_key}={fmt(branch_val)}")
    _emit([" ".join(parts)], args.out)
    return 0


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------

def _xstate_from_any(obj) -> XStateParams:
    if isinstance(obj, XStateParams):
        return obj
    if isinstance(obj, BellPoint):
        return XStateParams(1.0, obj.x1, obj.x2, obj.x3, 0.0, 0.0)
    if isinstance(obj, DensityMatrix):
        obj = r_from_density(obj)
    return xstate_from_r(obj)  # raises InvalidState for non-X input


def _density_from_any(obj) -> DensityMatrix:
    if isinstance(obj, DensityMatrix):
        return obj
    if isinstance(obj, BellPoint):
        return bell_point_to_density(obj)
    if isinstance(obj, XStateParams):
        return xstate_to_density(obj)
    return density_from_r(obj)


def cmd_evolve(args) -> int:
    check_tau(args.tau)
    if args.samples < 2:
        raise ParseError(f"--samples must be >= 2, got {args.samples}")
    obj = load_state(args.state)
    grid = np.linspace(0.0, args.tau, args.samples)

    if not args.oracle:
        params = _xstate_from_any(obj)
        lines = ["tau,x0,x1,x2,x3,x4,x5,concurrence"]
        for t in grid:
            p = evolve_xstate(params, t)
            fields = [fmt(t)] + [fmt(v) for v in p.as_tuple()]
            fields.append(fmt(concurrence_xstate(p)))
            lines.append(",".join(fields))
        _emit(lines, args.out)
        return 0

    rho0 = _density_from_any(obj)
    states = integrate_path(rho0, grid, IntegratorConfig())
    lines = ["tau,concurrence"]
    for t, arr in zip(grid, states):
        lines.append(f"{fmt(t)},{fmt(wootters_concurrence_from_array(arr))}")
    try:
        params = _xstate_from_any(obj)
    except InvalidState:
        params = None
    if params is not None:
        max_diff = 0.0
        for t, arr in zip(grid, states):
            analytic = xstate_density_array(evolve_xstate(params, t))
            max_diff = max(max_diff, float(np.max(np.abs(analytic - arr))))
        lines.append(f"# max_abs_diff={fmt(max_diff)}")
    _emit(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _parse_slice(text: str) -> tuple:
    m = re.fullmatch(r"(x[123])=(.+)", text)
    if not m:
        raise ParseError(f"--slice must look like x3=-0.5, got {text!r}")
    try:
        value = float(m.group(2))
    except ValueError as exc:
        raise ParseError(f"bad slice value in {text!r}") from exc
    if not np.isfinite(value):
        raise ParseError("slice value must be finite")
    return m.group(1), value


def cmd_sweep(args) -> int:
    if not (2 <= args.grid <= 401):
        raise ParseError(f"--grid must be in [2, 401], got {args.grid}")
    axes = {"x1": None, "x2": None, "x3": None}
    if args.slice:
        name, value = _parse_slice(args.slice)
        axes[name] = value
    grid = np.linspace(-1.0, 1.0, args.grid)

    def axis_values(name):
        return (axes[name],) if axes[name] is not None else grid

    lines = ["x1,x2,x3,class,gamma_t,d_p,d_1,d_2"]
    for x1 in axis_values("x1"):
        for x2 in axis_values("x2"):
            for x3 in axis_values("x3"):
                if not in_tetrahedron((x1, x2, x3)):
                    continue
                p = BellPoint(x1, x2, x3)
                result = sdt_closed_form(p)
                d = distances(p)
                if result.kind is DynamicalClass.ESD:
                    gamma_t = fmt(result.tau_star)
                elif result.kind is DynamicalClass.EAD:
                    gamma_t = "inf"
                else:
                    gamma_t = ""
                lines.append(
                    ",".join(
                        [
                            fmt(x1), fmt(x2), fmt(x3),
                            result.kind.value, gamma_t,
                            fmt(d.d_p), fmt(d.d_1), fmt(d.d_2),
                        ]
                    )
                )
    _emit(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# normal-form
# ---------------------------------------------------------------------------

def _rmatrix_from_any(obj) -> RMatrix:
    if isinstance(obj, RMatrix):
        return obj
    if isinstance(obj, DensityMatrix):
        return r_from_density(obj)
    if isinstance(obj, XStateParams):
        return xstate_to_r(obj)
    return RMatrix(np.diag([1.0, obj.x1, obj.x2, obj.x3]))


def _representative_death(nf):
    """Dynamical class and death time of the normal-form representative."""
    if nf.kind is NormalFormClass.APEX:
        return DynamicalClass.SEPARABLE, None
    if nf.kind is NormalFormClass.NONDIAGONAL:
        if classify_nondiagonal(nf.x0, nf.x1, nf.k) is DynamicalClass.SEPARABLE:
            return DynamicalClass.SEPARABLE, None
        res = sdt_nondiagonal(nf.x0, nf.x1, nf.k)
        return res.kind, res.tau_star
    point = bell_point_clamped(nf.x1, nf.x2, nf.x3)
    res = sdt_closed_form(point)
    return res.kind, res.tau_star


def _original_verdict(rho0: DensityMatrix) -> tuple:
    """Scan the integrated raw concurrence of the original state on
    (0, tau_max]; returns (died, tau_of_first_zero_or_None, min_raw)."""
    grid = np.linspace(0.0, VERDICT_TAU_MAX, VERDICT_SAMPLES)
    states = integrate_path(rho0, grid, IntegratorConfig())
    min_raw = np.inf
    for t, arr in zip(grid[1:], states[1:]):
        raw = wootters_raw_from_array(arr)
        min_raw = min(min_raw, raw)
        if raw <= 0.0:
            return True, float(t), float(min_raw)
    return False, None, float(min_raw)


def cmd_normal_form(args) -> int:
    obj = load_state(args.state)
    r = _rmatrix_from_any(obj)
    nf = lorentz_normal_form(r)

    if args.json:
        payload = {
            "class": nf.kind.value,
            "x0": nf.x0, "x1": nf.x1, "x2": nf.x2, "x3": nf.x3,
            "k": nf.k,
            "scale": nf.scale,
        }
    lines = []
    if nf.kind is NormalFormClass.DIAGONAL:
        diag = ",".join(fmt(v) for v in nf.values())
        lines.append(f"class=Diagonal scale={fmt(nf.scale)} diag({diag})")
    elif nf.kind is NormalFormClass.NONDIAGONAL:
        lines.append(
            f"class=NonDiagonal scale={fmt(nf.scale)} "
            f"x0={fmt(nf.x0)} x1={fmt(nf.x1)} x2={fmt(nf.x2)} x3={fmt(nf.x3)} "
            f"k={fmt(nf.k)}"
        )
    else:
        lines.append("class=Apex")

    if args.classify:
        rep_kind, rep_tau = _representative_death(nf)
        rep_line = f"representative={rep_kind.value}"
        if rep_tau is not None:
            rep_line += f" representative_gamma_t={fmt(rep_tau)}"
        lines.append(rep_line)
        died, tau_zero, min_raw = _original_verdict(_density_from_any(obj))
        if died:
            lines.append(
                f"original_verdict=raw concurrence reaches zero near "
                f"tau={fmt(tau_zero)}"
            )
        else:
            lines.append(
                "original_verdict=no finite death time detected "
                f"(raw concurrence > 0 through tau={fmt(VERDICT_TAU_MAX)}, "
                f"min {fmt(min_raw)})"
            )
        if args.json:
            payload["representative_class"] = rep_kind.value
            payload["representative_gamma_t"] = rep_tau
            payload["original_died_by_tau_max"] = died
            payload["original_first_zero_tau"] = tau_zero

    if args.json:
        _emit([json.dumps(payload)], args.out)
    else:
        _emit(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify / surface
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    report = run_verification(seed=args.seed, count=args.count)
    _emit(report.render().split("\n"), args.out)
    return 0 if report.passed else 1


def cmd_surface(args) -> int:
    lines = ["x1,x2,x3,surface_name"]
    for x1, x2, x3, name in surface_rows(args.name, args.resolution):
        lines.append(f"{fmt(x1)},{fmt(x2)},{fmt(x3)},{name}")
    _emit(lines, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esdgeo",
        description=(
            "Disentanglement dynamics of two-qubit states under independent "
            "amplitude damping: classification, death times, normal forms."
        ),
    )
    parser.add_argument("--version", action="version", version=f"esdgeo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a point and report its death time")
    c.add_argument("--point", help="Bell coordinates x1,x2,x3")
    c.add_argument("--cone", help="cone coordinates x0,x1,x2,x3")
    c.add_argument("--state", help="JSON state file")
    c.add_argument("--json", action="store_true", help="machine-readable output")
    c.add_argument("--out", help="write to file instead of stdout")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("evolve", help="trajectory CSV (closed form or integrator)")
    e.add_argument("--state", required=True, help="JSON state file")
    e.add_argument("--tau", required=True, type=float, help="final dimensionless time")
    e.add_argument("--samples", type=int, default=101, help="grid points incl. tau=0")
    e.add_argument(
        "--oracle",
        action="store_true",
        help="integrate the master equation instead of the closed form",
    )
    e.add_argument("--out", help="write to file instead of stdout")
    e.set_defaults(func=cmd_evolve)

    s = sub.add_parser("sweep", help="grid map of classes and death times")
    s.add_argument("--grid", required=True, type=int, help="points per axis (2..401)")
    s.add_argument("--slice", help="fix one axis, e.g. x3=-0.5")
    s.add_argument("--out", help="write to file instead of stdout")
    s.set_defaults(func=cmd_sweep)

    n = sub.add_parser("normal-form", help="local-filtering normal form of a state")
    n.add_argument("--state", required=True, help="JSON state file")
    n.add_argument(
        "--classify",
        action="store_true",
        help="also classify the representative and scan the original state",
    )
    n.add_argument("--json", action="store_true", help="machine-readable output")
    n.add_argument("--out", help="write to file instead of stdout")
    n.set_defaults(func=cmd_normal_form)

    v = sub.add_parser("verify", help="run the randomized verification suites")
    v.add_argument("--seed", type=int, default=0, help="RNG seed (PCG64)")
    v.add_argument("--count", type=int, default=1000, help="trial scale factor")
    v.add_argument("--out", help="write to file instead of stdout")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("surface", help="boundary-surface point cloud CSV")
    f.add_argument("--name", required=True, help="surface name")
    f.add_argument("--resolution", type=int, default=41, help="grid points per axis")
    f.add_argument("--out", help="write to file instead of stdout")
    f.set_defaults(func=cmd_surface)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()

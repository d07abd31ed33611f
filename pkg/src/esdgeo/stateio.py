"""JSON state files and CSV formatting.

State files carry one object::

    {"kind": "density" | "rmatrix" | "bell_point" | "xstate",
     "data": ...,
     "unnormalized": false}        # optional, density only

``data`` is a 4x4 nested array for matrices (complex entries written as
[re, im] pairs), [x1, x2, x3] for a Bell point and [x0..x5] for an X-state.
Parsers reject NaN and infinities.

CSV fields are written with 12 significant digits and no locale-dependent
formatting.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import ParseError
from .states import BellPoint, DensityMatrix, RMatrix, XStateParams

__all__ = [
    "fmt",
    "state_to_json",
    "state_from_json",
    "load_state",
    "dump_state",
]


def fmt(value: float) -> str:
    """12-significant-digit, locale-independent number formatting."""
    return format(float(value), ".12g")


def _reject_constant(token: str):
    raise ParseError(f"non-finite JSON value {token!r} rejected")


def _finite(value) -> float:
    out = float(value)
    if not math.isfinite(out):
        raise ParseError(f"non-finite value {value!r} in state file")
    return out


def _complex_matrix(data) -> np.ndarray:
    arr = np.empty((4, 4), dtype=complex)
    if len(data) != 4:
        raise ParseError("matrix data must have 4 rows")
    for i, row in enumerate(data):
        if len(row) != 4:
            raise ParseError("matrix data must have 4 columns")
        for j, cell in enumerate(row):
            if isinstance(cell, (list, tuple)):
                if len(cell) != 2:
                    raise ParseError("complex entries are [re, im] pairs")
                arr[i, j] = complex(_finite(cell[0]), _finite(cell[1]))
            else:
                arr[i, j] = _finite(cell)
    return arr


def _real_matrix(data) -> np.ndarray:
    arr = np.empty((4, 4), dtype=float)
    if len(data) != 4:
        raise ParseError("matrix data must have 4 rows")
    for i, row in enumerate(data):
        if len(row) != 4:
            raise ParseError("matrix data must have 4 columns")
        for j, cell in enumerate(row):
            arr[i, j] = _finite(cell)
    return arr


def state_from_json(text: str):
    """Parse a state file into the matching domain object."""
    try:
        payload = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "kind" not in payload or "data" not in payload:
        raise ParseError('state file must be {"kind": ..., "data": ...}')
    kind = payload["kind"]
    data = payload["data"]
    if kind == "density":
        return DensityMatrix(
            _complex_matrix(data), unnormalized=bool(payload.get("unnormalized", False))
        )
    if kind == "rmatrix":
        return RMatrix(_real_matrix(data))
    if kind == "bell_point":
        if len(data) != 3:
            raise ParseError("bell_point data must be [x1, x2, x3]")
        return BellPoint(*(_finite(v) for v in data))
    if kind == "xstate":
        if len(data) != 6:
            raise ParseError("xstate data must be [x0, x1, x2, x3, x4, x5]")
        return XStateParams(*(_finite(v) for v in data))
    raise ParseError(f"unknown state kind {kind!r}")


def state_to_json(state) -> str:
    """Serialize a domain object to the state-file format."""
    if isinstance(state, DensityMatrix):
        data = [
            [[cell.real, cell.imag] for cell in row] for row in state.entries.tolist()
        ]
        payload = {"kind": "density", "data": data}
        if state.unnormalized:
            payload["unnormalized"] = True
    elif isinstance(state, RMatrix):
        payload = {"kind": "rmatrix", "data": state.entries.tolist()}
    elif isinstance(state, BellPoint):
        payload = {"kind": "bell_point", "data": list(state.as_tuple())}
    elif isinstance(state, XStateParams):
        payload = {"kind": "xstate", "data": list(state.as_tuple())}
    else:
        raise ParseError(f"cannot serialize object of type {type(state).__name__}")
    return json.dumps(payload)


def load_state(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return state_from_json(handle.read())


def dump_state(state, path: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(state_to_json(state) + "\n")

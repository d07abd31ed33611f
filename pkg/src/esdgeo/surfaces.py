"""Point clouds of the boundary surfaces of the classification geometry.

All surfaces are emitted in Bell-point coordinates (x1, x2, x3):

* ``tetrahedron``    -- the four faces of the state tetrahedron
* ``octahedron``     -- the separability boundary |x1| + |x2| + |x3| = 1
* ``quadratic``      -- the asymptotic-death surface (x1+x2)^2/4 - 1 = x3
* ``cd_planes``      -- the planes |x1 - x2| = 2 (only C and D survive
                        clipping to the tetrahedron)
* ``cone_separable`` -- x0 = |x1|+|x2|+|x3| sliced at x0 = 1 (octahedron)
* ``cone_ead``       -- x0 + x3 = (x1+x2)^2/(4 x0) sliced at x0 = 1
                        (quadratic surface)

The nontrivial surfaces are graphs over (x1, x2) (the vertical cd planes
are graphs over (x1, x3)); each is sampled on a uniform grid and clipped to
the tetrahedron last.  Every emitted point satisfies its surface equation
to 1e-12 by construction.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, UnknownSurface
from .states import in_tetrahedron

__all__ = ["SURFACE_NAMES", "sample_surface", "surface_rows"]

SURFACE_NAMES = (
    "tetrahedron",
    "octahedron",
    "quadratic",
    "cd_planes",
    "cone_separable",
    "cone_ead",
)


def _clip(points) -> np.ndarray:
    kept = [p for p in points if in_tetrahedron(p)]
    if not kept:
        return np.empty((0, 3))
    return np.array(kept)


def _dedupe(points: np.ndarray) -> np.ndarray:
    seen = set()
    rows = []
    for p in points:
        key = (p[0] + 0.0, p[1] + 0.0, p[2] + 0.0)
        if key not in seen:
            seen.add(key)
            rows.append(key)
    return np.array(rows) if rows else np.empty((0, 3))


def _tetrahedron(grid: np.ndarray) -> np.ndarray:
    # each face solves one Bell-basis eigenvalue form for x3; sums are
    # grouped so evaluation is exactly symmetric under x1 <-> x2
    faces = (
        lambda x1, x2: 1.0 - (x1 + x2),
        lambda x1, x2: x1 - x2 - 1.0,
        lambda x1, x2: x2 - x1 - 1.0,
        lambda x1, x2: 1.0 + (x1 + x2),
    )
    points = []
    for face in faces:
        for x1 in grid:
            for x2 in grid:
                points.append((x1, x2, face(x1, x2)))
    return _dedupe(_clip(points))


def _octahedron(grid: np.ndarray) -> np.ndarray:
    points = []
    for x1 in grid:
        for x2 in grid:
            reach = 1.0 - (abs(x1) + abs(x2))
            if reach < 0.0:
                continue
            points.append((x1, x2, reach))
            points.append((x1, x2, -reach))
    return _dedupe(_clip(points))


def _quadratic(grid: np.ndarray) -> np.ndarray:
    points = [
        (x1, x2, 0.25 * (x1 + x2) ** 2 - 1.0) for x1 in grid for x2 in grid
    ]
    return _dedupe(_clip(points))


def _cd_planes(grid: np.ndarray) -> np.ndarray:
    points = []
    for offset in (-2.0, 2.0):
        for x1 in grid:
            for x3 in grid:
                points.append((x1, x1 + offset, x3))
    return _dedupe(_clip(points))


def sample_surface(which: str, resolution: int) -> np.ndarray:
    """Sample a named boundary surface on a grid with ``resolution`` points
    per parameter axis; returns an (n, 3) array clipped to the tetrahedron."""
    if which not in SURFACE_NAMES:
        raise UnknownSurface(
            f"unknown surface {which!r}; choose one of {', '.join(SURFACE_NAMES)}"
        )
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    grid = np.linspace(-1.0, 1.0, resolution)
    if which == "tetrahedron":
        return _tetrahedron(grid)
    if which in ("octahedron", "cone_separable"):
        return _octahedron(grid)
    if which in ("quadratic", "cone_ead"):
        return _quadratic(grid)
    return _cd_planes(grid)


def surface_rows(which: str, resolution: int) -> list:
    """(x1, x2, x3, surface_name) tuples for CSV emission."""
    return [
        (p[0], p[1], p[2], which) for p in sample_surface(which, resolution)
    ]

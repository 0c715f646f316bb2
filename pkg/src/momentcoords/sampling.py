"""Seeded random geometry and point generators shared by checks and tests."""

from __future__ import annotations

import numpy as np

from .geometry import (
    Hexahedron,
    NodeSet1D,
    Quadrilateral,
    classify_point_quad,
    hex_violations,
    quad_violations,
)

_CUBE = np.array(
    [
        (1, 1, 1),
        (1, 1, -1),
        (1, -1, -1),
        (1, -1, 1),
        (-1, 1, 1),
        (-1, 1, -1),
        (-1, -1, -1),
        (-1, -1, 1),
    ],
    dtype=float,
)

# Outward normals of the cube's faces in connectivity order, used as the
# seed for the supporting-plane generator.
_CUBE_NORMALS = np.array(
    [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    dtype=float,
)


def _boundary_distance_quad(quad, p):
    v = quad.vertices
    best = np.inf
    for i in range(4):
        a, b = v[i], v[(i + 1) % 4]
        e = b - a
        t = float((p - a) @ e) / float(e @ e)
        t = min(max(t, 0.0), 1.0)
        best = min(best, float(np.linalg.norm(p - (a + t * e))))
    return best


def interior_points_quad(quad: Quadrilateral, n: int, rng, margin: float = 1e-5):
    """n uniform interior points, kept margin * diameter away from the
    boundary (the local mean value formula loses accuracy right at it).

    Raises ValueError when the acceptance rate collapses (e.g. a sliver
    thinner than the margin) instead of looping forever.
    """
    lo = quad.vertices.min(axis=0)
    hi = quad.vertices.max(axis=0)
    keep = margin * quad.diameter
    out = []
    attempts = 0
    budget = 2000 * (n + 10)
    while len(out) < n:
        attempts += 1
        if attempts > budget:
            raise ValueError(
                f"could not sample {n} interior points (margin {margin:g}"
                " too large for this geometry?)"
            )
        p = rng.uniform(lo, hi)
        if classify_point_quad(quad, p).kind != "interior":
            continue
        if _boundary_distance_quad(quad, p) < keep:
            continue
        out.append(p)
    return np.array(out)


def interior_points_hex(hexa: Hexahedron, n: int, rng, margin: float = 1e-7):
    lo = hexa.vertices.min(axis=0)
    hi = hexa.vertices.max(axis=0)
    keep = margin * hexa.diameter
    out = []
    attempts = 0
    budget = 2000 * (n + 10)
    while len(out) < n:
        attempts += 1
        if attempts > budget:
            raise ValueError(
                f"could not sample {n} interior points (margin {margin:g}"
                " too large for this geometry?)"
            )
        p = rng.uniform(lo, hi)
        if np.all(hexa.face_signed_distances(p) < -keep):
            out.append(p)
    return np.array(out)


def face_points_hex(hexa: Hexahedron, f: int, n: int, rng, margin: float = 0.05):
    """n points on face f via bilinear corner blending, away from its edges."""
    corners = hexa.vertices[list(Hexahedron.FACES[f])]
    out = []
    for _ in range(n):
        s, t = rng.uniform(margin, 1.0 - margin, 2)
        out.append(
            (1 - s) * (1 - t) * corners[0]
            + s * (1 - t) * corners[1]
            + s * t * corners[2]
            + (1 - s) * t * corners[3]
        )
    return np.array(out)


def random_simple_quad(rng, convex: bool | None = None) -> Quadrilateral:
    """A random simple quadrilateral: four points ordered by angle around
    their centroid.  convex=True/False filters the shape class."""
    for _ in range(100000):
        pts = rng.uniform(0.0, 1.0, (4, 2))
        c = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0]))
        v = pts[order]
        if quad_violations(v):
            continue
        quad = Quadrilateral(v)
        # Reject slivers; they make oracle comparisons needlessly touchy.
        if abs(quad._corner_crosses).min() < 1e-3 * quad.diameter**2:
            continue
        if convex is not None and quad.is_convex != convex:
            continue
        return quad
    raise ValueError("quadrilateral sampler failed to produce a valid shape")


def random_affine_cube_hex(rng) -> Hexahedron:
    """A random invertible affine image of the cube (planar, convex)."""
    while True:
        a = np.eye(3) + rng.uniform(-0.4, 0.4, (3, 3))
        if abs(np.linalg.det(a)) >= 0.3:
            break
    scale = rng.uniform(0.5, 2.0)
    shift = rng.uniform(-5.0, 5.0, 3)
    return Hexahedron(_CUBE @ a.T * scale + shift)


_VERTEX_FACES = [
    [f for f, idx in enumerate(Hexahedron.FACES) if v in idx] for v in range(8)
]


def random_plane_hex(rng, tilt: float = 0.25) -> Hexahedron:
    """A random convex hexahedron from perturbed supporting planes.

    Each vertex is the intersection of its three adjacent planes, so the
    faces are planar by construction and opposite faces are generally not
    parallel (unlike affine cube images).
    """
    for _ in range(100000):
        normals = []
        offsets = []
        for n0 in _CUBE_NORMALS:
            n = n0 + rng.uniform(-tilt, tilt, 3)
            normals.append(n / np.linalg.norm(n))
            offsets.append(1.0 + rng.uniform(-0.15, 0.15))
        v = np.empty((8, 3))
        ok = True
        for i in range(8):
            fs = _VERTEX_FACES[i]
            lhs = np.vstack([normals[f] for f in fs])
            rhs = np.array([offsets[f] for f in fs])
            try:
                v[i] = np.linalg.solve(lhs, rhs)
            except np.linalg.LinAlgError:
                ok = False
                break
        if ok and not hex_violations(v):
            return Hexahedron(v)
    raise ValueError("hexahedron sampler failed to produce a valid shape")


def random_nodes(rng, n: int, min_gap: float = 1e-4) -> NodeSet1D:
    """n sorted uniform nodes on [0, 1] with a minimum relative spacing."""
    for _ in range(100000):
        xs = np.sort(rng.uniform(0.0, 1.0, n))
        if np.diff(xs).min() >= min_gap * (xs[-1] - xs[0]):
            return NodeSet1D(xs)
    raise ValueError("node sampler failed to satisfy the spacing floor")

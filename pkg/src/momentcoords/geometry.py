"""Geometric primitives and predicates for the supported node sets.

Tolerances are relative to the geometry diameter (the largest pairwise
vertex distance) so that every predicate is scale invariant.  Geometry
objects validate their invariants at construction and are treated as
immutable afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import DegenerateEdge, InvalidGeometry

# Default classification tolerance, relative to the diameter.
CLASSIFY_RTOL = 1e-10
# Face planarity / solid convexity slack, relative to the diameter.
PLANARITY_RTOL = 1e-9
CONVEXITY_RTOL = 1e-9
# Edges shorter than this (absolute) cannot define a direction.
MIN_EDGE_LENGTH = 1e-13


@dataclass(frozen=True)
class PointLocation:
    """Classification of a query point against a geometry.

    kind is one of "interior", "on_edge", "on_face", "at_vertex",
    "exterior"; index identifies the vertex/edge/face and t is the edge
    parameter in [0, 1] for "on_edge".
    """

    kind: str
    index: int | None = None
    t: float | None = None

    @property
    def inside(self) -> bool:
        return self.kind != "exterior"

    @property
    def on_boundary(self) -> bool:
        return self.kind in ("on_edge", "on_face", "at_vertex")


def signed_area(a, b, c) -> float:
    """Signed area of triangle (a, b, c); positive for counterclockwise."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    return 0.5 * float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _diameter(vertices) -> float:
    diffs = vertices[:, None, :] - vertices[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=2)).max())


def _on_segment(a, b, c) -> bool:
    """True if collinear point c lies within the bounding box of segment ab."""
    return bool(
        min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
    )


def _segments_intersect(p1, p2, q1, q2) -> bool:
    """True if segments p1p2 and q1q2 cross, touch, or overlap."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def _polygon_area(v) -> float:
    """Shoelace area of a closed polygon, taken about the centroid so the
    result does not lose precision for far-translated geometry."""
    c = v.mean(axis=0)
    n = v.shape[0]
    return sum(signed_area(v[i], v[(i + 1) % n], c) for i in range(n))


def quad_violations(vertices) -> list[str]:
    """Invariant violations for a raw 4 x 2 vertex array (empty means valid)."""
    v = np.asarray(vertices, dtype=float)
    out = []
    if v.shape != (4, 2):
        return [f"expected 4 vertices with 2 coordinates, got shape {v.shape}"]
    if not np.all(np.isfinite(v)):
        return ["vertex coordinates must be finite"]
    diam = _diameter(v)
    if diam == 0.0:
        return ["all vertices coincide"]
    for i, j in combinations(range(4), 2):
        if np.linalg.norm(v[i] - v[j]) <= MIN_EDGE_LENGTH * max(diam, 1.0):
            out.append(f"vertices {i} and {j} coincide")
    area = _polygon_area(v)
    if abs(area) <= 1e-12 * diam**2:
        out.append("vertices are collinear (zero total area)")
    # Simplicity: the two pairs of opposite edges must not cross or touch.
    for i, j in ((0, 2), (1, 3)):
        a, b = v[i], v[(i + 1) % 4]
        c, d = v[j], v[(j + 1) % 4]
        if _segments_intersect(a, b, c, d):
            out.append(f"edges {i} and {j} intersect (polygon is not simple)")
    return out


class Quadrilateral:
    """Four 2D vertices in cyclic order bounding a simple polygon.

    Orientation is normalized to counterclockwise at construction; a
    clockwise input is reversed in place (keeping vertex 0 first).  Indices
    are cyclic: edge i joins vertex i to vertex (i + 1) mod 4.
    """

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        violations = quad_violations(v)
        if violations:
            raise InvalidGeometry(violations)
        if _polygon_area(v) < 0.0:
            v = v[[0, 3, 2, 1]]
        v = v.copy()
        v.flags.writeable = False
        self.vertices = v

    @cached_property
    def diameter(self) -> float:
        return _diameter(self.vertices)

    @cached_property
    def corner_tuple(self) -> tuple:
        """Vertices as plain float pairs for scalar-arithmetic hot paths."""
        return tuple((float(x), float(y)) for x, y in self.vertices)

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        v = self.vertices
        out = np.array([np.linalg.norm(v[(i + 1) % 4] - v[i]) for i in range(4)])
        out.flags.writeable = False
        return out

    @cached_property
    def _corner_crosses(self) -> np.ndarray:
        v = self.vertices
        out = np.empty(4)
        for i in range(4):
            e0 = v[(i + 1) % 4] - v[i]
            e1 = v[(i + 2) % 4] - v[(i + 1) % 4]
            out[i] = e0[0] * e1[1] - e0[1] * e1[0]
        return out

    @cached_property
    def is_convex(self) -> bool:
        return bool(self._corner_crosses.min() >= -1e-12 * self.diameter**2)

    def __repr__(self):
        return f"Quadrilateral({self.vertices.tolist()})"


def edge_distance(quad: Quadrilateral, i: int, p) -> float:
    """Distance from p to the supporting line of edge i.

    Signed positive on the interior side, so h_i(p) >= 0 everywhere inside
    a convex counterclockwise quadrilateral.
    """
    v = quad.vertices
    p = np.asarray(p, dtype=float)
    a = v[i % 4]
    b = v[(i + 1) % 4]
    e = b - a
    length = float(np.linalg.norm(e))
    if length < MIN_EDGE_LENGTH:
        raise DegenerateEdge(f"edge {i} has length {length:.3e}")
    return float(e[0] * (p[1] - a[1]) - e[1] * (p[0] - a[0])) / length


def outward_normal(quad: Quadrilateral, i: int) -> np.ndarray:
    """Unit normal of edge i pointing away from the interior (CCW order)."""
    v = quad.vertices
    a = v[i % 4]
    b = v[(i + 1) % 4]
    e = b - a
    length = float(np.linalg.norm(e))
    if length < MIN_EDGE_LENGTH:
        raise DegenerateEdge(f"edge {i} has length {length:.3e}")
    return np.array([e[1], -e[0]]) / length


def _point_segment(p, a, b):
    """(distance, clamped parameter) of p against segment ab (scalar math)."""
    px, py = float(p[0]), float(p[1])
    ax, ay = float(a[0]), float(a[1])
    ex, ey = float(b[0]) - ax, float(b[1]) - ay
    ee = ex * ex + ey * ey
    if ee == 0.0:
        return math.hypot(px - ax, py - ay), 0.0
    t = ((px - ax) * ex + (py - ay) * ey) / ee
    t = min(max(t, 0.0), 1.0)
    return math.hypot(px - ax - t * ex, py - ay - t * ey), t


def classify_point_quad(quad: Quadrilateral, p, tol: float | None = None) -> PointLocation:
    """Classify p as at a vertex, on an edge, interior, or exterior.

    Snapping precedence is vertex before edge.  Interior/exterior uses
    even-odd ray crossing, which is valid for nonconvex simple polygons.
    """
    if tol is None:
        tol = CLASSIFY_RTOL * quad.diameter
    x, y = float(p[0]), float(p[1])
    corners = quad.corner_tuple
    dmin = math.inf
    imin = 0
    for i, (vx, vy) in enumerate(corners):
        d2 = (vx - x) ** 2 + (vy - y) ** 2
        if d2 < dmin:
            dmin = d2
            imin = i
    if dmin <= tol * tol:
        return PointLocation("at_vertex", index=imin)
    best = None
    for e in range(4):
        dist, t = _point_segment((x, y), corners[e], corners[(e + 1) % 4])
        if dist <= tol and (best is None or dist < best[0]):
            best = (dist, e, t)
    if best is not None:
        return PointLocation("on_edge", index=best[1], t=best[2])
    inside = False
    for e in range(4):
        ax, ay = corners[e]
        bx, by = corners[(e + 1) % 4]
        if (ay > y) != (by > y):
            if x < ax + (y - ay) * (bx - ax) / (by - ay):
                inside = not inside
    return PointLocation("interior" if inside else "exterior")


class NodeSet1D:
    """n >= 3 strictly increasing nodes on an interval."""

    def __init__(self, nodes):
        x = np.asarray(nodes, dtype=float)
        violations = nodes_violations(x)
        if violations:
            raise InvalidGeometry(violations)
        x = x.copy()
        x.flags.writeable = False
        self.nodes = x

    def __len__(self):
        return self.nodes.shape[0]

    @property
    def span(self) -> float:
        return float(self.nodes[-1] - self.nodes[0])

    def __repr__(self):
        return f"NodeSet1D({self.nodes.tolist()})"


def nodes_violations(nodes) -> list[str]:
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1:
        return [f"nodes must be a 1D array, got shape {x.shape}"]
    if x.shape[0] < 3:
        return [f"need at least 3 nodes, got {x.shape[0]}"]
    if not np.all(np.isfinite(x)):
        return ["nodes must be finite"]
    if not np.all(np.diff(x) > 0):
        return ["nodes must be strictly increasing"]
    return []


# Hexahedron face connectivity (cyclic vertex order per face) and the three
# opposite-face pairs; pair k separates the +/- halves of sign-pattern row k.
HEX_FACES = (
    (0, 1, 2, 3),
    (4, 5, 6, 7),
    (0, 1, 5, 4),
    (3, 2, 6, 7),
    (0, 3, 7, 4),
    (1, 2, 6, 5),
)
HEX_OPPOSITE_PAIRS = ((0, 1), (2, 3), (4, 5))


def _fit_plane(points):
    """Least-squares plane through points: (unit normal, centroid, max |offset|)."""
    c = points.mean(axis=0)
    q = points - c
    _, s, vt = np.linalg.svd(q, full_matrices=False)
    n = vt[-1]
    return n, c, float(np.abs(q @ n).max())


def hex_violations(vertices) -> list[str]:
    """Invariant violations for a raw 8 x 3 vertex array (empty means valid)."""
    v = np.asarray(vertices, dtype=float)
    out = []
    if v.shape != (8, 3):
        return [f"expected 8 vertices with 3 coordinates, got shape {v.shape}"]
    if not np.all(np.isfinite(v)):
        return ["vertex coordinates must be finite"]
    diam = _diameter(v)
    if diam == 0.0:
        return ["all vertices coincide"]
    for i, j in combinations(range(8), 2):
        if np.linalg.norm(v[i] - v[j]) <= MIN_EDGE_LENGTH * max(diam, 1.0):
            out.append(f"vertices {i} and {j} coincide")
    if out:
        return out
    centroid = v.mean(axis=0)
    for f, idx in enumerate(HEX_FACES):
        pts = v[list(idx)]
        n, c, offset = _fit_plane(pts)
        if offset > PLANARITY_RTOL * diam:
            out.append(f"face {f} {tuple(i + 1 for i in idx)} is not planar (offset {offset:.3e})")
            continue
        if n @ (c - centroid) < 0:
            n = -n
        worst = float(((v - c) @ n).max())
        if worst > CONVEXITY_RTOL * diam:
            out.append(f"vertex protrudes {worst:.3e} beyond face {f} (solid not convex)")
        verts2d, _, _ = _plane_coords(pts, n, c)
        if quad_violations(verts2d):
            out.append(f"face {f} is not a simple quadrilateral")
    return out


def _plane_coords(points, normal, origin):
    """Isometric 2D coordinates of coplanar points; returns (2D pts, u, w)."""
    ref = points[1] - points[0]
    u = ref - (ref @ normal) * normal
    u = u / np.linalg.norm(u)
    w = np.cross(normal, u)
    q = points - origin
    return np.column_stack([q @ u, q @ w]), u, w


class Hexahedron:
    """Eight 3D vertices with six planar quadrilateral faces, convex.

    The vertex order must follow the reference-cube sign convention used by
    the hexahedral moment system (vertex i of the cube [-1,1]^3 carries the
    sign triple of sign-pattern column i); no automatic reordering is done.
    """

    FACES = HEX_FACES
    OPPOSITE_PAIRS = HEX_OPPOSITE_PAIRS

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        violations = hex_violations(v)
        if violations:
            raise InvalidGeometry(violations)
        v = v.copy()
        v.flags.writeable = False
        self.vertices = v

    @cached_property
    def diameter(self) -> float:
        return _diameter(self.vertices)

    @cached_property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @cached_property
    def face_planes(self) -> tuple:
        """Per face: (outward unit normal, point on the plane)."""
        out = []
        for idx in self.FACES:
            pts = self.vertices[list(idx)]
            n, c, _ = _fit_plane(pts)
            if n @ (c - self.centroid) < 0:
                n = -n
            out.append((n, c))
        return tuple(out)

    @cached_property
    def _plane_matrix(self) -> tuple:
        normals = np.vstack([n for n, _ in self.face_planes])
        offsets = np.array([n @ c for n, c in self.face_planes])
        return normals, offsets

    def face_signed_distances(self, p) -> np.ndarray:
        """Outward signed distance of p to each supporting face plane."""
        normals, offsets = self._plane_matrix
        return normals @ np.asarray(p, dtype=float) - offsets

    def __repr__(self):
        return f"Hexahedron({self.vertices.tolist()})"


def face_to_plane(hexa: Hexahedron, f: int):
    """Face f as a 2D quadrilateral in isometric in-plane coordinates.

    Returns (Quadrilateral, to2d) where to2d maps an on-face 3D point to
    its 2D coordinates.  Vertex order matches HEX_FACES[f]; the in-plane
    basis is mirrored if needed so that order is already counterclockwise
    and the constructor does not reorder.  Cached per hexahedron.
    """
    cache = getattr(hexa, "_face2d_cache", None)
    if cache is None:
        cache = {}
        hexa._face2d_cache = cache
    hit = cache.get(f)
    if hit is not None:
        return hit
    idx = list(HEX_FACES[f])
    pts = hexa.vertices[idx]
    n, c = hexa.face_planes[f]
    verts2d, u, w = _plane_coords(pts, n, c)
    if _polygon_area(verts2d) < 0:
        w = -w
        verts2d = np.column_stack([verts2d[:, 0], -verts2d[:, 1]])

    def to2d(p):
        q = np.asarray(p, dtype=float) - c
        return np.array([q @ u, q @ w])

    result = (Quadrilateral(verts2d), to2d)
    cache[f] = result
    return result


def faces_containing(hexa: Hexahedron, p, tol: float | None = None) -> list[int]:
    """Indices of faces whose plane passes within tol of p and whose
    quadrilateral contains (the projection of) p."""
    if tol is None:
        tol = CLASSIFY_RTOL * hexa.diameter
    s = hexa.face_signed_distances(p)
    out = []
    for f in range(6):
        if abs(s[f]) <= tol:
            quad2d, to2d = face_to_plane(hexa, f)
            if classify_point_quad(quad2d, to2d(p), tol=tol).inside:
                out.append(f)
    return out


def face_of_point_hex(hexa: Hexahedron, p, tol: float | None = None) -> PointLocation:
    """Classify p against a hexahedron.

    Vertex snapping wins over faces; points on edges or corners report the
    lowest-index containing face.  Interior means strictly inside all six
    supporting planes.
    """
    p = np.asarray(p, dtype=float)
    if tol is None:
        tol = CLASSIFY_RTOL * hexa.diameter
    dv = np.linalg.norm(hexa.vertices - p, axis=1)
    i = int(np.argmin(dv))
    if dv[i] <= tol:
        return PointLocation("at_vertex", index=i)
    s = hexa.face_signed_distances(p)
    if np.any(s > tol):
        return PointLocation("exterior")
    near = faces_containing(hexa, p, tol=tol)
    if near:
        return PointLocation("on_face", index=near[0])
    if np.all(s < -tol):
        return PointLocation("interior")
    # Within tolerance of some plane but not on its face polygon: outside.
    return PointLocation("exterior")


def validate_geometry(geom) -> list[str]:
    """Invariant violations for a constructed geometry (empty list = ok)."""
    if isinstance(geom, Quadrilateral):
        return quad_violations(geom.vertices)
    if isinstance(geom, Hexahedron):
        return hex_violations(geom.vertices)
    if isinstance(geom, NodeSet1D):
        return nodes_violations(geom.nodes)
    raise TypeError(f"unsupported geometry type {type(geom).__name__}")

"""Nonnegative barycentric coordinates on finite element geometries.

Coordinates are obtained as unique solutions of small moment-regularized
linear systems: the constant and linear reproducing conditions plus
alternating-sign distance rows.  Supported node sets are 1D intervals
(n >= 3 nodes), simple quadrilaterals (convex or nonconvex), and convex
hexahedra with planar faces.
"""

from .coords1d import Moment1DSystem, build_system_1d, hat_oracle, moment_coords_1d
from .coords2d import (
    cramer_coords_quad,
    moment_coords_quad,
    moment_row,
    mvc_oracle,
    triangle_barycentric,
    wachspress_coords_quad,
    wachspress_oracle,
    wachspress_row,
)
from .coords3d import (
    Frame3,
    distance_row_3d,
    moment_coords_hex,
    partial_distance_matrix,
    reference_frame,
    sign_pattern_ok,
)
from .errors import (
    DegenerateEdge,
    DegenerateTriangle,
    DomainError,
    FrameNotFound,
    InvalidGeometry,
    MomentCoordsError,
    NotConvex,
    OnBoundary,
    OutOfDomain,
    OutsideDomain,
    SingularMatrix,
)
from .geometry import (
    Hexahedron,
    NodeSet1D,
    PointLocation,
    Quadrilateral,
    classify_point_quad,
    edge_distance,
    face_of_point_hex,
    outward_normal,
    signed_area,
    validate_geometry,
)
from .smallsolve import SquareSystem, solve_dense, solve_square

__version__ = "0.1.0"

__all__ = [
    "Moment1DSystem",
    "build_system_1d",
    "hat_oracle",
    "moment_coords_1d",
    "cramer_coords_quad",
    "moment_coords_quad",
    "moment_row",
    "mvc_oracle",
    "triangle_barycentric",
    "wachspress_coords_quad",
    "wachspress_oracle",
    "wachspress_row",
    "Frame3",
    "distance_row_3d",
    "moment_coords_hex",
    "partial_distance_matrix",
    "reference_frame",
    "sign_pattern_ok",
    "DegenerateEdge",
    "DegenerateTriangle",
    "DomainError",
    "FrameNotFound",
    "InvalidGeometry",
    "MomentCoordsError",
    "NotConvex",
    "OnBoundary",
    "OutOfDomain",
    "OutsideDomain",
    "SingularMatrix",
    "Hexahedron",
    "NodeSet1D",
    "PointLocation",
    "Quadrilateral",
    "classify_point_quad",
    "edge_distance",
    "face_of_point_hex",
    "outward_normal",
    "signed_area",
    "validate_geometry",
    "SquareSystem",
    "solve_dense",
    "solve_square",
]

"""Moment coordinates on an interval and the piecewise-linear hat oracle.

The n-node system stacks a ones row, a centered-node row, an
alternating-sign distance row, and n - 3 adjacency rows with two unit
entries each.  The node set is relabeled so that the interval containing
the query occupies positions 1 and 2; the adjacency rows then pair the
remaining positions (3,4), (4,5), ..., keeping the expected two-nonzero
hat solution out of every adjacency constraint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain
from .geometry import NodeSet1D
from .smallsolve import SquareSystem, solve_dense

DOMAIN_RTOL = 1e-12


@dataclass
class Moment1DSystem:
    """Assembled interval system plus the bookkeeping to undo the relabeling."""

    nodes: NodeSet1D
    query: float
    interval: int  # k with query in [nodes[k], nodes[k+1]]
    permutation: np.ndarray  # original index of each permuted position
    system: SquareSystem


def _locate(nodes: NodeSet1D, x: float):
    """Containing interval index for x; exact node hits take the lower interval.

    Returns (k, x) with x clamped into [nodes[0], nodes[-1]]; raises
    OutOfDomain when x lies outside beyond a span-relative tolerance.
    """
    xs = nodes.nodes
    tol = DOMAIN_RTOL * nodes.span
    if x < xs[0] - tol or x > xs[-1] + tol:
        raise OutOfDomain(f"x={x!r} outside [{xs[0]!r}, {xs[-1]!r}]")
    x = min(max(float(x), float(xs[0])), float(xs[-1]))
    idx = int(np.searchsorted(xs, x, side="left"))
    if idx < len(xs) and xs[idx] == x:
        k = max(idx - 1, 0)
    else:
        k = idx - 1
    return k, x


def build_system_1d(nodes: NodeSet1D, x: float) -> Moment1DSystem:
    """Assemble the relabeled n x n moment system for query x."""
    k, xq = _locate(nodes, x)
    xs = nodes.nodes
    n = len(xs)
    perm = np.concatenate(([k, k + 1], np.arange(0, k), np.arange(k + 2, n))).astype(int)
    y = xs[perm]
    m = np.zeros((n, n))
    m[0] = 1.0
    m[1] = y - xq
    # Distance-row signs alternate with the *original* sorted index; keying
    # them to the permuted position instead makes the row a multiple of the
    # centered-node row whenever the containing interval index is even.
    signs = np.where(perm % 2 == 0, 1.0, -1.0)
    m[2] = signs * np.abs(y - xq)
    for r in range(n - 3):
        m[3 + r, r + 2] = 1.0
        m[3 + r, r + 3] = 1.0
    rhs = np.zeros(n)
    rhs[0] = 1.0
    return Moment1DSystem(
        nodes=nodes, query=xq, interval=k, permutation=perm, system=SquareSystem(m, rhs)
    )


def moment_coords_1d(nodes: NodeSet1D, x: float) -> np.ndarray:
    """Coordinates of x in the node basis via the moment system.

    Nonnegative, partition of unity, linear precision; coincides with the
    hat-function coordinates of the containing interval.
    """
    built = build_system_1d(nodes, x)
    sol = solve_dense(built.system.matrix, built.system.rhs)
    phi = np.empty(len(nodes))
    phi[built.permutation] = sol
    return phi


def hat_oracle(nodes: NodeSet1D, x: float) -> np.ndarray:
    """Standard piecewise-linear nodal basis evaluated at x."""
    k, xq = _locate(nodes, x)
    xs = nodes.nodes
    phi = np.zeros(len(xs))
    phi[k] = (xs[k + 1] - xq) / (xs[k + 1] - xs[k])
    phi[k + 1] = 1.0 - phi[k]
    return phi

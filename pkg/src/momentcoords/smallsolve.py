"""Dense square solves (sizes 3-16) with pivoting and singularity detection.

Every coordinate construction in this package bottoms out in one of these
solves, so a compiled kernel (``momentcoords._kernels``, built from Cython)
is used when available.  A pure-Python twin of the same algorithm acts as
the fallback; both use partial (row) pivoting with the same relative pivot
threshold and produce identical pivot choices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrix

# Pivot acceptance threshold, relative to the largest entry of the input
# matrix.  Below it the geometry is degenerate or a sign-pattern assumption
# was violated.
PIVOT_RTOL = 1e-13
# Post-solve residual contract: |Ax - b|_inf <= RESIDUAL_RTOL * (1 + |b|_inf).
RESIDUAL_RTOL = 1e-10

try:
    from . import _kernels
except ImportError:  # extension not built; pure backend only
    _kernels = None


@dataclass
class SquareSystem:
    """An n x n matrix/right-hand-side pair, n >= 1."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        self.rhs = np.asarray(self.rhs, dtype=float)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError(f"matrix must be square, got shape {self.matrix.shape}")
        if self.rhs.shape != (self.matrix.shape[0],):
            raise ValueError(
                f"rhs shape {self.rhs.shape} inconsistent with matrix {self.matrix.shape}"
            )
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def dimension(self) -> int:
        return self.rhs.shape[0]


def _solve_python(a, b):
    """In-place LU with partial pivoting; mirrors the compiled kernel."""
    n = a.shape[0]
    floor = PIVOT_RTOL * float(np.abs(a).max())
    if floor == 0.0:
        raise SingularMatrix("matrix is identically zero")
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) < floor:
            raise SingularMatrix(
                f"pivot {abs(a[p, k]):.3e} below threshold {floor:.3e} at column {k}"
            )
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        if k < n - 1:
            mult = a[k + 1 :, k] / a[k, k]
            a[k + 1 :, k + 1 :] -= np.outer(mult, a[k, k + 1 :])
            b[k + 1 :] -= mult * b[k]
    x = np.empty_like(b)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    return x


def _solve_compiled(a, b):
    status = _kernels.lu_solve_inplace(a, b, PIVOT_RTOL)
    if status >= 0:
        raise SingularMatrix(f"pivot below threshold at column {status}")
    return b


_BACKENDS = {"python": _solve_python}
if _kernels is not None:
    _BACKENDS["compiled"] = _solve_compiled

if "compiled" in _BACKENDS and not os.environ.get("MOMENTCOORDS_PURE"):
    _active = "compiled"
else:
    _active = "python"


def available_backends() -> tuple:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    """Select the solve backend ("compiled" or "python") for this process."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _active = name


def solve_dense(matrix, rhs) -> np.ndarray:
    """Solve matrix @ x = rhs for a small dense square system.

    Inputs are copied, never modified.  Raises SingularMatrix when partial
    pivoting meets a pivot below PIVOT_RTOL relative to the largest matrix
    entry.  Deterministic: identical inputs give bitwise identical results
    within a backend.
    """
    a = np.array(matrix, dtype=float, order="C")
    b = np.array(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape != (a.shape[0],):
        raise ValueError(f"need square matrix and matching rhs, got {a.shape} / {b.shape}")
    x = _BACKENDS[_active](a, b)
    if __debug__:
        a0 = np.asarray(matrix, dtype=float)
        b0 = np.asarray(rhs, dtype=float)
        resid = float(np.abs(a0 @ x - b0).max())
        assert resid <= RESIDUAL_RTOL * (1.0 + float(np.abs(b0).max())), (
            f"solve residual {resid:.3e} exceeds contract"
        )
    return x


def solve_square(system: SquareSystem) -> np.ndarray:
    """Solve a validated SquareSystem; see solve_dense for the contract."""
    return solve_dense(system.matrix, system.rhs)

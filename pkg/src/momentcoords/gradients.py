"""Finite-difference gradients of coordinate fields.

Derivatives are central where both offset points stay inside the domain
and one-sided next to the boundary; the relative step follows the geometry
diameter.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

# Relative finite-difference step (times the geometry diameter).
FD_STEP_RTOL = 1e-6


def finite_difference_gradient(evaluate, inside, p, h: float) -> np.ndarray:
    """Gradient of a vector field of weights at p.

    evaluate(point) returns the (n,) weight vector, inside(point) says
    whether a point may be evaluated, h is the absolute step.  Returns an
    (n, dim) array with entry (i, j) = d w_i / d x_j.
    """
    p = np.asarray(p, dtype=float)
    dim = p.shape[0]
    base = None
    cols = []
    for j in range(dim):
        step = np.zeros(dim)
        step[j] = h
        up = p + step
        dn = p - step
        up_ok = inside(up)
        dn_ok = inside(dn)
        if up_ok and dn_ok:
            cols.append((evaluate(up) - evaluate(dn)) / (2.0 * h))
        elif up_ok:
            if base is None:
                base = evaluate(p)
            cols.append((evaluate(up) - base) / h)
        elif dn_ok:
            if base is None:
                base = evaluate(p)
            cols.append((base - evaluate(dn)) / h)
        else:
            # At a sharp corner both offsets can leave the domain.
            raise DomainError(f"no admissible finite-difference step along axis {j}")
    return np.column_stack(cols)

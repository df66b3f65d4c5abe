"""Width dimension of finite-dimensional l^p balls under the sup metric.

``wdm_eps(B_1^{l^p(n)}, l^inf)`` is 0 for ``eps >= 2``, ``n`` for
``eps < 2 n^(-1/p)`` and otherwise the ``r`` with
``2 (r+1)^(-1/p) <= eps < 2 r^(-1/p)``. The upper-bound direction is
witnessed by soft-thresholding at ``t = (r+1)^(-1/p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceLimitError

GRID_CAP = 10**7


def threshold(j: int, p: float) -> float:
    """``2 j^(-1/p)``, the eps value below which the width dimension reaches ``j``."""
    return 2.0 * j ** (-1.0 / p)


def _check_query(n: int, p: float, eps: float) -> None:
    if n < 1:
        raise ValueError("dimension n must be >= 1")
    if not 1 <= p < math.inf:
        raise ValueError("p must lie in [1, inf)")
    if not eps > 0:
        raise ValueError("eps must be positive")


def wdm_closed_form(n: int, p: float, eps: float) -> int:
    """Width dimension of the unit l^p ball of R^n with the sup metric.

    Counts the thresholds ``2 j^(-1/p) > eps`` (j = 1..n) by bisection;
    thresholds decrease in ``j`` so the count is the answer. At
    ``eps = 2 (r+1)^(-1/p)`` exactly the value is ``r``.
    """
    _check_query(n, p, eps)
    lo, hi = 0, n  # invariant: threshold(j) > eps for j <= lo, and the answer is <= hi
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if threshold(mid, p) > eps:
            lo = mid
        else:
            hi = mid - 1
    return lo


def wdm_from_power(n: int, p: float, eps: float) -> int:
    """Same quantity from ``k < (eps/2)^(-p) <= k + 1``, capped at ``n``.

    Rounding makes this unreliable exactly at the thresholds; it exists as
    an independent cross-check of :func:`wdm_closed_form`.
    """
    _check_query(n, p, eps)
    x = (eps / 2.0) ** (-p)
    return min(n, max(0, math.ceil(x) - 1))


@dataclass(frozen=True)
class ClipWitness:
    threshold: float
    sparsity: int
    image: np.ndarray


def clip_threshold(p: float, r: int) -> float:
    return (r + 1) ** (-1.0 / p)


def soft_threshold(x: np.ndarray, t: float) -> np.ndarray:
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def clip_embedding(x, p: float, r: int, tol: float = 1e-12) -> ClipWitness:
    """Soft-threshold ``x`` at ``t = (r+1)^(-1/p)``.

    On the unit l^p ball at most ``r`` coordinates can exceed ``t``, so the
    image lives in the union of r-dimensional coordinate planes, and two
    points with the same image differ by at most ``2t`` in every coordinate.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if not 1 <= r < n:
        raise ValueError(f"target sparsity must satisfy 1 <= r < n, got r={r}, n={n}")
    if np.sum(np.abs(x) ** p) ** (1.0 / p) > 1 + tol:
        raise DomainError("input lies outside the unit l^p ball")
    t = clip_threshold(p, r)
    return ClipWitness(t, r, soft_threshold(x, t))


def ball_grid(n: int, p: float, h: float, cap: int = GRID_CAP) -> np.ndarray:
    """Points of ``h Z^n`` inside the closed unit l^p ball, shape ``(m, n)``."""
    steps = int(math.floor(1.0 / h + 1e-9))
    side = 2 * steps + 1
    if side**n > cap:
        raise ResourceLimitError(f"grid with {side}**{n} points exceeds cap {cap}")
    axis = np.arange(-steps, steps + 1) * h
    pts = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    inside = np.sum(np.abs(pts) ** p, axis=1) <= 1 + 1e-12
    return pts[inside]


def fiber_diameter_oracle(p: float, n: int, r: int, h: float, cap: int = GRID_CAP) -> float:
    """Largest sup-distance between grid points whose clip images snap to the same grid cell.

    Brute force over the ball grid at resolution ``h``: every fiber of the
    snapped clip map is a group of grid points, and its sup-diameter is the
    largest coordinate range within the group. The result should not exceed
    ``2 (r+1)^(-1/p) + 2h``.
    """
    if n > 4:
        raise ValueError("the grid oracle is limited to n <= 4")
    if not 1 <= r < n:
        raise ValueError(f"target sparsity must satisfy 1 <= r < n, got r={r}, n={n}")
    if not h > 0:
        raise ValueError("grid resolution must be positive")
    pts = ball_grid(n, p, h, cap)
    img = soft_threshold(pts, clip_threshold(p, r))
    keys = np.rint(img / h).astype(np.int64)
    _, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    groups = inverse.max() + 1
    lo = np.full((groups, n), np.inf)
    hi = np.full((groups, n), -np.inf)
    np.minimum.at(lo, inverse, pts)
    np.maximum.at(hi, inverse, pts)
    return float(np.max(hi - lo))

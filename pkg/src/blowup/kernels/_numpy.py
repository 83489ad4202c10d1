"""Pure-numpy implementations of the hot monomial kernels.

Inputs are int64 arrays of exponent rows.  `minimal_mask` and `divides_any`
chunk their broadcasts to bound peak memory.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 512


def minimal_mask(A: np.ndarray) -> np.ndarray:
    """Keep-mask of divisibility-minimal rows; rows must be pairwise distinct."""
    n = A.shape[0]
    keep = np.ones(n, dtype=bool)
    if n <= 1:
        return keep
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        block = A[start:stop]
        le = (A[None, :, :] <= block[:, None, :]).all(axis=2)
        le[np.arange(stop - start), np.arange(start, stop)] = False
        keep[start:stop] = ~le.any(axis=1)
    return keep


def divides_any(gens: np.ndarray, points: np.ndarray) -> np.ndarray:
    """For each point row, whether some generator row divides it."""
    n = points.shape[0]
    out = np.zeros(n, dtype=bool)
    if gens.shape[0] == 0 or n == 0:
        return out
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        block = points[start:stop]
        le = (gens[None, :, :] <= block[:, None, :]).all(axis=2)
        out[start:stop] = le.any(axis=1)
    return out


def staircase_count_2d(A: np.ndarray) -> int:
    """Count lattice points outside the staircase of 2-column exponent rows.

    Rows need not be minimal; a pure power of each variable must be present.
    Returns -1 when that precondition fails.
    """
    xs = A[:, 0]
    ys = A[:, 1]
    order = np.argsort(xs, kind="stable")
    xs = xs[order]
    ys = ys[order]
    if xs[0] != 0:
        return -1
    distinct, starts = np.unique(xs, return_index=True)
    min_per_x = np.minimum.reduceat(ys, starts)
    heights = np.minimum.accumulate(min_per_x)
    if heights[-1] != 0:
        return -1
    widths = np.diff(distinct)
    return int(np.dot(widths, heights[:-1])) if widths.size else 0

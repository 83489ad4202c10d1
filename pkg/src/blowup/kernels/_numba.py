"""Numba-jitted twins of the numpy kernels; same contracts, loop-based."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def minimal_mask(A):
    n, d = A.shape
    keep = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            dom = True
            for k in range(d):
                if A[j, k] > A[i, k]:
                    dom = False
                    break
            if dom:
                keep[i] = False
                break
    return keep


@njit(cache=True)
def divides_any(gens, points):
    m, d = gens.shape
    n = points.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        for j in range(m):
            ok = True
            for k in range(d):
                if gens[j, k] > points[i, k]:
                    ok = False
                    break
            if ok:
                out[i] = True
                break
    return out


@njit(cache=True)
def staircase_count_2d(A):
    n = A.shape[0]
    order = np.argsort(A[:, 0])
    if A[order[0], 0] != 0:
        return -1
    total = 0
    h = np.int64(1) << 62
    prev_x = np.int64(-1)
    i = 0
    while i < n:
        x = A[order[i], 0]
        if prev_x >= 0 and x > prev_x:
            total += (x - prev_x) * h
        while i < n and A[order[i], 0] == x:
            y = A[order[i], 1]
            if y < h:
                h = y
            i += 1
        prev_x = x
    if h != 0:
        return -1
    return total

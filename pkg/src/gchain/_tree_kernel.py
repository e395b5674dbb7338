"""Compiled level-by-level growth of the tree behind the tree method."""

from __future__ import annotations

import numpy as np
from numba import njit

DONE, NODE_LIMIT, WORK_LIMIT = 0, 1, 2

# a byte per value up to this limit; a hash set above it
DENSE_MAX = 1 << 27
# root paths are chains, so no tree is deeper than this
MAX_DEPTH = 130


@njit(cache=True)
def _path_sums(path, length, g, hi, out, work, work_limit):
    """Sums of 2..g elements of path[0..length) that are at most hi.

    Same odometer as the exact search: non-increasing indices, with a
    branch cut once its smallest completion exceeds hi.  Returns the count,
    -1 when ``out`` is full, -2 when ``work`` passes ``work_limit``.
    """
    n = 0
    kmax = g if g < hi else hi
    m = length - 1
    idx = np.empty(kmax, np.int64)
    part = np.empty(kmax + 1, np.int64)
    for k in range(2, kmax + 1):
        depth = 0
        idx[0] = m
        part[0] = 0
        while depth >= 0:
            work[0] += 1
            if work[0] > work_limit:
                return -2
            j = idx[depth]
            if j < 0:
                depth -= 1
                if depth >= 0:
                    idx[depth] -= 1
                continue
            v = path[j]
            s = part[depth]
            rem = k - depth
            if v > hi - s - (rem - 1):
                idx[depth] -= 1
                continue
            s += v
            if rem == 1:
                if n == out.shape[0]:
                    return -1
                out[n] = s
                n += 1
                idx[depth] -= 1
                continue
            part[depth + 1] = s
            idx[depth + 1] = j
            depth += 1
    return n


@njit(cache=True)
def grow(g, limit, stop_at, node_limit, work_limit):
    """Attach levels until ``stop_at`` appears (0: never) or nothing new fits.

    Returns (status, values, parents, levels, work) with parents as indices
    into values (-1 for the root).  Nodes appear in attachment order: level
    by level, left to right, each node's children ascending.
    """
    cap = 1024
    values = np.empty(cap, np.int64)
    parents = np.empty(cap, np.int64)
    levels = np.empty(cap, np.int64)
    values[0] = 1
    parents[0] = -1
    levels[0] = 1
    n = 1
    dense = limit < DENSE_MAX
    seen = np.zeros(limit + 1 if dense else 1, np.uint8)
    sparse = {np.int64(1): True}
    if dense:
        seen[1] = 1
    work = np.zeros(1, np.int64)
    path = np.empty(MAX_DEPTH, np.int64)
    buf = np.empty(4096, np.int64)
    if stop_at == 1:
        return DONE, values[:n], parents[:n], levels[:n], work[0]
    begin, end, lev = 0, 1, 1
    while True:
        for node in range(begin, end):
            length = 0
            j = node
            while j >= 0:
                path[length] = values[j]
                length += 1
                j = parents[j]
            path[:length] = path[:length][::-1].copy()
            m = _path_sums(path, length, g, limit, buf, work, work_limit)
            while m == -1:
                buf = np.empty(2 * buf.shape[0], np.int64)
                m = _path_sums(path, length, g, limit, buf, work, work_limit)
            if m == -2:
                return WORK_LIMIT, values[:n], parents[:n], levels[:n], work[0]
            kids = np.sort(buf[:m])
            for t in range(m):
                v = kids[t]
                if t and v == kids[t - 1]:
                    continue
                if dense:
                    if seen[v]:
                        continue
                    seen[v] = 1
                else:
                    if v in sparse:
                        continue
                    sparse[v] = True
                if n == values.shape[0]:
                    values = np.concatenate((values, np.empty(n, np.int64)))
                    parents = np.concatenate((parents, np.empty(n, np.int64)))
                    levels = np.concatenate((levels, np.empty(n, np.int64)))
                values[n] = v
                parents[n] = node
                levels[n] = lev + 1
                n += 1
                if n > node_limit:
                    return NODE_LIMIT, values[:n], parents[:n], levels[:n], work[0]
                if v == stop_at:
                    return DONE, values[:n], parents[:n], levels[:n], work[0]
        if n == end:
            return DONE, values[:n], parents[:n], levels[:n], work[0]
        begin, end, lev = end, n, lev + 1

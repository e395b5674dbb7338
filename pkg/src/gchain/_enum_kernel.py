"""Compiled level search behind :func:`gchain.optimal.enumerate`.

Each open depth keeps, per k, the list of sums of exactly k chain elements
(capped at the largest target).  Appending x to the chain extends those
lists with ``s + t*x``, which visits every multiset of the new chain once.
"""

from __future__ import annotations

import numpy as np
from numba import njit

DONE, OVER_BUDGET = 0, 1


@njit(cache=True)
def _multisets(n, k):
    c = 1
    for j in range(1, k + 1):
        c = c * (n + j - 1) // j
    return c


@njit(cache=True)
def search_level(g, r, unresolved, budget):
    """Count, for every unresolved n, the ascending chains of length r ending at n.

    ``unresolved`` is a 0/1 array over [0, n_max].  Returns (status, hits,
    nodes) with ``hits[n]`` the number of chains found for n.
    """
    n_max = unresolved.shape[0] - 1
    hits = np.zeros(n_max + 1, np.int64)
    # next_target[v]: smallest unresolved target above v, n_max + 1 if none
    next_target = np.empty(n_max + 2, np.int64)
    nt = n_max + 1
    for v in range(n_max + 1, -1, -1):
        next_target[v] = nt
        if v <= n_max and unresolved[v]:
            nt = v
    lowest = next_target[0]
    highest = 0
    for v in range(n_max, 0, -1):
        if unresolved[v]:
            highest = v
            break
    if lowest > n_max:
        return DONE, hits, 0

    cap = _multisets(r + 1, g)
    sums = np.empty((r + 1, g + 1, cap), np.int64)
    count = np.zeros((r + 1, g + 1), np.int64)
    # depth 0 is the chain (1): k copies of 1
    for k in range(g + 1):
        sums[0, k, 0] = k
        count[0, k] = 1
    chain = np.zeros(r + 1, np.int64)
    chain[0] = 1
    stamp = np.zeros(n_max + 1, np.int64)
    tick = 0
    width = _multisets(r + 1, 2) * g + cap * g
    stack = np.empty((r + 1, width), np.int64)
    size = np.zeros(r + 1, np.int64)
    pos = np.zeros(r + 1, np.int64)
    nodes = 0

    i = 0
    entering = True
    while i >= 0:
        if entering:
            entering = False
            nodes += 1
            if nodes > budget:
                return OVER_BUDGET, hits, nodes
            last = chain[i]
            left = r - i
            # some unresolved target above last must stay within reach: either
            # last * g**left exactly, or at most what (g-1)*last + prev grows
            # into by g-steps (valid while last <= g * prev, so the root
            # borrows prev = 1)
            prev = chain[i - 1] if i else 1
            t = next_target[last]
            reach = (g - 1) * last + prev
            for _ in range(left - 1):
                if reach > n_max:
                    break
                reach *= g
            if t > n_max or t > reach:
                top = last
                for _ in range(left):
                    if top > n_max:
                        break
                    top *= g
                if top > n_max or not unresolved[top]:
                    i -= 1
                    continue
            tick += 1
            if left == 1:
                for k in range(2, g + 1):
                    for j in range(count[i, k]):
                        v = sums[i, k, j]
                        if v > last and unresolved[v] and stamp[v] != tick:
                            stamp[v] = tick
                            hits[v] += 1
                i -= 1
                continue
            div = 1
            for _ in range(left - 1):
                div *= g
                if div > n_max:
                    break
            lo = max(last + 1, (lowest + div - 1) // div)
            n = 0
            for k in range(2, g + 1):
                for j in range(count[i, k]):
                    v = sums[i, k, j]
                    if lo <= v < highest and stamp[v] != tick:
                        stamp[v] = tick
                        stack[i, n] = v
                        n += 1
            size[i] = n
            pos[i] = 0
        if pos[i] < size[i]:
            x = stack[i, pos[i]]
            pos[i] += 1
            chain[i + 1] = x
            # sums of chain + [x]: t copies of x over (k - t)-sums of chain
            for k in range(g + 1):
                c = 0
                for t in range(k + 1):
                    add = t * x
                    if add > highest:
                        break
                    for j in range(count[i, k - t]):
                        v = sums[i, k - t, j] + add
                        if v <= highest:
                            sums[i + 1, k, c] = v
                            c += 1
                count[i + 1, k] = c
            i += 1
            entering = True
        else:
            i -= 1
    return DONE, hits, nodes

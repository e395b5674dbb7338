"""Compiled depth-first core of the exact search.

Values live in int64; every bound that could overflow saturates at the
target d, which is all the comparisons need.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FOUND, EXHAUSTED, OVER_BUDGET, OVER_MEMORY = 0, 1, 2, 3

# candidate buffers grow on demand up to this many entries
MAX_BUFFER = 1 << 24


@njit(cache=True)
def _sums_in(a, m, kmin, kmax, lo, hi, out, first_only, work, limit):
    """Sums of kmin..kmax elements of a[0..m] (kmin >= 1) that lie in [lo, hi].

    Writes them to ``out`` and returns the count; with ``first_only`` stops
    at the first hit.  Returns -1 once ``out`` is full and -2 once the work
    counter ``work[0]``, bumped per odometer move, passes ``limit``.
    Indices are chosen non-increasing so each multiset is visited once, and
    a branch stops once even repeating its current element cannot reach lo.
    """
    n = 0
    # every element is at least 1, so more than hi summands never fit
    if kmax > hi:
        kmax = hi
    if kmax < kmin:
        return 0
    idx = np.empty(kmax, np.int64)
    part = np.empty(kmax + 1, np.int64)
    for k in range(kmin, kmax + 1):
        # odometer over idx[0] >= idx[1] >= ... >= idx[k-1]
        depth = 0
        idx[0] = m
        part[0] = 0
        while depth >= 0:
            work[0] += 1
            if work[0] > limit:
                return -2
            j = idx[depth]
            if j < 0:
                depth -= 1
                if depth >= 0:
                    idx[depth] -= 1
                continue
            v = a[j]
            s = part[depth]
            rem = k - depth  # elements still to choose, this one included
            # largest completion: rem copies of v
            if v > hi - s - (rem - 1):
                # too large with the smallest possible completion; go smaller
                idx[depth] -= 1
                continue
            if v <= (lo - s - 1) // rem:
                # even rem copies of v stay below lo; smaller ones only worse
                depth -= 1
                if depth >= 0:
                    idx[depth] -= 1
                continue
            s += v
            if rem == 1:
                if s >= lo:
                    if n == out.shape[0]:
                        return -1
                    out[n] = s
                    n += 1
                    if first_only:
                        return n
                idx[depth] -= 1
                continue
            part[depth + 1] = s
            idx[depth + 1] = j
            depth += 1
    return n


@njit(cache=True)
def _contains(arr, lo, hi, x):
    # binary search in the ascending slice arr[lo:hi]
    end = hi
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < end and arr[lo] == x


@njit(cache=True)
def _digit_count(x, g):
    c = 0
    while x:
        if x % g:
            c += 1
        x //= g
    return c


@njit(cache=True)
def _sat_step(c, p, g, d):
    # min(d, (g-1)*c + p) without overflow
    if c >= d:
        return d
    if c > (d - p) // (g - 1):
        return d
    v = (g - 1) * c + p
    return d if v > d else v


@njit(cache=True)
def _sat_mul(c, k, d):
    if c >= d or c > d // k:
        return d
    return c * k


@njit(cache=True)
def _feasible(last, prev, left, digits, d, g, target_digits, valuation, powers, npow, hist):
    """Can ``left`` more steps from (last, prev) still end exactly at d?"""
    top = d if left >= npow else _sat_mul(last, powers[left], d)
    if top < d:
        return False
    if left < npow and d % powers[left] == 0 and last == d // powers[left]:
        return True
    need = 1
    reach = digits * g
    while reach < target_digits:
        need += 1
        reach *= g
    if need > left:
        return False
    # non-g-steps first
    c, p = last, prev
    for _ in range(need):
        c, p = _sat_step(c, p, g, d), c
    rest = left - need
    if (d if rest >= npow else _sat_mul(c, powers[rest], d)) < d:
        return False
    # the last non-g-step is followed by at most `valuation` g-steps;
    # per count of non-g-steps keep componentwise maxima of (current, previous)
    # hist[t, u] = (current, previous) after t steps, u of them non-g (u capped)
    for t in range(left):
        for u in range(need + 1):
            hist[t, u, 0] = -1
            hist[t, u, 1] = -1
    hist[0, 0, 0] = last
    hist[0, 0, 1] = prev
    for t in range(1, left):
        for u in range(need + 1):
            c = hist[t - 1, u, 0]
            if c < 0:
                continue
            p = hist[t - 1, u, 1]
            gc = _sat_mul(c, g, d)
            if gc > hist[t, u, 0]:
                hist[t, u, 0] = gc
            if c > hist[t, u, 1]:
                hist[t, u, 1] = c
            w = u + 1 if u < need else need
            nc = _sat_step(c, p, g, d)
            if nc > hist[t, w, 0]:
                hist[t, w, 0] = nc
            if c > hist[t, w, 1]:
                hist[t, w, 1] = c
    s_top = valuation if valuation < left - 1 else left - 1
    for s in range(s_top + 1):
        for u in (need - 1, need):
            c = hist[left - 1 - s, u, 0]
            if c < 0:
                continue
            v = _sat_step(c, hist[left - 1 - s, u, 1], g, d)
            if s < npow:
                v = _sat_mul(v, powers[s], d)
            else:
                v = d
            if v >= d:
                return True
    return False


@njit(cache=True)
def search_depth(d, g, r, budget, work_limit, powers):
    """Look for a g-chain of length r ending at d, smallest candidates first.

    Returns (status, chain, nodes, work); chain[0..r] holds the witness
    when status is FOUND.  ``budget`` limits search nodes and ``work_limit``
    the odometer moves spent listing sums, which dominate for large g.
    """
    npow = powers.shape[0]
    target_digits = _digit_count(d, g)
    valuation = 0
    rest = d
    while rest % g == 0:
        valuation += 1
        rest //= g
    chain = np.zeros(r + 1, np.int64)
    chain[0] = 1
    digits = np.zeros(r + 1, np.int64)
    digits[0] = 1
    # multisets of 2..g elements out of r + 1, as a starting size
    cap = 0
    for k in range(2, g + 1):
        c = 1
        for j in range(1, k + 1):
            c = c * (r + j) // j
            if c > 1 << 16:
                break
        cap += c
        if cap > 1 << 16:
            cap = 1 << 16
            break
    buf = np.empty(cap, np.int64)
    # candidate lists of all open levels, stacked
    cands = np.empty(4 * cap, np.int64)
    start = np.zeros(r + 2, np.int64)
    pos = np.zeros(r + 1, np.int64)
    hit = np.empty(1, np.int64)
    hist = np.empty((r + 1, 66, 2), np.int64)
    nodes = 0
    work = np.zeros(1, np.int64)

    i = 0
    fresh = True
    while i >= 0:
        if fresh:
            fresh = False
            nodes += 1
            if nodes > budget:
                return OVER_BUDGET, chain, nodes, work[0]
            left = r - i
            last = chain[i]
            if left == 1:
                f = _sums_in(chain, i, 2, g, d, d, hit, True, work, work_limit)
                if f == -2:
                    return OVER_BUDGET, chain, nodes, work[0]
                if f:
                    chain[r] = d
                    return FOUND, chain, nodes, work[0]
                i -= 1
                continue
            lo = last + 1
            if left - 1 < npow:
                q = powers[left - 1]
                need_lo = (d - 1) // q + 1
                if need_lo > lo:
                    lo = need_lo
            n = _sums_in(chain, i, 2, g, lo, d - 1, buf, False, work, work_limit)
            while n == -1:
                if 2 * buf.shape[0] > MAX_BUFFER:
                    return OVER_MEMORY, chain, nodes, work[0]
                buf = np.empty(2 * buf.shape[0], np.int64)
                n = _sums_in(chain, i, 2, g, lo, d - 1, buf, False, work, work_limit)
            if n == -2:
                return OVER_BUDGET, chain, nodes, work[0]
            vals = buf[:n]
            vals.sort()
            base = start[i]
            if base + n > cands.shape[0]:
                grown = np.empty(2 * (base + n), np.int64)
                grown[:base] = cands[:base]
                cands = grown
            k = 0
            for j in range(n):
                x = vals[j]
                if j and x == vals[j - 1]:
                    continue
                xd = max(digits[i], _digit_count(x, g))
                if _feasible(x, last, left - 1, xd, d, g, target_digits, valuation, powers, npow, hist):
                    cands[base + k] = x
                    k += 1
            start[i + 1] = base + k
            pos[i] = base
            if left == 2:
                # d = t*x + (k chain elements) with 2 <= t + k <= g, so x is
                # (d - s) / t for a k-element sum s; the smallest such x that
                # is also a candidate wins
                best = d
                for t in range(1, g + 1):
                    if lo > d // t:
                        break
                    nodes += 1
                    if t >= 2 and d % t == 0:
                        x = d // t
                        if x < best and _contains(cands, base, base + k, x):
                            best = x
                    if g - t >= 1:
                        m = _sums_in(chain, i, max(1, 2 - t), g - t, 1, d - t * lo, buf, False, work, work_limit)
                        while m == -1:
                            if 2 * buf.shape[0] > MAX_BUFFER:
                                return OVER_MEMORY, chain, nodes, work[0]
                            buf = np.empty(2 * buf.shape[0], np.int64)
                            m = _sums_in(chain, i, max(1, 2 - t), g - t, 1, d - t * lo, buf, False, work, work_limit)
                        if m == -2:
                            return OVER_BUDGET, chain, nodes, work[0]
                        for j in range(m):
                            rest = d - buf[j]
                            if rest % t == 0:
                                x = rest // t
                                if x < best and _contains(cands, base, base + k, x):
                                    best = x
                if best < d:
                    chain[i + 1] = best
                    chain[r] = d
                    return FOUND, chain, nodes, work[0]
                i -= 1
                continue
        if pos[i] < start[i + 1]:
            x = cands[pos[i]]
            pos[i] += 1
            chain[i + 1] = x
            digits[i + 1] = max(digits[i], _digit_count(x, g))
            i += 1
            fresh = True
        else:
            i -= 1
    return EXHAUSTED, chain, nodes, work[0]

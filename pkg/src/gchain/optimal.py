"""Exact minimal chain lengths.

Two independent engines live here:

* :func:`l_g_exact` answers one target at a time by iterative deepening
  over ascending chains, with a compiled depth-first core.
* :func:`enumerate` resolves every n up to a bound at once, level by
  level, extending per-size sum lists incrementally and counting every
  minimal chain it meets.

They share no search code, which is what makes comparing them meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._enum_kernel import OVER_BUDGET as LEVEL_OVER_BUDGET
from ._enum_kernel import search_level
from ._exact_kernel import FOUND, MAX_BUFFER, OVER_BUDGET, OVER_MEMORY, search_depth
from .chain import Chain, ceil_log, lambda_g, mu_m, repeat, validate
from .config import MAX_VALUE, budgets, default_enumeration_max
from .errors import LimitExceeded, Overflow


# odometer moves allowed per budgeted search node
WORK_PER_NODE = 1000


@dataclass(frozen=True)
class OptimalResult:
    d: int
    g: int
    l: int
    witness: Chain
    node_count: int


def bounds(d: int, g: int) -> tuple[int, int]:
    """``(ceil(log_g d), floor(log_g d) + mu_g(d))``."""
    return ceil_log(d, g), lambda_g(d, g) + mu_m(d, g)


def l_g_exact(d: int, g: int, budget: int | None = None) -> OptimalResult:
    """Exact l_g(d) with the lexicographically smallest minimal chain.

    Depths are tried upward from ``ceil(log_g d)``.  At depth r a partial
    chain ending in ``a_i`` is abandoned once ``a_i * g**(r - i) < d``, or
    once the steps left cannot both grow the count of nonzero base-g digits
    to that of d and end on d; extensions are the distinct sums of 2..g
    elements, tried ascending.
    """
    if g < 2:
        raise ValueError("g must be at least 2")
    if d < 1:
        raise ValueError("target must be positive")
    if d > MAX_VALUE:
        raise Overflow(f"{d} exceeds 2**63 - 1")
    if budget is None:
        budget = budgets().exact_nodes
    if d == 1:
        return OptimalResult(1, g, 0, Chain(g, (1,), ()), 1)
    if d <= g:
        return OptimalResult(d, g, 1, Chain(g, (1, d), (tuple(repeat(0, d)),)), 1)

    powers = [1]
    while powers[-1] <= d // g:
        powers.append(powers[-1] * g)
    powers = np.array(powers, dtype=np.int64)
    lower, upper = bounds(d, g)
    nodes = work = 0
    work_limit = WORK_PER_NODE * budget
    for r in range(lower, upper + 1):
        status, chain, used, moves = search_depth(d, g, r, budget - nodes, work_limit - work, powers)
        nodes += int(used)
        work += int(moves)
        if status == OVER_BUDGET:
            if work > work_limit:
                raise LimitExceeded("exact search sum listing", work_limit)
            raise LimitExceeded("exact search nodes", budget)
        if status == OVER_MEMORY:
            raise LimitExceeded("exact search candidates per node", MAX_BUFFER)
        if status == FOUND:
            return OptimalResult(d, g, r, validate([int(v) for v in chain], g), nodes)
    raise AssertionError(f"no chain for {d} within the g-ary upper bound {upper}")


@dataclass
class EnumerationTable:
    g: int
    n_max: int
    l: dict[int, int] = field(default_factory=dict)
    d_g: dict[int, int] = field(default_factory=dict)
    c_g: dict[int, int] = field(default_factory=dict)
    nmc: dict[int, int] = field(default_factory=dict)
    complete_d: tuple[int, ...] = ()
    node_count: int = 0
    partial: bool = False


def _finish(table: EnumerationTable) -> EnumerationTable:
    by_r: dict[int, list[int]] = {}
    for n, r in sorted(table.l.items()):
        by_r.setdefault(r, []).append(n)
    table.d_g = {r: len(ns) for r, ns in sorted(by_r.items())}
    table.c_g = {r: ns[0] for r, ns in sorted(by_r.items())}
    # every n with l_g(n) = r lies below g**r
    table.complete_d = tuple(r for r in table.d_g if table.g**r <= table.n_max and not table.partial)
    return table


# the level search keeps, per depth and summand count, every multiset sum
MAX_LEVEL_ENTRIES = 1 << 25


def _level_memory(g: int, r: int) -> int:
    cap = math.comb(r + g, g)
    width = math.comb(r + 2, 2) * g + cap * g
    return (r + 1) * ((g + 1) * cap + width)


def enumerate(g: int, n_max: int | None = None, budget: int | None = None) -> EnumerationTable:
    """l_g(n) and the number of minimal ascending chains for every n <= n_max.

    Level r enumerates every ascending chain of length r that can still end
    in an unresolved target, so each unresolved n reached at level r has
    l_g(n) = r and its hit count is NMC_g(n).  On budget exhaustion the
    partially filled table travels with the :class:`LimitExceeded` error.
    """
    if g < 2:
        raise ValueError("g must be at least 2")
    if n_max is None:
        n_max = default_enumeration_max(g)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if budget is None:
        budget = budgets().enumerate_nodes

    # more than n_max summands always overshoot, so a larger g adds nothing
    g_eff = min(g, max(n_max, 2))
    table = EnumerationTable(g, n_max, l={1: 0}, nmc={1: 1})
    unresolved = np.ones(n_max + 1, dtype=np.int64)
    unresolved[:2] = 0
    r = 0
    ceiling = 2 * lambda_g(n_max, g) + 1  # every n <= n_max has a g-ary chain this short
    while unresolved.any():
        r += 1
        if r > ceiling:
            raise AssertionError(f"targets left unresolved past length {ceiling}")
        if _level_memory(g_eff, r) > MAX_LEVEL_ENTRIES:
            table.partial = True
            exc = LimitExceeded("enumeration table entries", MAX_LEVEL_ENTRIES)
            exc.partial = _finish(table)
            raise exc
        status, hits, used = search_level(g_eff, r, unresolved, budget - table.node_count)
        table.node_count += int(used)
        if status == LEVEL_OVER_BUDGET:
            table.partial = True
            exc = LimitExceeded("enumeration nodes", budget)
            exc.partial = _finish(table)
            raise exc
        for t in np.flatnonzero(hits):
            table.l[int(t)] = r
            table.nmc[int(t)] = int(hits[t])
        unresolved[hits > 0] = 0
    table.l = dict(sorted(table.l.items()))
    table.nmc = dict(sorted(table.nmc.items()))
    return _finish(table)


@dataclass(frozen=True)
class SubadditivityReport:
    g: int
    grid_max: int
    checked: int
    violations: tuple[tuple[int, int, int, int, int], ...]  # (m, n, l(mn), l(m), l(n))

    @property
    def ok(self) -> bool:
        return not self.violations


def subadditivity_check(g: int, grid_max: int, budget: int | None = None) -> SubadditivityReport:
    """Check l_g(mn) <= l_g(m) + l_g(n) for 2 <= m, n <= grid_max with exact values."""
    memo: dict[int, int] = {}

    def exact(n: int) -> int:
        if n not in memo:
            memo[n] = l_g_exact(n, g, budget).l
        return memo[n]

    violations = []
    checked = 0
    for m in range(2, grid_max + 1):
        for n in range(m, grid_max + 1):
            checked += 1
            lmn, lm, ln = exact(m * n), exact(m), exact(n)
            if lmn > lm + ln:
                violations.append((m, n, lmn, lm, ln))
    return SubadditivityReport(g, grid_max, checked, tuple(violations))


"""Chain construction: factor method, m-ary method, tree method.

All three return a :class:`~gchain.chain.Chain` whose steps are the
derivations the method itself used, deduplicated and sorted ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from ._tree_kernel import NODE_LIMIT, WORK_LIMIT, grow
from .chain import Chain, ChainBuilder, digits, lambda_g, mu_m, repeat, validate
from .config import MAX_VALUE, budgets
from .errors import LimitExceeded, Overflow
from .factorize import factor

# best_method only consults the tree method up to this target
TREE_LIMIT = 2**14
# odometer moves allowed per tree node before giving up (matters for large g)
TREE_WORK_PER_NODE = 1000


def _check_target(d: int, g: int) -> None:
    if g < 2:
        raise ValueError("g must be at least 2")
    if d < 1:
        raise ValueError("target must be positive")
    if d > MAX_VALUE:
        raise Overflow(f"{d} exceeds 2**63 - 1")


def _trivial(d: int, g: int) -> Chain:
    # d <= g: one step of d ones
    if d == 1:
        return Chain(g, (1,), ())
    return Chain(g, (1, d), (tuple(repeat(0, d)),))


# -- factor method -----------------------------------------------------------


def _divisors(primes: tuple[int, ...]) -> list[int]:
    divs = {1}
    for p in primes:
        divs |= {q * p for q in divs}
    return sorted(divs)


def _split_point(d: int, g: int, reorder: bool) -> int:
    """The cofactor q of d that the composite case builds first."""
    primes = factor(d).primes
    if reorder:
        proper = _divisors(primes)[1:-1]
        above = [q for q in proper if q >= g]
        return above[0] if above else proper[-1]
    prod = 1
    for j, p in enumerate(primes, start=1):
        prod *= p
        if prod >= g:
            return prod if j < len(primes) else prod // p
    raise AssertionError("unreachable: d > g")


@lru_cache(maxsize=65536)
def _fac(d: int, g: int, reorder: bool) -> Chain:
    if d <= g:
        return _trivial(d, g)
    b = ChainBuilder(g)
    primes = factor(d).primes
    if len(primes) == 1:
        r = d % g
        q = (d - r) // g
        b.add_chain(_fac(q, g, reorder))
        b.add(d - r, repeat(q, g))
        b.add(d, [d - r] + repeat(1, r))
    else:
        q = _split_point(d, g, reorder)
        b.add_chain(_fac(q, g, reorder))
        b.add_chain(_fac(d // q, g, reorder), factor=q)
    return b.build(d)


def factor_method(d: int, g: int, reorder: bool = False) -> Chain:
    """Chain from the recursive factor construction.

    Prime d > g goes through ``(d - d mod g) / g``; composite d is split at
    the shortest ascending prime-factor prefix whose product reaches g.  With
    ``reorder`` the split uses the smallest proper divisor >= g instead.
    """
    _check_target(d, g)
    return _fac(d, g, reorder)


# -- m-ary method --------------------------------------------------------------


@dataclass(frozen=True)
class MAryPlan:
    d: int
    g: int
    m: int
    digits: tuple[int, ...]
    regime: str
    varsigma: Chain | None

    @property
    def k(self) -> int:
        return len(self.digits) - 1

    def bound(self) -> int:
        """Length guaranteed by the construction for this plan."""
        mu = sum(1 for x in self.digits if x)
        if self.m <= self.g:
            return self.k + mu
        return (self.m - self.g + 1) + self.k * self.varsigma.length + (mu - 1)


def power_bound(d: int, g: int, m: int) -> int | None:
    """``m - g + floor(log_g d) + mu_m(d)`` when m is a power of g, else None."""
    p = g
    while p < m:
        p *= g
    if p != m:
        return None
    return m - g + lambda_g(d, g) + mu_m(d, m)


def default_varsigma(m: int, g: int) -> Chain:
    """Shortest of the factor, g-ary and (small m) tree chains for m."""
    options = [factor_method(m, g), m_ary_method(m, g, g)]
    if m <= TREE_LIMIT:
        options.append(tree_method(m, g))
    return min(options, key=lambda c: c.length)


def plan_m_ary(d: int, g: int, m: int, varsigma: Chain | None = None) -> MAryPlan:
    _check_target(d, g)
    if m < 2:
        raise ValueError("radix must be at least 2")
    regime = "m<g" if m < g else "m=g" if m == g else "m>g"
    if m > g:
        if varsigma is None:
            varsigma = default_varsigma(m, g)
        if varsigma.d != m or varsigma.g > g:
            raise ValueError(f"varsigma must be a {g}-chain for {m}")
    else:
        varsigma = None
    return MAryPlan(d, g, m, tuple(digits(d, m)), regime, varsigma)


def _greedy_sum(value: int, pool: list[int], g: int) -> list[int] | None:
    """Write value as 2..g elements of pool (descending, ones available)."""
    rest, terms = value, []
    for v in pool:
        if v >= value:
            continue
        while v <= rest and len(terms) < g:
            terms.append(v)
            rest -= v
        if rest == 0:
            break
    return terms if rest == 0 and len(terms) >= 2 else None


def _run_constant(b: ChainBuilder, c: int) -> None:
    """Produce c from what b holds, walking down through c-1, c-2, ... as needed."""
    pending = []
    t = c
    while t not in b:
        terms = _greedy_sum(t, sorted(b.values, reverse=True), b.g)
        if terms is not None:
            b.add(t, terms)
            break
        pending.append(t)
        t -= 1
    for s in reversed(pending):
        b.add(s, [s - 1, 1])


def _run_cost(b: ChainBuilder, c: int) -> int:
    pool = sorted(b.values, reverse=True)
    t, cost = c, 0
    while t not in b:
        cost += 1
        if _greedy_sum(t, pool, b.g) is not None:
            break
        t -= 1
    return cost


def _mixed_constant(b: ChainBuilder, c: int) -> None:
    """Produce c by whichever of the run, factor, g-ary or tree chains adds least."""
    if c in b:
        return
    best_cost, best_chain = _run_cost(b, c), None
    options = [factor_method(c, b.g), m_ary_method(c, b.g, b.g)]
    if c <= TREE_LIMIT:
        options.append(tree_method(c, b.g))
    for option in options:
        cost = sum(1 for v in option.elements if v not in b)
        if cost < best_cost:
            best_cost, best_chain = cost, option
    if best_chain is None:
        _run_constant(b, c)
    else:
        b.add_chain(best_chain)


def _build_m_ary(plan: MAryPlan, mixed: bool) -> Chain:
    g, m = plan.g, plan.m
    top, lower = plan.digits[0], plan.digits[1:]
    b = ChainBuilder(g)
    if 1 < top < g:
        b.add(top, repeat(1, top))
    if m > g:
        make = _mixed_constant if mixed else _run_constant
        for c in sorted({x for x in plan.digits if x >= g}):
            make(b, c)
    acc = top
    for digit in lower:
        if m <= g:
            b.add(acc * m, repeat(acc, m))
        else:
            b.add_chain(plan.varsigma, factor=acc)
        acc *= m
        if digit:
            b.add(acc + digit, [acc] + repeat(1, digit) if digit < g else [acc, digit])
            acc += digit
    return b.build(plan.d)


def m_ary_method(d: int, g: int, m: int, varsigma: Chain | None = None) -> Chain:
    """Digit-by-digit chain from the base-m expansion of d.

    For m <= g each multiplication by m is a single m-fold step.  For m > g
    it replays ``varsigma`` (a g-chain for m) scaled by the running value,
    and only digits >= g that actually occur are produced as constants.
    """
    plan = plan_m_ary(d, g, m, varsigma)
    chain = _build_m_ary(plan, mixed=False)
    if m > g and any(x >= g for x in plan.digits):
        alt = _build_m_ary(plan, mixed=True)
        if alt.length < chain.length:
            chain = alt
    return chain


# -- tree method ---------------------------------------------------------------


@dataclass(frozen=True)
class TreeLevel:
    index: int
    nodes: tuple[tuple[int, int], ...]  # (value, parent); parent 0 for the root


class Tree(NamedTuple):
    g: int
    limit: int
    levels: list[TreeLevel]
    parent: dict[int, int]
    level_of: dict[int, int]

    def path(self, value: int) -> list[int]:
        out = [value]
        while out[-1] != 1:
            out.append(self.parent[out[-1]])
        return out[::-1]


def _grow(g: int, limit: int, stop_at: int, node_limit: int | None):
    if node_limit is None:
        node_limit = budgets().tree_nodes
    status, values, parents, levels, _ = grow(g, limit, stop_at, node_limit, TREE_WORK_PER_NODE * node_limit)
    if status == NODE_LIMIT:
        raise LimitExceeded("tree nodes", node_limit)
    if status == WORK_LIMIT:
        raise LimitExceeded("tree sum listing", TREE_WORK_PER_NODE * node_limit)
    return values, parents, levels


def build_tree(g: int, limit: int, stop_at: int | None = None, node_limit: int | None = None) -> Tree:
    """Grow the tree level by level, keeping only values <= limit.

    Each node n receives, in increasing order, every sum of 2..g elements
    of its root path that is not in the tree yet.  Nodes of a level are
    expanded left to right, so the leftmost candidate parent claims a value.
    Growth stops once ``stop_at`` is attached or nothing new fits.
    """
    values, parents, levels = _grow(g, limit, stop_at or 0, node_limit)
    vals = values.tolist()
    parent = {1: 0}
    level_of = {}
    by_level: dict[int, list[tuple[int, int]]] = {}
    for v, p, lv in zip(vals, parents.tolist(), levels.tolist()):
        parent[v] = vals[p] if p >= 0 else 0
        level_of[v] = lv
        by_level.setdefault(lv, []).append((v, parent[v]))
    tree_levels = [TreeLevel(lv, tuple(nodes)) for lv, nodes in sorted(by_level.items())]
    return Tree(g, limit, tree_levels, parent, level_of)


@lru_cache(maxsize=32)
def shared_tree(g: int, limit: int) -> Tree:
    """Complete tree over [1, limit]; paths agree with per-target trees."""
    return build_tree(g, limit)


def tree_method(d: int, g: int, node_limit: int | None = None) -> Chain:
    """Root-to-d path of the tree, as a chain."""
    _check_target(d, g)
    if d == 1:
        return Chain(g, (1,), ())
    values, parents, _ = _grow(g, d, d, node_limit)
    path, j = [], len(values) - 1  # growth stops right after attaching d
    while j >= 0:
        path.append(int(values[j]))
        j = int(parents[j])
    return validate(path[::-1], g)


def tree_chain_from(tree: Tree, d: int) -> Chain:
    if d > tree.limit:
        raise ValueError(f"{d} lies outside the tree (limit {tree.limit})")
    return validate(tree.path(d), tree.g)


# -- best of all ---------------------------------------------------------------


class Candidate(NamedTuple):
    method: str
    m: int | None
    chain: Chain


def candidates(d: int, g: int) -> list[Candidate]:
    """Every method's chain for d, in tie-break order."""
    _check_target(d, g)
    out = [Candidate("factor", None, factor_method(d, g))]
    m = g
    for _ in range(3):
        if m > MAX_VALUE:
            break
        out.append(Candidate("mary", m, m_ary_method(d, g, m)))
        m *= g
    if d <= TREE_LIMIT:
        bucket = max(1024, 1 << (d - 1).bit_length())
        out.append(Candidate("tree", None, tree_chain_from(shared_tree(g, bucket), d)))
    return out


def best_candidate(d: int, g: int) -> Candidate:
    return min(candidates(d, g), key=lambda c: c.chain.length)


def best_method(d: int, g: int) -> Chain:
    """Shortest chain among the factor, m-ary (m = g, g^2, g^3) and tree methods."""
    return best_candidate(d, g).chain

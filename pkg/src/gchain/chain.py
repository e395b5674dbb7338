"""Generalized addition chains and the primitives built on them.

A g-addition chain for d is an ascending sequence ``1 = a_0 < a_1 < ... < a_r = d``
in which every ``a_i`` (i >= 1) is the sum of between 2 and g earlier terms,
repetition allowed.  Chains here always carry an explicit derivation per
element so that consumers (validation, program compilation, serialization)
never have to rediscover it.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import MAX_STEP_SUMMANDS, MAX_VALUE, budgets
from .errors import LimitExceeded, NotAChain, Overflow

# Sorted indices (with multiplicity) of the earlier elements summed by one step.
Step = tuple[int, ...]


def _check_domain(value: int) -> int:
    if value > MAX_VALUE:
        raise Overflow(f"{value} exceeds 2**63 - 1")
    return value


@dataclass(frozen=True)
class Chain:
    g: int
    elements: tuple[int, ...]
    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "steps", tuple(tuple(sorted(s)) for s in self.steps))
        if self.g < 2:
            raise ValueError("g must be at least 2")
        els = self.elements
        if not els or els[0] != 1:
            raise NotAChain(0, "chain must start with 1")
        if len(self.steps) != len(els) - 1:
            raise ValueError("need exactly one step per element after the first")
        for i, step in enumerate(self.steps, start=1):
            _check_domain(els[i])
            if els[i] <= els[i - 1]:
                raise NotAChain(i, "elements must be strictly increasing")
            if not 2 <= len(step) <= self.g:
                raise NotAChain(i, f"step uses {len(step)} summands, allowed 2..{self.g}")
            if step[0] < 0 or step[-1] >= i:
                raise NotAChain(i, "step references a later element")
            if sum(els[j] for j in step) != els[i]:
                raise NotAChain(i, "summands do not add up")

    @property
    def d(self) -> int:
        return self.elements[-1]

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    def __len__(self) -> int:
        return len(self.elements)


def repeat(value: int, count: int) -> list[int]:
    """``count`` copies of value as step summands, refusing absurd counts."""
    if count > MAX_STEP_SUMMANDS:
        raise LimitExceeded("summands per step", MAX_STEP_SUMMANDS)
    return [value] * count


def length(chain: Chain) -> int:
    """Number of terms following the leading 1."""
    return len(chain.elements) - 1


class ChainBuilder:
    """Accumulates values with derivations, dropping duplicates.

    Derivations are recorded by *value*, so pieces built in any order can be
    merged and the result is re-indexed ascending by :meth:`build`.  The
    first derivation recorded for a value wins.
    """

    def __init__(self, g: int):
        if g < 2:
            raise ValueError("g must be at least 2")
        self.g = g
        self._derivation: dict[int, tuple[int, ...]] = {1: ()}

    def __contains__(self, value: int) -> bool:
        return value in self._derivation

    def __len__(self) -> int:
        return len(self._derivation)

    @property
    def values(self) -> list[int]:
        return sorted(self._derivation)

    def add(self, value: int, summands: Sequence[int]) -> None:
        if value in self._derivation:
            return
        _check_domain(value)
        if not 2 <= len(summands) <= self.g:
            raise ValueError(f"{value}: {len(summands)} summands, allowed 2..{self.g}")
        missing = [s for s in summands if s not in self._derivation]
        if missing:
            raise ValueError(f"{value}: summands {missing} not produced yet")
        if sum(summands) != value:
            raise ValueError(f"{value}: summands {list(summands)} do not add up")
        self._derivation[value] = tuple(summands)

    def add_chain(self, chain: Chain, factor: int = 1) -> None:
        """Replay ``factor * chain``; ``factor`` itself must already be present."""
        if chain.g > self.g:
            raise ValueError("cannot merge a chain with a larger arity bound")
        if factor not in self._derivation:
            raise ValueError(f"scale factor {factor} not produced yet")
        els = chain.elements
        for value, step in zip(els[1:], chain.steps):
            self.add(factor * value, [factor * els[j] for j in step])

    def build(self, target: int | None = None) -> Chain:
        """Return the chain, keeping only the values ``target`` depends on.

        ``target`` defaults to the largest recorded value.
        """
        if target is None:
            target = max(self._derivation)
        if target not in self._derivation:
            raise ValueError(f"{target} was never produced")
        needed = {1}
        stack = [target]
        while stack:
            v = stack.pop()
            if v in needed:
                continue
            needed.add(v)
            stack.extend(self._derivation[v])
        values = sorted(needed)
        index = {v: i for i, v in enumerate(values)}
        steps = [tuple(sorted(index[s] for s in self._derivation[v])) for v in values[1:]]
        return Chain(self.g, tuple(values), tuple(steps))


def find_derivation(prefix: Sequence[int], target: int, g: int, limit: int | None = None) -> Step | None:
    """Indices of at most g (and at least 2) prefix elements summing to ``target``.

    ``prefix`` must be strictly increasing and start with 1.  Fewest summands
    win; among those, larger summands are preferred.  Returns ``None`` when no
    derivation exists; raises :class:`LimitExceeded` after ``limit`` partial
    sums.
    """
    if limit is None:
        limit = budgets().validate_partial_sums
    position = {v: i for i, v in enumerate(prefix)}
    failed: set[tuple[int, int, int]] = set()
    visited = 0

    def search(rem: int, count: int, hi: int) -> list[int] | None:
        # rem must be written as exactly `count` elements with index <= hi
        nonlocal visited
        visited += 1
        if visited > limit:
            raise LimitExceeded("validate partial sums", limit)
        if count == 1:
            j = position.get(rem)
            return [j] if j is not None and j <= hi else None
        key = (rem, count, hi)
        if key in failed:
            return None
        j = min(hi, bisect_right(prefix, rem - (count - 1)) - 1)
        while j >= 0 and prefix[j] * count >= rem:
            found = search(rem - prefix[j], count - 1, j)
            if found is not None:
                found.append(j)
                return found
            j -= 1
        failed.add(key)
        return None

    top = len(prefix) - 1
    for count in range(2, g + 1):
        if prefix[top] * count < target:
            continue
        if count > target:
            break
        found = search(target, count, top)
        if found is not None:
            return tuple(sorted(found))
    return None


def validate(elements: Iterable[int], g: int, limit: int | None = None) -> Chain:
    """Check that ``elements`` form a g-addition chain and attach derivations."""
    if g < 2:
        raise ValueError("g must be at least 2")
    els = list(elements)
    if not els or els[0] != 1:
        raise NotAChain(0, "chain must start with 1")
    steps = []
    for i in range(1, len(els)):
        _check_domain(els[i])
        if els[i] <= els[i - 1]:
            raise NotAChain(i, "elements must be strictly increasing")
        step = find_derivation(els[:i], els[i], g, limit)
        if step is None:
            raise NotAChain(i)
        steps.append(step)
    return Chain(g, tuple(els), tuple(steps))


def scale(chain: Chain, m: int) -> list[int]:
    """Element-wise ``m * chain``; the steps carry over index for index."""
    if m < 1:
        raise ValueError("scale factor must be positive")
    return [_check_domain(m * v) for v in chain.elements]


def concat_scaled(prefix: Chain, suffix: Chain) -> Chain:
    """Chain for ``prefix.d * suffix.d``: the prefix followed by the scaled suffix."""
    if prefix.g != suffix.g:
        raise ValueError("chains must share g")
    _check_domain(prefix.d * suffix.d)
    builder = ChainBuilder(prefix.g)
    builder.add_chain(prefix)
    builder.add_chain(suffix, factor=prefix.d)
    return builder.build(prefix.d * suffix.d)


def lambda_g(n: int, g: int) -> int:
    """floor(log_g n), by integer multiplication only."""
    if n < 1 or g < 2:
        raise ValueError("need n >= 1 and g >= 2")
    e, p = 0, g
    while p <= n:
        p *= g
        e += 1
    return e


def ceil_log(n: int, g: int) -> int:
    """Smallest e with g**e >= n."""
    if n < 1 or g < 2:
        raise ValueError("need n >= 1 and g >= 2")
    e, p = 0, 1
    while p < n:
        p *= g
        e += 1
    return e


def digits(n: int, m: int) -> list[int]:
    """Base-m digits of n, most significant first."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    out = []
    while n:
        n, r = divmod(n, m)
        out.append(r)
    return out[::-1]


def mu_m(n: int, m: int) -> int:
    """Number of nonzero base-m digits of n."""
    return sum(1 for x in digits(n, m) if x)

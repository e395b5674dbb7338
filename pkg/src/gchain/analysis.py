"""Method comparisons on concrete families, asymptotic checks, Scholz-Brauer probe."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .chain import Chain, lambda_g
from .config import MAX_VALUE
from .errors import ConditionUnmet, LimitExceeded, Overflow
from .factorize import factor, is_prime
from .methods import best_method, factor_method, m_ary_method, tree_method
from .optimal import l_g_exact

ROWS = range(1, 8)


@dataclass(frozen=True)
class ComparisonRow:
    row: int
    condition: str
    params: dict
    d: int
    method_a: str
    chain_a: Chain
    method_b: str
    chain_b: Chain
    # rows 4-6 also claim that the tree method beats the factor method
    secondary: ComparisonRow | None = None
    notes: tuple[str, ...] = ()

    @property
    def length_a(self) -> int:
        return self.chain_a.length

    @property
    def length_b(self) -> int:
        return self.chain_b.length

    @property
    def verdict(self) -> bool:
        ok = self.length_a < self.length_b
        if self.secondary is not None:
            ok = ok and self.secondary.verdict
        return ok

    def summary(self) -> str:
        mark = "PASS" if self.verdict else "FAIL"
        line = f"{self.method_a} {self.length_a} < {self.method_b} {self.length_b}"
        if self.secondary is not None:
            s = self.secondary
            line += f"; {s.method_a} {s.length_a} < {s.method_b} {s.length_b}"
        return f"{line}: {mark}"


def _prime_power(n: int) -> tuple[int, int] | None:
    """(p, alpha) with n = p**alpha, or None."""
    if n < 2:
        return None
    primes = factor(n).primes
    if len(set(primes)) != 1:
        return None
    return primes[0], len(primes)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _condition(row: int, g: int, k: int) -> tuple[str, dict]:
    """Check the row's precondition and return its text and parameters."""
    if row not in ROWS:
        raise ConditionUnmet(f"row must be in 1..7, got {row}")
    if g < 2:
        raise ConditionUnmet("g must be at least 2")
    if k < 0:
        raise ConditionUnmet("k must be non-negative")
    if row == 1:
        text = "g+1 not a prime power"
        if _prime_power(g + 1):
            raise ConditionUnmet(f"row 1 needs g+1 not a prime power, but g+1 = {g + 1} is one")
        return text, {"g": g}
    if row == 2:
        text = "g > 2 prime, g+1 not a power of 2"
        if g <= 2 or not is_prime(g):
            raise ConditionUnmet(f"row 2 needs g > 2 prime, got g = {g}")
        if _is_power_of_two(g + 1):
            raise ConditionUnmet(f"row 2 needs g+1 not a power of 2, but g+1 = {g + 1}")
        return text, {"g": g, "k": k}
    if row == 3:
        text = "g+1 = p^alpha with p > 2 prime, g > 2"
        pp = _prime_power(g + 1)
        if g <= 2 or pp is None or pp[0] == 2:
            raise ConditionUnmet(f"row 3 needs g > 2 and g+1 a power of an odd prime, got g+1 = {g + 1}")
        return text, {"g": g, "p": pp[0], "alpha": pp[1]}
    if row == 4:
        text = "g not a prime power"
        if _prime_power(g):
            raise ConditionUnmet(f"row 4 needs g not a prime power, but g = {g} is one")
        return text, {"g": g, "k": k}
    if row == 5:
        text = "g = p^alpha with p > 2 prime, alpha > 1"
        pp = _prime_power(g)
        if pp is None or pp[0] == 2 or pp[1] < 2:
            raise ConditionUnmet(f"row 5 needs g = p^alpha with p > 2 and alpha > 1, got g = {g}")
        return text, {"g": g, "k": k, "p": pp[0], "alpha": pp[1]}
    if row == 6:
        text = "g = p prime, p > 2"
        if g <= 2 or not is_prime(g):
            raise ConditionUnmet(f"row 6 needs g an odd prime, got g = {g}")
        return text, {"g": g, "k": k, "p": g}
    text = "g >= 3"
    if g < 3:
        raise ConditionUnmet("row 7 needs g >= 3 (2g+1 is not a single step from 1, g when g = 2)")
    return text, {"g": g, "k": k}


def witness(row: int, g: int, k: int = 0) -> int:
    """The row's family member for (g, k); conditions are not checked."""
    if row == 1:
        d = (g + 1) ** 2
    elif row == 2:
        d = g**k * (g + 1) ** 2
    elif row == 3:
        d = 2 * (g + 1) ** 2
    elif row == 4:
        d = g ** (2 + k)
    elif row == 5:
        p, alpha = _prime_power(g)
        d = 2 * p ** (k * alpha + 1)
    elif row == 6:
        d = (g - 1) ** 2 * g ** (2 * k)
    elif row == 7:
        d = g ** (2 + k) * (2 * g + 1)
    else:
        raise ConditionUnmet(f"row must be in 1..7, got {row}")
    if d > MAX_VALUE:
        raise Overflow(f"witness {d} exceeds 2**63 - 1")
    return d


def table1_row(row: int, g: int, k: int = 0) -> ComparisonRow:
    """Build the row's witness and run both of its methods on it."""
    text, params = _condition(row, g, k)
    d = witness(row, g, k)
    factor_chain = factor_method(d, g)
    gary = m_ary_method(d, g, g)
    notes: list[str] = []
    if row in (1, 2, 3):
        if row == 2 and factor_chain.length > k + 3:
            notes.append(f"factor length {factor_chain.length} exceeds k+3 = {k + 3}")
        return ComparisonRow(row, text, params, d, "factor", factor_chain, "g-ary", gary, notes=tuple(notes))
    if row == 7:
        return ComparisonRow(row, text, params, d, "tree", tree_method(d, g), "g-ary", gary)
    if row == 6:
        a_name, a_chain = "g^2-ary", m_ary_method(d, g, g * g)
    else:
        a_name, a_chain = "g-ary", gary
    tree = ComparisonRow(row, text, params, d, "tree", tree_method(d, g), "factor", factor_chain)
    return ComparisonRow(row, text, params, d, a_name, a_chain, "factor", factor_chain, secondary=tree)


# two in-condition instances per row
DEFAULT_GRID: tuple[tuple[int, int, int], ...] = (
    (1, 5, 0),
    (1, 11, 0),
    (2, 5, 0),
    (2, 11, 1),
    (3, 8, 0),
    (3, 24, 0),
    (4, 6, 0),
    (4, 10, 1),
    (5, 9, 1),
    (5, 25, 1),
    (6, 5, 0),
    (6, 7, 1),
    (7, 3, 0),
    (7, 5, 1),
)


# -- Scholz-Brauer probe -----------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    g: int
    n: int
    worst_d: int
    lhs: int
    exact: bool  # False: lhs is an achieved length from best_method
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def worst_case(g: int, n: int) -> int:
    """(g^n - 1) + sum_{j=1}^{g-2} j g^j."""
    d = g**n - 1 + sum(j * g**j for j in range(1, g - 1))
    if d > MAX_VALUE:
        raise Overflow(f"{d} exceeds 2**63 - 1")
    return d


def scholz_brauer_probe(g: int, n: int, budget: int | None = None) -> ProbeResult:
    """Compare the chain length of the worst-case g-ary input with n - 1 + l_g(n).

    Reports the comparison; the inequality is an open question for g > 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    d = worst_case(g, n)
    try:
        lhs, exact = l_g_exact(d, g, budget).l, True
    except LimitExceeded:
        lhs, exact = best_method(d, g).length, False
    rhs = n - 1 + l_g_exact(n, g, budget).l
    return ProbeResult(g, n, d, lhs, exact, rhs)


# -- constructive bound ------------------------------------------------------


@dataclass(frozen=True)
class ConstructiveBound:
    n: int
    g: int
    k: int
    fallback: bool  # the prescribed k was below 1
    bound: Fraction | float
    achieved: int

    @property
    def ceiling(self) -> int:
        return math.ceil(self.bound)

    @property
    def ok(self) -> bool:
        return self.achieved <= self.ceiling


def prescribed_k(n: int, g: int) -> int | None:
    """floor(lambda(lambda(n)) - 2 lambda(lambda(lambda(n)))), None when undefined."""
    a = lambda_g(n, g)
    if a < 1:
        return None
    b = lambda_g(a, g)
    if b < 1:
        return None
    return b - 2 * lambda_g(b, g)


def log_g(n: int, g: int) -> Fraction | float:
    """log_g n, exact when n is a power of g."""
    lam = lambda_g(n, g)
    if g**lam == n:
        return Fraction(lam)
    return math.log(n) / math.log(g)


def constructive_upper(n: int, g: int) -> ConstructiveBound:
    """The g^k-ary chain for n against g^k + ((k+1)/k) log_g n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_VALUE:
        raise Overflow(f"{n} exceeds 2**63 - 1")
    k = prescribed_k(n, g)
    fallback = k is None or k < 1
    if fallback:
        k = 1
    m = g**k
    if m > MAX_VALUE:
        raise Overflow(f"radix {m} exceeds 2**63 - 1")
    bound = g**k + Fraction(k + 1, k) * log_g(n, g)
    achieved = m_ary_method(n, g, m).length
    return ConstructiveBound(n, g, k, fallback, bound, achieved)


# -- ratio trend ---------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticSample:
    g: int
    n: int
    lam: int
    achieved: int
    bound: float

    @property
    def ratio(self) -> float:
        return self.achieved / self.lam


@dataclass
class RatioScan:
    g: int
    seed: int
    samples: list[AsymptoticSample] = field(default_factory=list)

    def levels(self) -> list[int]:
        return sorted({s.lam for s in self.samples})

    def mean(self, level: int) -> float:
        rs = [s.ratio for s in self.samples if s.lam == level]
        return math.fsum(rs) / len(rs)

    def means(self) -> dict[int, float]:
        return {lv: self.mean(lv) for lv in self.levels()}

    def endpoints_ok(self) -> bool:
        """Mean ratio at the top level does not exceed the one at the bottom level."""
        lv = self.levels()
        return self.mean(lv[-1]) <= self.mean(lv[0])

    def monotone(self) -> bool:
        """Per-level means never increase from one level to the next."""
        m = list(self.means().values())
        return all(b <= a for a, b in zip(m, m[1:]))


def ratio_scan(g: int, lam_min: int, lam_max: int, samples_per_level: int = 50, seed: int = 0) -> RatioScan:
    """Best-method length over floor(log_g n) for uniform n at each level."""
    if lam_min < 1 or lam_max < lam_min:
        raise ValueError("need 1 <= lam_min <= lam_max")
    if g ** (lam_max + 1) - 1 > MAX_VALUE:
        raise Overflow(f"level {lam_max} needs n >= {g}**{lam_max}, beyond 2**63 - 1")
    rng = random.Random(seed)
    scan = RatioScan(g, seed)
    for lam in range(lam_min, lam_max + 1):
        for _ in range(samples_per_level):
            n = rng.randrange(g**lam, g ** (lam + 1))
            achieved = best_method(n, g).length
            bound = float(constructive_upper(n, g).bound)
            scan.samples.append(AsymptoticSample(g, n, lam, achieved, bound))
    return scan

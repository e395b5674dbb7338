"""64-bit integer factorization for the factor method.

Trial division by small primes, a deterministic Miller-Rabin test for the
64-bit range, and Brent's variant of Pollard rho for what is left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .config import MAX_VALUE
from .errors import Overflow

_TRIAL_BOUND = 1000
_SMALL_PRIMES = [p for p in range(2, _TRIAL_BOUND) if all(p % q for q in range(2, math.isqrt(p) + 1))]
# These bases decide primality for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    n: int
    primes: tuple[int, ...]

    def __post_init__(self):
        if math.prod(self.primes) != self.n:
            raise ValueError(f"factors {self.primes} do not multiply to {self.n}")
        if list(self.primes) != sorted(self.primes):
            raise ValueError("factors must be ascending")

    def multiplicities(self) -> dict[int, int]:
        """Prime -> exponent, in ascending prime order."""
        out: dict[int, int] = {}
        for p in self.primes:
            out[p] = out.get(p, 0) + 1
        return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:12]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """A nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")


def _split(n: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    f = _brent(n)
    _split(f, out)
    _split(n // f, out)


@lru_cache(maxsize=4096)
def factor(n: int) -> Factorization:
    """Complete prime factorization of ``n``, factors ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_VALUE:
        raise Overflow(f"{n} exceeds 2**63 - 1")
    primes: list[int] = []
    rest = n
    for p in _SMALL_PRIMES:
        if p * p > rest:
            break
        while rest % p == 0:
            primes.append(p)
            rest //= p
    if rest > 1:
        if rest < _TRIAL_BOUND * _TRIAL_BOUND:
            primes.append(rest)
        else:
            _split(rest, primes)
    return Factorization(n, tuple(sorted(primes)))


def is_prime_power(n: int) -> bool:
    return n > 1 and len(set(factor(n).primes)) == 1

"""Integer helpers: extended gcd, primes, primality and factorization."""

from __future__ import annotations

import math
import random
import time
from bisect import bisect_right
from functools import lru_cache


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def sieve(limit: int) -> list[int]:
    """Primes <= limit."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


@lru_cache(maxsize=4)
def _small_primes(limit: int) -> tuple[int, ...]:
    return tuple(sieve(limit))


def prime_pool(count: int = 2048, above: int = 2**15) -> tuple[int, ...]:
    """The ``count`` smallest primes greater than ``above``."""
    limit = max(1000, 2 * above)
    while True:
        ps = _small_primes(limit)
        start = bisect_right(ps, above)
        if len(ps) - start >= count:
            return ps[start : start + count]
        limit *= 2


# Bases that make Miller-Rabin exact below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_EXACT_BELOW = 3317044064679887385961981
_MR_ROUNDS = 40


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True if a proves n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Miller-Rabin; exact below 3.3e24, 40 fixed-seed random rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    if n < _MR_EXACT_BELOW:
        bases = _MR_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_MR_ROUNDS)]
    return not any(_mr_witness(a, d, s, n) for a in bases)


def pollard_brent(n: int, seed: int = 1, deadline: float | None = None) -> int | None:
    """A nontrivial factor of composite n, or None if the deadline passes."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                if deadline is not None and time.monotonic() > deadline:
                    return None
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


class Factorization(dict):
    """prime -> exponent, plus ``unfactored``: composite cofactors left over
    when the time budget ran out. The product of both parts is the input."""

    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        self.unfactored: dict[int, int] = {}

    @property
    def complete(self) -> bool:
        return not self.unfactored

    def value(self) -> int:
        out = 1
        for p, e in list(self.items()) + list(self.unfactored.items()):
            out *= p**e
        return out


TRIAL_LIMIT = 10**6


def factorize(n: int, time_budget: float = 10.0, trial_limit: int = TRIAL_LIMIT) -> Factorization:
    """Trial division up to ``trial_limit``, then Brent's rho on what is left."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = Factorization()
    for p in _small_primes(trial_limit):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    deadline = time.monotonic() + time_budget
    stack = [n]
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            out[c] = out.get(c, 0) + 1
            continue
        r = math.isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        f = pollard_brent(c, seed=len(out) + 1, deadline=deadline)
        if f is None:
            out.unfactored[c] = out.unfactored.get(c, 0) + 1
        else:
            stack += [f, c // f]
    res = Factorization(sorted(out.items()))
    res.unfactored = out.unfactored
    return res


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def ceil_sqrt(x: int) -> int:
    return math.isqrt(x - 1) + 1 if x > 0 else 0

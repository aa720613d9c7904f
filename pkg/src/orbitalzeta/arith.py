"""Integer arithmetic: factorisation, Kronecker symbols, divisors."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product

from .errors import GuardError, OrbitalZetaError

FACTOR_LIMIT = 1 << 96

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))]
# Deterministic for n < 3.3e24; the extra bases only make larger inputs safer.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise OrbitalZetaError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
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


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e)`` with primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)


def factor(n: int) -> Factorization:
    """Prime factorisation of a nonzero integer below 2**96 in absolute value."""
    if n == 0:
        raise OrbitalZetaError("cannot factor zero")
    if abs(n) >= FACTOR_LIMIT:
        raise GuardError("|n| >= 2^96 is outside the supported factorisation range")
    sign = -1 if n < 0 else 1
    m = abs(n)
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    rng = random.Random(m)
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            counts[x] = counts.get(x, 0) + 1
            continue
        d = _pollard_brent(x, rng)
        stack.extend((d, x // d))
    return Factorization(sign, tuple(sorted(counts.items())))


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    f = factor(n)
    out = [1]
    for p, e in f:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) on its full domain, including n <= 0."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_part(n: int) -> int:
    """Signed squarefree integer d with n = d * k**2."""
    out = -1 if n < 0 else 1
    for p, e in factor(n):
        if e % 2:
            out *= p
    return out


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_discriminant(n: int) -> bool:
    """True for nonsquare n congruent to 0 or 1 modulo 4."""
    return n % 4 in (0, 1) and not is_square(n)


def fundamental_discriminant(n: int) -> int:
    """Discriminant of Q(sqrt(n)) for a nonsquare integer n."""
    if n == 0 or is_square(n):
        raise OrbitalZetaError(f"{n} is a square")
    d = squarefree_part(n)
    return d if d % 4 == 1 else 4 * d


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1:
        return True
    if D in (0,) or is_square(D):
        return False
    return fundamental_discriminant(D) == D


def divisor_tuples(exponents: list[int]):
    """All exponent vectors bounded coordinatewise by ``exponents``."""
    return product(*(range(e + 1) for e in exponents))

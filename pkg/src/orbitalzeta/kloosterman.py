"""Kloosterman-type sums K_{a,d} over Q and the 2-part of their double series.

Conventions. A cell is indexed by (a, d, p, k, sign) where ``sign`` is the
sign in front of 4p^k in delta = tau^2 + sign*4p^k, so the characteristic
polynomial is X^2 - tau X - sign*p^k. With n(m) = m^2 + sign*4p^k,

    K_{a,d} = sum over m mod 4ad^2 with d^2 | n(m) [and n/d^2 = 0,1 mod 4]
              of (n(m)/d^2 | a)

the bracketed condition being dropped in the ``without-cc`` variant.
K~ = K/4 is multiplicative across coprime (a, d) pairs.

For a = 2^i (i >= 1) the summand only sees n/d^2 mod 8, which is periodic
in m with period 4d^2, and (x | 2^i) only depends on the parity of i. So
K_{2^i,d} = 2^(i-1) K_{2,d} (i odd) and 2^(i-2) K_{4,d} (i even), and the
a-sum of the 2-part collapses to a rational function of 2^-s.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import arith
from .errors import GuardError, OrbitalZetaError

CELL_LIMIT = 10**6
VARIANTS = ("with-cc", "without-cc")


def _sign(sign) -> int:
    if sign in ("+", 1, "+1"):
        return 1
    if sign in ("-", -1, "-1"):
        return -1
    raise OrbitalZetaError(f"sign must be + or -, got {sign!r}")


def _cc(variant) -> bool:
    if isinstance(variant, bool):
        return variant
    if variant not in VARIANTS:
        raise OrbitalZetaError(f"variant must be one of {VARIANTS}")
    return variant == "with-cc"


@lru_cache(maxsize=256)
def _kronecker_table(a: int) -> np.ndarray:
    """(r | a) for r mod 4a; the symbol is periodic in r with period dividing 4a."""
    return np.array([arith.kronecker(r, a) for r in range(4 * a)], dtype=np.int64)


def _passes(n: int, d: int, cc: bool) -> bool:
    if n % (d * d):
        return False
    return not cc or (n // (d * d)) % 4 in (0, 1)


def kloosterman(a: int, d: int, p: int, k: int, sign="+", variant="with-cc") -> int:
    """K_{a,d} by enumeration of the residues m mod 4ad^2."""
    if a < 1 or d < 1 or k < 0:
        raise OrbitalZetaError("need a, d >= 1 and k >= 0")
    if a * d * d > CELL_LIMIT:
        raise GuardError(f"a*d^2 = {a * d * d} exceeds {CELL_LIMIT}")
    c = _sign(sign) * 4 * p**k
    cc = _cc(variant)
    d2 = d * d
    # residues mod d^2 with d^2 | m^2 + c, then their lifts mod 4ad^2
    r = np.arange(d2, dtype=object if d2 > 3 * 10**9 else np.int64)
    roots = r[(r * r + c) % d2 == 0]
    if roots.size == 0:
        return 0
    m = (roots[None, :] + d2 * np.arange(4 * a)[:, None]).ravel().astype(object)
    q = (m * m + c) // d2
    if cc:
        q = q[np.isin(q % 4, (0, 1))]
    table = _kronecker_table(a)
    idx = np.array([int(x) % (4 * a) for x in q], dtype=np.int64)
    return int(table[idx].sum())


def kloosterman_brute(a: int, d: int, p: int, k: int, sign="+", variant="with-cc") -> int:
    """The same sum by a plain loop over every m mod 4ad^2 (test oracle)."""
    c = _sign(sign) * 4 * p**k
    cc = _cc(variant)
    total = 0
    for m in range(4 * a * d * d):
        n = m * m + c
        if _passes(n, d, cc):
            total += arith.kronecker(n // (d * d), a)
    return total


def congruence_predicate(m: int, d: int, p: int, k: int, sign="+", variant="with-cc") -> bool:
    """Whether the residue m passes the conditions of the cell."""
    return _passes(m * m + _sign(sign) * 4 * p**k, d, _cc(variant))


def normalized(a: int, d: int, p: int, k: int, sign="+", variant="with-cc") -> Fraction:
    return Fraction(kloosterman(a, d, p, k, sign, variant), 4)


# ---------------------------------------------------------------------------
# The 2-part of the double series
# ---------------------------------------------------------------------------


def square_roots_mod_power_of_two(c: int, e: int) -> list[int]:
    """All m mod 2^e with m^2 = c mod 2^e, lifted one bit at a time."""
    roots = [0]
    for i in range(e):
        mod = 1 << (i + 1)
        roots = [x for r in roots for x in (r, r + (1 << i)) if (x * x - c) % mod == 0]
    return roots


def _dyadic_cell_sums(j: int, p: int, k: int, sgn: int, cc: bool) -> tuple[int, int, int, int]:
    """(K_{1,d}, K_{2,d}, K_{4,d}, #roots) for d = 2^j via roots mod d^2."""
    c = sgn * 4 * p**k
    d2 = 1 << (2 * j)
    roots = square_roots_mod_power_of_two(-c, 2 * j)
    K1 = K2 = K4 = 0
    for r in roots:
        for t in range(4):
            m = r + t * d2
            q = (m * m + c) >> (2 * j)
            if cc and q % 4 not in (0, 1):
                continue
            K1 += 1
            # kronecker(q, 2^i) only depends on q mod 8, which has period 4d^2
            # in m, so the extra lifts mod 8d^2 and 16d^2 repeat these values
            chi2 = arith.kronecker(q, 2)
            K2 += 2 * chi2
            K4 += 4 * chi2 * chi2
    return K1, K2, K4, len(roots)


@dataclass(frozen=True)
class EulerFactor:
    k: int
    s: complex
    variant: str
    N: int
    p: int
    sign: int
    value: complex
    tail_bound: float
    # K~ data per d = 2^j: (j, K~_{1,d}, K~_{2,d}, K~_{4,d})
    cells: tuple[tuple[int, Fraction, Fraction, Fraction], ...]

    def closed_form(self) -> float:
        """(1 - 2^-(k+3)) / (1 - 2^-1)."""
        return (1 - 2.0 ** -(self.k + 3)) / 0.5

    def matches_closed_form(self, slack: float = 1e-12) -> bool:
        return abs(self.value - self.closed_form()) <= self.tail_bound + slack

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "s": [self.s.real, self.s.imag],
            "variant": self.variant,
            "N": self.N,
            "p": self.p,
            "sign": "+" if self.sign > 0 else "-",
            "value": [self.value.real, self.value.imag],
            "tail_bound": self.tail_bound,
            "closed_form": self.closed_form(),
            "within_tail": self.matches_closed_form(),
        }


def euler_factor_at_2(
    k: int, s: complex = 1, variant="without-cc", N: int = 12, p: int = 2, sign="-"
) -> EulerFactor:
    """sum over a = 2^i, d = 2^j (j <= N) of K~_{a,d} / (d^(2s+1) a^(s+1)).

    The a-sum is done in closed form (valid for Re s > 0); only d is
    truncated. For d = 2^j with 2j >= v_2(4p^k) + 3 the number of square
    roots of -sign*4p^k mod d^2 no longer changes, which turns the d-tail
    into a geometric series with ratio 2^-(2 Re s + 1).
    """
    s = complex(s)
    if s.real <= 0:
        raise OrbitalZetaError("the 2-part converges for Re s > 0 only")
    if not arith.is_prime(p):
        raise OrbitalZetaError(f"{p} is not prime")
    sgn, cc = _sign(sign), _cc(variant)
    x = cmath.exp(-s * math.log(2))
    geo = 1 / (1 - x * x)
    value = 0j
    cells = []
    for j in range(N + 1):
        K1, K2, K4, _ = _dyadic_cell_sums(j, p, k, sgn, cc)
        t0, t1, t2 = Fraction(K1, 4), Fraction(K2, 8), Fraction(K4, 16)
        cells.append((j, Fraction(K1, 4), Fraction(K2, 4), Fraction(K4, 4)))
        inner = float(t0) + float(t1) * x * geo + float(t2) * x * x * geo
        value += inner * cmath.exp(-j * (2 * s + 1) * math.log(2))
    # tail: |K~ sums| per d are at most #roots * (1 + |x|/(1-|x|))
    ax = abs(x)
    per_root = 1 + ax / (1 - ax)
    ratio = 2.0 ** -(2 * s.real + 1)
    stable = max(N + 1, -(-(arith.valuation(4 * p**k, 2) + 3) // 2))
    tail = 0.0
    for j in range(N + 1, stable + 1):
        R = len(square_roots_mod_power_of_two(-sgn * 4 * p**k, 2 * j))
        tail += R * per_root * ratio**j
    R = len(square_roots_mod_power_of_two(-sgn * 4 * p**k, 2 * stable))
    tail += R * per_root * ratio ** (stable + 1) / (1 - ratio)
    return EulerFactor(k, s, "with-cc" if cc else "without-cc", N, p, sgn, value, tail, tuple(cells))


def euler_factor_exact(k: int, variant="without-cc", N: int = 12, p: int = 2, sign="-") -> Fraction:
    """The truncated 2-part at s = 1 in exact rational arithmetic."""
    sgn, cc = _sign(sign), _cc(variant)
    x = Fraction(1, 2)
    geo = 1 / (1 - x * x)
    total = Fraction(0)
    for j in range(N + 1):
        K1, K2, K4, _ = _dyadic_cell_sums(j, p, k, sgn, cc)
        inner = Fraction(K1, 4) + Fraction(K2, 8) * x * geo + Fraction(K4, 16) * x * x * geo
        total += inner / Fraction(2) ** (3 * j)
    return total


def two_part_brute(k: int, s: int, variant, i_max: int, j_max: int, p: int = 2, sign="-") -> Fraction:
    """Direct finite double sum over a = 2^i, d = 2^j from enumerated cells."""
    total = Fraction(0)
    for i in range(i_max + 1):
        for j in range(j_max + 1):
            a, d = 1 << i, 1 << j
            total += normalized(a, d, p, k, sign, variant) / (Fraction(d) ** (2 * s + 1) * Fraction(a) ** (s + 1))
    return total


def box_sum(avals, dvals, p: int, k: int, sign, variant, s: int = 1) -> Fraction:
    """sum over the box of K~_{a,d} / (d^(2s+1) a^(s+1)) in exact arithmetic."""
    total = Fraction(0)
    for a in avals:
        for d in dvals:
            total += normalized(a, d, p, k, sign, variant) / (Fraction(d) ** (2 * s + 1) * Fraction(a) ** (s + 1))
    return total

"""Local zeta polynomials of monogenic quadratic orders.

For the order of depth n inside the maximal order of an unramified field,
a ramified field or the split algebra, the local zeta function is
``P(X) / V(X)`` with ``X = q^-s`` and

    R_n = 1 + qX^2 + ... + q^n X^(2n)         V = 1 - X
    U_n = (1 + X) R_(n-1) + q^n X^(2n)        V = 1 - X^2
    S_n = (1 - X) R_(n-1) + q^n X^(2n)        V = (1 - X)^2

Completing by ``q^(ns) V`` leaves the self-dual exponential polynomial
J~(s) = q^(ns) P(q^-s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .errors import GuardError, OrbitalZetaError
from .expoly import ExpPoly
from .fields import Lattice, LocalPrime
from .local import SplitType

ORACLE_LIMIT = 1 << 20


def _check_q(q: int) -> None:
    if q < 2:
        raise OrbitalZetaError(f"residue size {q} must be at least 2")
    f = arith.factor(q)
    if len(f.factors) != 1:
        raise OrbitalZetaError(f"residue size {q} is not a prime power")


def poly_mul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _r_coeffs(n: int, q: int) -> list[int]:
    if n < 0:
        return [0]
    out = [0] * (2 * n + 1)
    for i in range(n + 1):
        out[2 * i] = q**i
    return out


def _top(n: int, q: int) -> list[int]:
    out = [0] * (2 * n + 1)
    out[2 * n] = q**n
    return out


def _add(a, b) -> list[int]:
    m = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)]


def denominator(family: SplitType) -> list[int]:
    """V(X) for the family."""
    return {
        SplitType.RAMIFIED: [1, -1],
        SplitType.INERT: [1, 0, -1],
        SplitType.SPLIT: [1, -2, 1],
    }[family]


@dataclass(frozen=True)
class OrderZetaPolynomial:
    family: SplitType
    n: int
    q: int
    coeffs: tuple[int, ...]

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def is_self_dual(self) -> bool:
        """(qx^2)^n P(1/(qx)) = P(x), i.e. c_(2n-j) = q^(n-j) c_j."""
        n, q, c = self.n, self.q, self.coeffs
        return all(
            Fraction(c[2 * n - j]) == Fraction(q) ** (n - j) * c[j] for j in range(2 * n + 1)
        )

    def series(self, terms: int) -> list[int]:
        """First ``terms`` coefficients of P / V: raw ideal counts by index q^j."""
        v = denominator(self.family)
        out: list[int] = []
        for j in range(terms):
            c = self.coeffs[j] if j < len(self.coeffs) else 0
            # V has constant term 1
            c -= sum(v[i] * out[j - i] for i in range(1, min(len(v), j + 1)))
            out.append(c)
        return out

    def __str__(self) -> str:
        out = ""
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("X" if j == 1 else f"X^{j}")
            mag = str(abs(c)) if (abs(c) != 1 or j == 0) else ""
            if not out:
                out = ("-" if c < 0 else "") + mag + mono
            else:
                out += (" - " if c < 0 else " + ") + mag + mono
        return out or "0"


def order_polynomial(family: SplitType, n: int, q: int) -> OrderZetaPolynomial:
    if n < 0:
        raise OrbitalZetaError("depth must be nonnegative")
    _check_q(q)
    if family is SplitType.RAMIFIED:
        c = _r_coeffs(n, q)
    elif n == 0:
        c = [1]
    else:
        sign = 1 if family is SplitType.INERT else -1
        c = _add(poly_mul([1, sign], _r_coeffs(n - 1, q)), _top(n, q))
    c = c + [0] * (2 * n + 1 - len(c))
    return OrderZetaPolynomial(family, n, q, tuple(c))


def jtilde(poly: OrderZetaPolynomial) -> ExpPoly:
    """q^(ns) P(q^-s); the X^j coefficient sits on base q^(j-n)."""
    q, n = Fraction(poly.q), poly.n
    return ExpPoly.from_terms((q ** (j - n), c) for j, c in enumerate(poly.coeffs))


def jtilde_divisor_form(split: SplitType, n: int, q: int) -> ExpPoly:
    """q^(ns) sum_(j<=n) q^(j(1-2s)) (1 - chi q^-s)^[j<n]."""
    _check_q(q)
    Q = Fraction(q)
    chi = split.chi
    terms = []
    for j in range(n + 1):
        terms.append((Q ** (2 * j - n), Q**j))
        if j < n:
            terms.append((Q ** (2 * j - n + 1), -chi * Q**j))
    return ExpPoly.from_terms(terms)


def orbital_value(split: SplitType, m: int, q: int) -> Fraction:
    """Closed form of the local orbital integral, i.e. J~(1)."""
    if m < 0:
        raise OrbitalZetaError("depth must be nonnegative")
    Q = Fraction(q)
    if split is SplitType.SPLIT:
        return Q**m
    if split is SplitType.INERT:
        return (Q**m * (Q + 1) - 2) / (Q - 1)
    return (Q ** (m + 1) - 1) / (Q - 1)


# ---------------------------------------------------------------------------
# Brute-force ideal counts over Z_p
# ---------------------------------------------------------------------------


def _maximal_generator(split: SplitType, p: int) -> tuple[int, int]:
    """(t, d) with Delta a root of X^2 - tX + d generating the maximal order."""
    if split is SplitType.SPLIT:
        return (1, 0)
    if split is SplitType.RAMIFIED:
        return (0, -p)
    for t in range(p):
        for d in range(p):
            if all((x * x - t * x + d) % p for x in range(p)):
                return (t, d)
    raise AssertionError("no irreducible quadratic")  # pragma: no cover


def hnf_lattices(index: int):
    """Every sublattice of Z^2 of the given index, in Hermite normal form."""
    for a in arith.divisors(index):
        d = index // a
        for b in range(a):
            yield Lattice(a, b, d)


def is_stable(L: Lattice, t: int, d: int) -> bool:
    """L (coordinates in the basis 1, gamma) is closed under gamma.

    gamma * (x + y gamma) = -d y + (x + t y) gamma.
    """
    for x, y in L.basis():
        if not L.contains(-d * y, x + t * y):
            return False
    return True


def count_ideals_oracle(split: SplitType, n: int, q: LocalPrime | int, j_max: int) -> list[int]:
    """Ideals of index p^j (j <= j_max) in Z_p[p^n Delta], by enumeration.

    An ideal of index p^j contains p^j O, so it is a sublattice of Z^2 of
    that index; all of them are listed in Hermite form and kept when they
    are stable under multiplication by the generator. Returns raw counts,
    which are the coefficients of P / V (not of P).
    """
    if isinstance(q, LocalPrime):
        if not q.field.is_rational:
            raise OrbitalZetaError("the ideal-count oracle works over Z_p")
        p = q.p
    else:
        p = int(q)
    if not arith.is_prime(p):
        raise OrbitalZetaError(f"{p} is not prime")
    if p ** (2 * j_max) > ORACLE_LIMIT:
        raise GuardError(f"q^(2 j_max) = {p}^{2 * j_max} exceeds 2^20")
    t0, d0 = _maximal_generator(split, p)
    # gamma = p^n Delta has minimal polynomial X^2 - p^n t0 X + p^(2n) d0
    t, d = p**n * t0, p ** (2 * n) * d0
    counts = []
    for j in range(j_max + 1):
        counts.append(sum(1 for L in hnf_lattices(p**j) if is_stable(L, t, d)))
    return counts


def counts_times_denominator(counts: list[int], family: SplitType) -> list[int]:
    """Truncation of (sum counts_j X^j) * V(X) to the same length."""
    return poly_mul(counts, denominator(family))[: len(counts)]

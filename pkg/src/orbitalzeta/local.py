"""Local square classes, splitting of K(sqrt delta)/K, and the ideal S_delta.

Everything at a prime q is decided inside a finite quotient O_K / q^N, so
the tests at primes over 2 are plain enumerations over a handful of
residues. Two independent routes to the exponent of S_delta are provided:
the square-mod-4 scan in :func:`local_split_type` and the integrality
criterion in :func:`conductor_exponent`.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

from .errors import NotSquareMod4Error, OrbitalZetaError, SquareDeltaError
from .fields import (
    AlgebraicInt,
    BaseField,
    IdealData,
    LocalPrime,
    Lattice,
    is_square_in_field,
    prime_support,
    primes_above,
)


class SplitType(Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"

    @property
    def chi(self) -> int:
        return {"Split": 1, "Inert": -1, "Ramified": 0}[self.value]

    @classmethod
    def parse(cls, name: str) -> "SplitType":
        for t in cls:
            if t.value.lower() == name.lower() or t.name.lower() == name.lower():
                return t
        raise OrbitalZetaError(f"unknown split type {name!r}")

    def __str__(self) -> str:
        return self.value


def _elem(F: BaseField, x) -> AlgebraicInt:
    return x if isinstance(x, AlgebraicInt) else F(int(x))


def _two_adic(q: LocalPrime) -> int:
    """val_q(2)."""
    return q.e if q.p == 2 else 0


# ---------------------------------------------------------------------------
# Squares modulo 4 O_K
# ---------------------------------------------------------------------------


def _four(F: BaseField) -> Lattice | None:
    return None if F.is_rational else Lattice(4, 0, 4)


def square_residues_mod4(F: BaseField) -> frozenset[tuple[int, int]]:
    """Coordinates of the squares in O_K / 4 O_K."""
    if F.is_rational:
        return frozenset((x * x % 4, 0) for x in range(4))
    four = _four(F)
    out = set()
    for a in range(4):
        for b in range(4):
            y = F(a, b) * F(a, b)
            out.add(four.reduce(y.a, y.b))
    return frozenset(out)


def in_square_class_mod4(delta: AlgebraicInt) -> bool:
    """delta is congruent to a square modulo 4 O_K."""
    F = delta.field
    if F.is_rational:
        return delta.a % 4 in (0, 1)
    return _four(F).reduce(delta.a, delta.b) in square_residues_mod4(F)


def validate_delta(delta: AlgebraicInt) -> AlgebraicInt:
    """Reject zero, squares of K, and anything outside the squares mod 4."""
    if delta.is_zero():
        raise SquareDeltaError("delta = 0 is a square")
    if is_square_in_field(delta):
        raise SquareDeltaError(f"delta = {delta} is a square in {delta.field}")
    if not in_square_class_mod4(delta):
        raise NotSquareMod4Error(f"delta = {delta} is not a square modulo 4")
    return delta


# ---------------------------------------------------------------------------
# Local tests
# ---------------------------------------------------------------------------


def is_local_square(x: AlgebraicInt | int, q: LocalPrime) -> bool:
    """x is a square in the completion K_q.

    With a = val_q(x) even and u = x / pi^a, u is a square iff it is one
    modulo q (odd residue characteristic) or modulo 4*q (residue
    characteristic 2, Hensel). Both are tested as x - pi^a y^2 in q^(a+N)
    with y running over units modulo q^(N - val_q(2)).
    """
    x = _elem(q.field, x)
    if x.is_zero():
        raise OrbitalZetaError("0 has no square class")
    a = q.valuation(x)
    if a % 2:
        return False
    eps = _two_adic(q)
    pia = q.uniformizer**a
    need = a + 2 * eps + 1
    for y in q.units(eps + 1):
        if q.in_power(x - pia * y * y, need):
            return True
    return False


def square_mod4_at(delta: AlgebraicInt | int, q: LocalPrime, r: int) -> bool:
    """delta / pi^(2r) lies in O_{K_q} and is a square modulo 4 O_{K_q}."""
    return _square_mod4_at(_elem(q.field, delta), q, r)


@lru_cache(maxsize=1 << 16)
def _square_mod4_at(delta: AlgebraicInt, q: LocalPrime, r: int) -> bool:
    eps = _two_adic(q)
    if not q.in_power(delta, 2 * r):
        return False
    if eps == 0:
        return True
    pi2r = q.uniformizer ** (2 * r)
    need = 2 * r + 2 * eps
    # y^2 modulo q^(2e) only depends on y modulo q^e
    return any(q.in_power(delta - pi2r * y * y, need) for y in q.residues(eps))


def local_split_type(delta: AlgebraicInt | int, q: LocalPrime) -> tuple[SplitType, int]:
    """Splitting of q in K(sqrt delta) and n_q = val_q(S_delta)."""
    delta = validate_delta(_elem(q.field, delta))
    a = q.valuation(delta)
    if q.p != 2:
        n = a // 2
        if a % 2:
            return SplitType.RAMIFIED, n
        return (SplitType.SPLIT if is_local_square(delta, q) else SplitType.INERT), n
    n = max(r for r in range(a // 2 + 1) if square_mod4_at(delta, q, r))
    if is_local_square(delta, q):
        return SplitType.SPLIT, n
    # the class of delta / pi^(2n) is unramified exactly when it is a unit
    # square modulo 4; a positive leftover valuation forces ramification
    if a - 2 * n == 0:
        return SplitType.INERT, n
    return SplitType.RAMIFIED, n


def chi(delta: AlgebraicInt | int, q: LocalPrime) -> int:
    return local_split_type(delta, q)[0].chi


def conductor_exponent(tau: AlgebraicInt | int, det: AlgebraicInt | int, q: LocalPrime) -> int:
    """Largest j with (c + gamma) / pi^j integral over O_q for some c in O_q.

    gamma is a root of X^2 - tau*X + det. Writing beta = 2c + tau, the
    element is integral iff beta lies in q^j, beta = tau mod 2 and
    beta^2 - delta lies in 4 q^(2j). This never looks at square classes,
    so it is an independent route to val_q(S_delta).
    """
    F = q.field
    tau, det = _elem(F, tau), _elem(F, det)
    delta = tau * tau - 4 * det
    if delta.is_zero():
        raise SquareDeltaError("repeated eigenvalue")
    eps = _two_adic(q)
    best = 0
    for j in range(1, q.valuation(delta) // 2 + 1):
        pij = q.uniformizer**j
        ok = False
        for b in q.residues(eps):
            beta = pij * b
            if q.congruent(beta, tau, eps) and q.in_power(beta * beta - delta, 2 * j + 2 * eps):
                ok = True
                break
        if not ok:
            break
        best = j
    return best


# ---------------------------------------------------------------------------
# Global data
# ---------------------------------------------------------------------------


def s_delta(delta: AlgebraicInt | int, field: BaseField | None = None) -> IdealData:
    """The ideal S_delta with S_delta^2 = (delta) / disc(K(sqrt delta)/K)."""
    if field is None:
        field = delta.field if isinstance(delta, AlgebraicInt) else BaseField()
    delta = validate_delta(_elem(field, delta))
    pairs = []
    for q in prime_support(delta):
        _, n = local_split_type(delta, q)
        pairs.append((q, n))
    return IdealData.from_pairs(pairs)


def local_data(delta: AlgebraicInt | int, field: BaseField | None = None):
    """``[(q, SplitType, n_q)]`` for every prime q dividing (delta)."""
    if field is None:
        field = delta.field if isinstance(delta, AlgebraicInt) else BaseField()
    delta = validate_delta(_elem(field, delta))
    return [(q, *local_split_type(delta, q)) for q in prime_support(delta)]


def satisfies_congruence(I: IdealData, delta: AlgebraicInt | int) -> bool:
    """I^2 | (delta), and delta / pi^(2 val_q I) is a square mod 4 at each q | 2."""
    if not isinstance(delta, AlgebraicInt):
        F = I.factors[0][0].field if I.factors else BaseField()
        delta = F(int(delta))
    for q, k in I.factors:
        if not q.in_power(delta, 2 * k):
            return False
    for q in primes_above(delta.field, 2):
        if not square_mod4_at(delta, q, I.exponent(q)):
            return False
    return True


def delta_to_matrix(delta: AlgebraicInt | int, field: BaseField | None = None):
    """A companion matrix [[r, 1], [m, 0]] with r^2 + 4m = delta."""
    if field is None:
        field = delta.field if isinstance(delta, AlgebraicInt) else BaseField()
    F = field
    delta = _elem(F, delta)
    if delta.is_zero() or is_square_in_field(delta):
        raise SquareDeltaError(f"delta = {delta} is a square in {F}")
    ys = [0] if F.is_rational else range(4)
    for y in ys:
        for x in range(4):
            r = F(x, y)
            rest = delta - r * r
            if rest.a % 4 == 0 and rest.b % 4 == 0:
                m = rest.exact_div(4)
                return ((r, F(1)), (m, F(0)))
    raise NotSquareMod4Error(f"delta = {delta} is not a square modulo 4")


def matrix_delta(gamma) -> AlgebraicInt:
    """tr^2 - 4 det of a 2x2 matrix of AlgebraicInts (or ints)."""
    (a, b), (c, d) = gamma
    return (a + d) * (a + d) - 4 * (a * d - b * c)


def no_solution_witness(q: LocalPrime, t: int, u: AlgebraicInt | int) -> bool:
    """True when X^2 - pi^t u = Y^2 has no solution modulo 4 O_q.

    Exhaustive over X, Y in O_K / q^(2e); needs residue characteristic 2,
    t odd with 1 <= t <= 2e - 1 and u a unit at q.
    """
    if q.p != 2:
        raise OrbitalZetaError("the witness lives over 2")
    if t % 2 == 0 or not 1 <= t <= 2 * q.e - 1:
        raise OrbitalZetaError(f"t = {t} must be odd in [1, {2 * q.e - 1}]")
    u = _elem(q.field, u)
    if q.in_power(u, 1):
        raise OrbitalZetaError(f"{u} is not a unit at {q}")
    N = 2 * q.e
    target = q.uniformizer**t * u
    squares = {}
    for y in q.residues(N):
        s = y * y
        squares[_key(q, s, N)] = s
    for x in q.residues(N):
        diff = x * x - target
        if _key(q, diff, N) in squares:
            return False
    return True


def _key(q: LocalPrime, x: AlgebraicInt, N: int) -> tuple[int, int]:
    if q.field.is_rational:
        return (x.a % q.p**N, 0)
    return q.power(N).reduce(x.a, x.b)


def unit_representatives(q: LocalPrime) -> list[AlgebraicInt]:
    """Units of O_K / q^(2e), enough to range over u in the witness check."""
    return list(q.units(2 * q.e))


__all__ = [
    "SplitType",
    "validate_delta",
    "in_square_class_mod4",
    "is_local_square",
    "square_mod4_at",
    "local_split_type",
    "chi",
    "conductor_exponent",
    "s_delta",
    "local_data",
    "satisfies_congruence",
    "delta_to_matrix",
    "matrix_delta",
    "no_solution_witness",
    "unit_representatives",
]

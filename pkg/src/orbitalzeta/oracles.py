"""Brute-force oracles that share no code path with the closed forms.

* Lattice counting in the Bruhat-Tits tree of PGL(2, Q_p): an orbital
  integral of the characteristic function of M_2(Z_p) counts the vertices
  L with gamma L in L, up to the action of the centraliser.
* Ideal counting in Z[gamma] over Q by listing sublattices of Z^2 in
  Hermite normal form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .errors import GuardError, InconclusiveError, OrbitalZetaError
from .order_zeta import hnf_lattices, is_stable, order_polynomial
from .local import delta_to_matrix, local_data

Vertex = tuple[int, int, int]


def _v(n: int, p: int) -> int:
    return 10**9 if n == 0 else arith.valuation(n, p)


def normalize_vertex(B, p: int) -> Vertex:
    """Homothety class of the lattice spanned by the columns of B, as (a, b, c).

    The representative is spanned by (p^a, 0) and (b, p^c) with
    0 <= b < p^a and not contained in p Z_p^2; its distance from the
    standard vertex is a + c.
    """
    (x1, x2), (y1, y2) = B
    det = x1 * y2 - x2 * y1
    if det == 0:
        raise OrbitalZetaError("degenerate lattice basis")
    vy = (_v(y1, p), _v(y2, p))
    kcol = 0 if vy[0] <= vy[1] else 1
    c = vy[kcol]
    a = arith.valuation(det, p) - c
    pa = p**a
    if a == 0:
        b = 0
    else:
        xk, yk = (x1, y1) if kcol == 0 else (x2, y2)
        unit = yk // p**c
        b = xk * pow(unit, -1, pa) % pa
    m = min(a, c, _v(b, p))
    a, c = a - m, c - m
    b = (b // p**m) % (p**a) if a else 0
    return (a, b, c)


def vertex_matrix(v: Vertex, p: int):
    a, b, c = v
    return ((p**a, b), (0, p**c))


def neighbours(v: Vertex, p: int) -> list[Vertex]:
    """The p + 1 adjacent vertices (index-p sublattices of the representative)."""
    (A, b), (_, C) = vertex_matrix(v, p)
    out = [normalize_vertex(((A * p, A * i + b), (0, C)), p) for i in range(p)]
    out.append(normalize_vertex(((A, b * p), (0, C * p)), p))
    return out


def distance(v: Vertex) -> int:
    return v[0] + v[2]


def is_gamma_stable(v: Vertex, gamma, p: int) -> bool:
    """gamma L in L, i.e. H^-1 gamma H integral, tested as adj(H) gamma H = 0 mod det H."""
    (A, b), (_, C) = vertex_matrix(v, p)
    (g11, g12), (g21, g22) = gamma
    # gamma H
    m11, m12 = g11 * A, g11 * b + g12 * C
    m21, m22 = g21 * A, g21 * b + g22 * C
    # adj(H) = [[C, -b], [0, A]]
    det = A * C
    entries = (C * m11 - b * m21, C * m12 - b * m22, A * m21, A * m22)
    return all(e % det == 0 for e in entries)


def _char_poly(gamma) -> tuple[int, int]:
    (a, b), (c, d) = gamma
    return a + d, a * d - b * c


def has_padic_root(tau: int, det: int, p: int) -> bool:
    """X^2 - tau X + det has a root in Z_p (lifting digit by digit)."""
    delta = tau * tau - 4 * det
    if delta == 0:
        return True
    depth = _v(delta, p) + (3 if p == 2 else 1) + 2
    roots = [0]
    for i in range(depth):
        mod = p ** (i + 1)
        roots = [x for r in roots for x in (r + t * p**i for t in range(p)) if (x * x - tau * x + det) % mod == 0]
        if not roots:
            return False
    return True


def _norm_takes_odd_valuation(tau: int, det: int, p: int) -> bool:
    """Some x in Z_p has v_p(x^2 + tau x + det) odd (the norm form on x + gamma)."""
    f = lambda x: x * x + tau * x + det  # noqa: E731
    delta = tau * tau - 4 * det
    limit = _v(delta, p) + 8
    frontier = [0]
    for i in range(limit):
        nxt = []
        for r in frontier:
            for t in range(p):
                x = r + t * p**i
                val = f(x)
                if val % p ** (i + 1):
                    # the valuation is fixed for every x' = x mod p^(i+1)
                    if _v(val, p) % 2:
                        return True
                else:
                    nxt.append(x)
        frontier = nxt
        if not frontier:
            return False
    return False


@dataclass(frozen=True)
class TreeOracleResult:
    value: Fraction
    split: bool
    e: int
    stable_count: int
    radius: int
    history: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "split": self.split,
            "e": self.e,
            "stable_count": self.stable_count,
            "radius": self.radius,
            "history": list(self.history),
        }


def _stable_ball(gamma, p: int, R: int) -> dict[Vertex, int]:
    """Stable vertices within distance R, by BFS from the standard vertex.

    The stable set is convex, so its intersection with a ball is connected
    and the search never needs to leave it.
    """
    start = (0, 0, 0)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if distance(v) >= R:
            continue
        for w in neighbours(v, p):
            if w not in seen and distance(w) <= R and is_gamma_stable(w, gamma, p):
                seen[w] = distance(w)
                queue.append(w)
    return seen


def tree_orbital_oracle(gamma, p: int, R_max: int = 40) -> TreeOracleResult:
    """Orbital integral of 1_{M_2(Z_p)} at the integral matrix gamma, by counting.

    Elliptic gamma: the stable set is finite and the centraliser modulo
    the centre acts through a group of order e (the ramification index
    of Q_p(gamma)). Split gamma: the stable set is a tube around an
    apartment, and each translation step contributes the same number of
    vertices, read off as half the growth of the ball count.
    """
    if not arith.is_prime(p):
        raise OrbitalZetaError(f"{p} is not prime")
    gamma = tuple(tuple(int(x) for x in row) for row in gamma)
    tau, det = _char_poly(gamma)
    if det == 0 or tau * tau - 4 * det == 0:
        raise OrbitalZetaError("gamma must be regular semisimple with nonzero determinant")
    if not is_gamma_stable((0, 0, 0), gamma, p):
        raise OrbitalZetaError("gamma must be integral at p")
    if has_padic_root(tau, det, p):
        counts = []
        for R in range(R_max + 1):
            counts.append(len(_stable_ball(gamma, p, R)))
            if R >= 4:
                inc = [counts[i] - counts[i - 1] for i in range(R - 2, R + 1)]
                if inc[0] == inc[1] == inc[2]:
                    return TreeOracleResult(Fraction(inc[-1], 2), True, 1, counts[-1], R, tuple(counts))
        raise InconclusiveError(f"ball counts did not stabilise by radius {R_max}")
    e = 2 if _norm_takes_odd_valuation(tau, det, p) else 1
    history = []
    for R in range(R_max + 1):
        n = len(_stable_ball(gamma, p, R))
        history.append(n)
        if R and history[-1] == history[-2]:
            return TreeOracleResult(Fraction(n, e), False, e, n, R, tuple(history))
    raise InconclusiveError(f"stable count did not stabilise by radius {R_max}")


# ---------------------------------------------------------------------------
# Ideals of Z[gamma]
# ---------------------------------------------------------------------------


def global_ideal_count_oracle(delta: int, N: int) -> list[int]:
    """counts[n] = number of ideals of index n in Z[gamma] (counts[0] unused, 0)."""
    if abs(delta) > 10**4:
        raise GuardError("|delta| must be at most 10^4")
    if N > 500:
        raise GuardError("N must be at most 500")
    (r, _), (m, _) = delta_to_matrix(int(delta))
    # gamma^2 = r gamma + m, i.e. X^2 - tX + d with t = r, d = -m
    t, d = r.a, -m.a
    out = [0] * (N + 1)
    for n in range(1, N + 1):
        out[n] = sum(1 for L in hnf_lattices(n) if is_stable(L, t, d))
    return out


def dirichlet_mul(f: list[int], g: list[int]) -> list[int]:
    N = len(f) - 1
    out = [0] * (N + 1)
    for i in range(1, N + 1):
        if f[i]:
            for j in range(1, N // i + 1):
                out[i * j] += f[i] * g[j]
    return out


def predicted_ideal_counts(delta: int, N: int) -> list[int]:
    """Coefficients of zeta_{Q(sqrt delta)}(s) * prod_(q | S) P_q(q^-s), up to N."""
    D = arith.fundamental_discriminant(int(delta))
    dedekind = [0] * (N + 1)
    for n in range(1, N + 1):
        dedekind[n] = sum(arith.kronecker(D, k) for k in arith.divisors(n))
    series = dedekind
    for q, t, n in local_data(int(delta)):
        if not n:
            continue
        P = order_polynomial(t, n, q.q)
        corr = [0] * (N + 1)
        for j, c in enumerate(P.coeffs):
            if q.q**j <= N:
                corr[q.q**j] += c
        series = dirichlet_mul(series, corr)
    return series

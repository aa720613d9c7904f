"""Verification suites shared by the command line and the test-suite.

Every suite yields plain records ``{"suite", "case", "ok", ...}`` built
from picklable task tuples, so that a process pool can fan the work out
while a single writer keeps the output order fixed.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator

from . import arith
from .expoly import format_fraction
from .fields import QQ, AlgebraicInt, BaseField, ideals_up_to, is_square_in_field, parse_field, primes_above
from .global_formula import (
    arthur_series,
    divisor_expansion,
    global_series,
    langlands_value,
    local_value_product,
)
from .local import (
    SplitType,
    delta_to_matrix,
    in_square_class_mod4,
    local_split_type,
    no_solution_witness,
    s_delta,
    satisfies_congruence,
)
from .oracles import tree_orbital_oracle
from .order_zeta import count_ideals_oracle, counts_times_denominator, order_polynomial, orbital_value
from .zagier import functional_equation_residual

TEST_FIELDS = ("Q", "Q(sqrt:-1)", "Q(sqrt:2)", "Q(sqrt:5)", "Q(sqrt:-5)")
ZAGIER_DELTAS = (5, 8, 12, 13, 45, -3, -4, -7, 173)


# ---------------------------------------------------------------------------
# Corpora
# ---------------------------------------------------------------------------


def is_valid_delta(x: AlgebraicInt) -> bool:
    return not x.is_zero() and in_square_class_mod4(x) and not is_square_in_field(x)


def random_deltas(field: BaseField, count: int, seed: int, bound: int = 10**6) -> list[AlgebraicInt]:
    """``count`` valid discriminants; half of them carry an extra square factor.

    Over Q the plain draws are uniform in [-bound, bound]; over a quadratic
    field the coordinates are drawn from a box of side about bound^(1/3)
    so that norms stay factorisable quickly.
    """
    rng = random.Random(f"{field.spec()}:{seed}")
    out: list[AlgebraicInt] = []
    side = bound if field.is_rational else max(10, round(bound ** (1 / 3)))
    while len(out) < count:
        if field.is_rational:
            x = field(rng.randint(-side, side))
        else:
            x = field(rng.randint(-side, side), rng.randint(-side, side))
        if len(out) % 2:
            y = field(rng.randint(1, 12)) if field.is_rational else field(rng.randint(-4, 4), rng.randint(-3, 3))
            x = x * y * y
            if field.is_rational and abs(x.a) > bound:
                continue
        if is_valid_delta(x):
            out.append(x)
    return out


def elliptic_sweep_deltas(primes=(2, 3, 5), kmax: int = 4, tau_max: int = 50) -> list[int]:
    """delta = tau^2 -/+ 4 p^k for the given primes, k <= kmax and |tau| <= tau_max."""
    out = []
    for p in primes:
        for k in range(kmax + 1):
            for tau in range(-tau_max, tau_max + 1):
                for det in (p**k, -(p**k)):
                    d = tau * tau - 4 * det
                    if d != 0 and not arith.is_square(d):
                        out.append(d)
    return out


def tree_corpus() -> list[tuple[tuple[tuple[int, int], tuple[int, int]], int, str, int]]:
    """Integral matrices covering every (split type, p, n) with p in {2,3,5}, n <= 2.

    Each entry is (gamma, p, type, n) where the type and depth come from
    the local classification of delta(gamma), never from the oracle.
    """
    wanted = {(t, p, n) for t in SplitType for p in (2, 3, 5) for n in range(3)}
    found: dict = {}
    for size in range(1, 4000):
        for delta in (size, -size):
            if not is_valid_delta(QQ(delta)):
                continue
            for p in (2, 3, 5):
                t, n = local_split_type(delta, primes_above(QQ, p)[0])
                key = (t, p, n)
                if key in wanted and key not in found:
                    found[key] = delta
        if len(found) == len(wanted):
            break
    out = []
    for (t, p, n), delta in sorted(found.items(), key=lambda kv: (kv[0][1], kv[0][0].value, kv[0][2])):
        (r, one), (m, zero) = delta_to_matrix(delta)
        comp = ((r.a, one.a), (m.a, zero.a))
        out.append((comp, p, t.value, n))
        # a conjugate by an upper unipotent, still integral
        (a, b), (c, d) = comp
        conj = ((a + c, b + d - (a + c)), (c, d - c))
        out.append((conj, p, t.value, n))
    for comp in (((3, 1), (9, 0)), ((5, 1), (5, 0)), ((0, -1), (1, 0)), ((1, 1), (1, 0))):
        tr = comp[0][0] + comp[1][1]
        det = comp[0][0] * comp[1][1] - comp[0][1] * comp[1][0]
        delta = tr * tr - 4 * det
        for p in (2, 3, 5):
            t, n = local_split_type(delta, primes_above(QQ, p)[0])
            out.append((comp, p, t.value, n))
    return out


# ---------------------------------------------------------------------------
# Workers (module level so that they pickle)
# ---------------------------------------------------------------------------


def _elem(spec: str, coords) -> AlgebraicInt:
    return parse_field(spec)(*coords)


def fe_task(task) -> dict:
    spec, coords = task
    delta = _elem(spec, coords)
    series = global_series(delta)
    return {
        "suite": "fe",
        "field": spec,
        "case": str(delta),
        "ok": series.product.is_self_dual(),
        "S": series.s_delta.pairs(),
    }


def arthur_task(task) -> dict:
    spec, coords = task
    delta = _elem(spec, coords)
    series = global_series(delta)
    ok = divisor_expansion(series) == series.product
    ok = ok and langlands_value(series) == series.value_at_one() == local_value_product(series)
    if delta.field.is_rational:
        ok = ok and arthur_series(delta.a) == series.product
    return {
        "suite": "arthur",
        "field": spec,
        "case": str(delta),
        "ok": bool(ok),
        "value": format_fraction(series.value_at_one()),
    }


def congruence_task(task) -> dict:
    spec, coords, bound = task
    F = parse_field(spec)
    delta = F(*coords)
    S = s_delta(delta)
    bad = []
    n = 0
    for I in _ideals(spec, bound):
        n += 1
        if satisfies_congruence(I, delta) != I.divides(S):
            bad.append(str(I))
    return {
        "suite": "congruence",
        "field": spec,
        "case": str(delta),
        "ok": not bad,
        "ideals": n,
        "failures": bad[:5],
    }


_IDEAL_CACHE: dict = {}


def _ideals(spec: str, bound: int):
    key = (spec, bound)
    if key not in _IDEAL_CACHE:
        _IDEAL_CACHE[key] = ideals_up_to(parse_field(spec), bound)
    return _IDEAL_CACHE[key]


def witness_task(task) -> dict:
    """Exhaustive check that X^2 - pi^t u = Y^2 mod 4 has no solution."""
    spec, label = task
    F = parse_field(spec)
    q = next(r for r in primes_above(F, 2) if r.label() == label)
    cases = 0
    ok = True
    for t in range(1, 2 * q.e, 2):
        for u in q.units(2 * q.e):
            cases += 1
            ok = ok and no_solution_witness(q, t, u)
    return {"suite": "witness", "field": spec, "case": f"{label} e={q.e}", "ok": ok, "cases": cases}


def oracle_local_task(task) -> dict:
    family, n, p, jmax = task
    t = SplitType.parse(family)
    counts = count_ideals_oracle(t, n, p, jmax)
    P = order_polynomial(t, n, p)
    want = list(P.coeffs) + [0] * (jmax + 1)
    got = counts_times_denominator(counts, t)
    return {
        "suite": "oracle-local",
        "case": f"{family} n={n} q={p}",
        "ok": got == want[: jmax + 1] and counts == P.series(jmax + 1),
        "counts": counts,
        "polynomial": str(P),
    }


def oracle_tree_task(task) -> dict:
    gamma, p, family, n = task
    res = tree_orbital_oracle(gamma, p)
    want = orbital_value(SplitType.parse(family), n, p)
    return {
        "suite": "oracle-tree",
        "case": f"{list(map(list, gamma))} p={p}",
        "type": family,
        "n": n,
        "ok": res.value == want,
        "oracle": format_fraction(res.value),
        "closed_form": format_fraction(want),
    }


def zagier_fe_task(task) -> dict:
    delta, points = task
    worst = 0.0
    for re, im in points:
        worst = max(worst, functional_equation_residual(complex(re, im), delta))
    return {"suite": "zagier-fe", "case": str(delta), "ok": worst < 1e-8, "residual": worst}


def strip_grid(n: int = 20, seed: int = 0) -> list[tuple[float, float]]:
    """n points with 0 < Re s < 1 and |Im s| <= 20, deterministic."""
    rng = random.Random(seed)
    return [(round(rng.uniform(0.05, 0.95), 6), round(rng.uniform(-20, 20), 6)) for _ in range(n)]


# ---------------------------------------------------------------------------
# Task builders and the runner
# ---------------------------------------------------------------------------


def build_tasks(check: str, field: str, count: int, seed: int, deltas=None, bound: int = 10**4):
    F = parse_field(field)
    if deltas is None:
        corpus = random_deltas(F, count, seed)
    else:
        corpus = [d if isinstance(d, AlgebraicInt) else F(int(d)) for d in deltas]
    coords = [d.coords() for d in corpus]
    if check == "fe":
        return fe_task, [(field, c) for c in coords]
    if check == "arthur":
        return arthur_task, [(field, c) for c in coords]
    if check == "congruence":
        return congruence_task, [(field, c, bound) for c in coords]
    if check == "witness":
        return witness_task, [(field, q.label()) for q in primes_above(F, 2)]
    if check == "oracle-local":
        return oracle_local_task, [(t.value, n, p, 4) for t in SplitType for n in range(3) for p in (2, 3)]
    if check == "oracle-tree":
        return oracle_tree_task, tree_corpus()
    if check == "zagier-fe":
        if not F.is_rational:
            raise ValueError("zagier-fe runs over Q only")
        ds = deltas if deltas is not None else ZAGIER_DELTAS
        grid = strip_grid(20, seed)
        return zagier_fe_task, [(int(d if not isinstance(d, AlgebraicInt) else d.a), grid) for d in ds]
    raise ValueError(f"unknown check {check!r}")


CHECKS = ("fe", "arthur", "congruence", "witness", "oracle-local", "oracle-tree", "zagier-fe")


def run_tasks(worker: Callable, tasks: Iterable, jobs: int = 1) -> Iterator[dict]:
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) < 2:
        for t in tasks:
            yield worker(t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps submission order, so output is independent of scheduling
        yield from pool.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))


def run_check(check: str, field: str = "Q", count: int = 100, seed: int = 0, jobs: int = 1, deltas=None, bound: int = 10**4):
    worker, tasks = build_tasks(check, field, count, seed, deltas, bound)
    return run_tasks(worker, tasks, jobs)


__all__ = [
    "CHECKS",
    "TEST_FIELDS",
    "ZAGIER_DELTAS",
    "random_deltas",
    "elliptic_sweep_deltas",
    "tree_corpus",
    "strip_grid",
    "build_tasks",
    "run_tasks",
    "run_check",
]

"""The eight acceptance criteria, each at its stated tolerance and time budget.

Run under pytest (one test per criterion, summary lines at the end) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import sys
import time
from fractions import Fraction

import pytest

from orbitalzeta.fields import QQ, parse_field, primes_above
from orbitalzeta.global_formula import arthur_series, divisor_expansion, global_series
from orbitalzeta.kloosterman import euler_factor_at_2, kloosterman
from orbitalzeta.lfunctions import dirichlet_L
from orbitalzeta.local import SplitType
from orbitalzeta.oracles import global_ideal_count_oracle, predicted_ideal_counts, tree_orbital_oracle
from orbitalzeta.order_zeta import order_polynomial, orbital_value
from orbitalzeta.suites import (
    TEST_FIELDS,
    ZAGIER_DELTAS,
    elliptic_sweep_deltas,
    random_deltas,
    run_check,
    tree_corpus,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}

QUADRATIC = TEST_FIELDS[1:]


def _corpus_q():
    return random_deltas(QQ, 500, seed=0, bound=10**6)


def _failures(records) -> list[dict]:
    return [r for r in records if not r["ok"]]


def criterion_1():
    """Exact functional equation of O(s, delta)."""
    bad = _failures(run_check("fe", "Q", deltas=_corpus_q()))
    n = 500
    for spec in QUADRATIC:
        bad += _failures(run_check("fe", spec, count=100, seed=0))
        n += 100
    return not bad, f"{n} deltas, {len(bad)} failures", 60.0


def criterion_2():
    """Divisor expansion equals the product of local factors over Q, incl. elliptic sweeps."""
    sweep = elliptic_sweep_deltas((2, 3, 5), 4, 50)
    deltas = [d.a for d in _corpus_q()] + sweep
    bad = 0
    positive_k = 0
    for d in deltas:
        series = global_series(d)
        if not (divisor_expansion(series) == series.product == arthur_series(d)):
            bad += 1
    # the sweep must reach primes p0 | det with nontrivial S at p0
    for d in sweep:
        positive_k += any(q.p in (2, 3, 5) and n for q, _, n in global_series(d).local)
    ok = bad == 0 and positive_k > 0
    return ok, f"{len(deltas)} deltas ({len(sweep)} from tau^2 -/+ 4p^k, {positive_k} with S divisible by p0), {bad} failures", None


def criterion_3():
    """(q x^2)^n P(1/(q x)) = P(x) for R_n, U_n, S_n."""
    bad = 0
    n_checked = 0
    for family in SplitType:
        for q in (2, 3, 4, 5, 7, 9):
            for n in range(11):
                P = order_polynomial(family, n, q)
                n_checked += 1
                x = Fraction(2, 7)
                if not (P.is_self_dual() and (q * x * x) ** n * P(1 / (q * x)) == P(x)):
                    bad += 1
    return bad == 0, f"{n_checked} polynomials, {bad} failures", 1.0


def criterion_4():
    """Local and global ideal-count oracles against the closed forms."""
    local = _failures(run_check("oracle-local"))
    glob = []
    for d in (5, 45, 48, -4, -12):
        if global_ideal_count_oracle(d, 200) != predicted_ideal_counts(d, 200):
            glob.append(d)
    ok = not local and not glob
    return ok, f"18 local cases ({len(local)} failures), 5 global deltas up to N=200 ({len(glob)} failures)", 300.0


def criterion_5():
    """Tree-lattice counting against the closed-form local orbital integrals."""
    corpus = tree_corpus()
    bad = _failures(run_check("oracle-tree"))
    kinds = {(t, p) for _, p, t, _ in corpus}
    named = tree_orbital_oracle(((3, 1), (9, 0)), 3).value == 5 == orbital_value(SplitType.INERT, 1, 3)
    ok = not bad and len(corpus) >= 30 and len(kinds) == 9 and named
    return ok, f"{len(corpus)} matrices over {len(kinds)} (type, p) classes, {len(bad)} failures; X^2-3X-9 at 3 -> 5: {named}", 120.0


def criterion_6():
    """Congruence conditions hold exactly for divisors of S_delta; no solutions of the dyadic witness equation."""
    bad = []
    total = 0
    for spec in TEST_FIELDS:
        recs = list(run_check("congruence", spec, count=50, seed=0, bound=10**4))
        total += len(recs)
        bad += _failures(recs)
    witness = []
    es = set()
    for spec in TEST_FIELDS:
        es |= {q.e for q in primes_above(parse_field(spec), 2)}
        witness += list(run_check("witness", spec))
    wbad = _failures(witness)
    ok = not bad and not wbad and {1, 2} <= es
    return ok, f"{total} deltas x ideals of norm <= 10^4, {len(bad)} failures; witness on {len(witness)} dyadic primes (e in {sorted(es)}), {len(wbad)} failures", None


def _leibniz() -> float:
    acc = prev = 0.0
    for k in range(400000):
        prev, acc = acc, acc + (-1) ** k / (2 * k + 1)
    return (acc + prev) / 2


def criterion_7():
    """Numerical functional equation of the completed Zagier zeta function; L(1) values."""
    recs = list(run_check("zagier-fe", "Q", seed=0))
    bad = _failures(recs)
    worst = max(r["residual"] for r in recs)
    e4 = abs(dirichlet_L(1, -4) - math.pi / 4)
    e4_series = abs(dirichlet_L(1, -4) - _leibniz())
    phi = (1 + math.sqrt(5)) / 2
    e5 = abs(dirichlet_L(1, 5) - 2 * math.log(phi) / math.sqrt(5))
    ok = not bad and len(recs) == len(ZAGIER_DELTAS) and max(e4, e4_series, e5) < 1e-9
    return ok, f"{len(recs)} deltas x 20 strip points, worst residual {worst:.1e}; |L(1,chi_-4) - pi/4| = {e4:.1e}, |L(1,chi_5) - 2 log(phi)/sqrt5| = {e5:.1e}", None


# the displayed closed form is asserted where it applies: k odd with
# delta = tau^2 - 4*2^k; every other (k, sign) is reported, not asserted
EULER_APPLIES = ((1, "-"), (3, "-"))


def criterion_8():
    """2-part Euler factor at s = 1, without congruence conditions."""
    ok = kloosterman(1, 1, 2, 0) == 4
    notes = []
    for k, sign in EULER_APPLIES:
        r = euler_factor_at_2(k, 1, "without-cc", N=12, sign=sign)
        ok = ok and r.matches_closed_form()
        notes.append(f"k={k}{sign}: {r.value.real:.12g} vs {r.closed_form():.12g} (tail {r.tail_bound:.1e})")
    others = []
    for k in range(5):
        for sign in "+-":
            if (k, sign) not in EULER_APPLIES:
                r = euler_factor_at_2(k, 1, "without-cc", N=12, sign=sign)
                others.append(f"{k}{sign}:{r.value.real:.6g}")
    return ok, "K_{1,1} = 4; " + "; ".join(notes) + "; recorded " + " ".join(others), None


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def evaluate(n: int) -> tuple[bool, str]:
    fn = CRITERIA[n - 1]
    t0 = time.perf_counter()
    ok, detail, budget = fn()
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        ok = False
        detail += f"; over the {budget:g} s budget"
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({dt:.1f} s) {detail}"
    ACCEPTANCE_LINES[n] = line
    return ok, line


@pytest.mark.acceptance
@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n):
    ok, line = evaluate(n)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in range(1, 9)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

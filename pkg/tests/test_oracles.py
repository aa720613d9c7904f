import random
from fractions import Fraction

import pytest

from orbitalzeta import arith
from orbitalzeta.errors import GuardError, OrbitalZetaError
from orbitalzeta.fields import QQ, primes_above
from orbitalzeta.local import local_split_type
from orbitalzeta.oracles import (
    dirichlet_mul,
    global_ideal_count_oracle,
    has_padic_root,
    is_gamma_stable,
    neighbours,
    normalize_vertex,
    predicted_ideal_counts,
    tree_orbital_oracle,
)
from orbitalzeta.order_zeta import orbital_value
from orbitalzeta.suites import tree_corpus


def test_tree_examples():
    assert tree_orbital_oracle(((3, 1), (9, 0)), 3).value == 5
    assert tree_orbital_oracle(((0, -1), (1, 0)), 3).value == 1
    assert tree_orbital_oracle(((1, 1), (1, 0)), 2).value == 1


def test_tree_has_p_plus_one_neighbours():
    for p in (2, 3, 5):
        for v in [(0, 0, 0), (2, 1, 0), (1, 1, 2), (0, 0, 2)]:
            ns = neighbours(v, p)
            assert len(set(ns)) == p + 1
            assert all(abs((w[0] + w[2]) - (v[0] + v[2])) == 1 for w in ns)


def test_normalisation_is_a_class_invariant():
    p = 3
    rng = random.Random(2)
    for _ in range(100):
        B = ((rng.randint(-40, 40), rng.randint(-40, 40)), (rng.randint(-40, 40), rng.randint(-40, 40)))
        if B[0][0] * B[1][1] - B[0][1] * B[1][0] == 0:
            continue
        v = normalize_vertex(B, p)
        # scaling by p and a unimodular column operation leave the vertex alone
        (x1, x2), (y1, y2) = B
        assert normalize_vertex(((p * x1, p * x2), (p * y1, p * y2)), p) == v
        assert normalize_vertex(((x1 + 2 * x2, x2), (y1 + 2 * y2, y2)), p) == v


def test_tree_corpus_matches_closed_forms():
    corpus = tree_corpus()
    assert len(corpus) >= 30
    assert {(t, p) for _, p, t, _ in corpus} == {(t, p) for t in ("Split", "Inert", "Ramified") for p in (2, 3, 5)}
    for gamma, p, t, n in corpus:
        res = tree_orbital_oracle(gamma, p)
        assert res.value == orbital_value(local_split_type_from(t), n, p), (gamma, p)


def local_split_type_from(name):
    from orbitalzeta.local import SplitType

    return SplitType.parse(name)


def test_random_matrices():
    rng = random.Random(4)
    done = 0
    while done < 25:
        g = ((rng.randint(-9, 9), rng.randint(-9, 9)), (rng.randint(-9, 9), rng.randint(-9, 9)))
        tau, det = g[0][0] + g[1][1], g[0][0] * g[1][1] - g[0][1] * g[1][0]
        delta = tau * tau - 4 * det
        if det == 0 or delta == 0 or arith.is_square(delta):
            continue
        p = rng.choice([2, 3, 5])
        t, n = local_split_type(delta, primes_above(QQ, p)[0])
        assert tree_orbital_oracle(g, p).value == orbital_value(t, n, p)
        done += 1


def test_elliptic_root_test():
    assert not has_padic_root(1, 1, 2)  # X^2 - X + 1, delta = -3
    assert has_padic_root(1, -1, 11)  # delta = 5, a square mod 11
    assert not has_padic_root(0, 1, 3)


def test_stability_of_standard_vertex():
    assert is_gamma_stable((0, 0, 0), ((1, 2), (3, 4)), 5)
    with pytest.raises(OrbitalZetaError):
        tree_orbital_oracle(((Fraction(1, 3), 0), (0, 1)), 3)


def test_tree_rejects_bad_input():
    with pytest.raises(OrbitalZetaError):
        tree_orbital_oracle(((1, 0), (0, 1)), 3)
    with pytest.raises(OrbitalZetaError):
        tree_orbital_oracle(((1, 1), (1, 0)), 4)


def test_ideal_oracle_examples():
    counts = global_ideal_count_oracle(5, 60)
    assert counts[1] == 1
    assert counts[1:] == [sum(arith.kronecker(5, d) for d in arith.divisors(n)) for n in range(1, 61)]
    assert global_ideal_count_oracle(45, 3)[3] == 1


@pytest.mark.parametrize("delta", [5, 45, 48, -4, -12, 180, -7])
def test_ideal_oracle_matches_prediction(delta):
    assert global_ideal_count_oracle(delta, 120) == predicted_ideal_counts(delta, 120)


def test_ideal_oracle_guards():
    with pytest.raises(GuardError):
        global_ideal_count_oracle(10**5 + 1, 10)
    with pytest.raises(GuardError):
        global_ideal_count_oracle(5, 501)


def test_dirichlet_mul_identity():
    f = [0, 1, 0, 0, 0, 0]
    g = [0, 3, 1, 4, 1, 5]
    assert dirichlet_mul(f, g) == g

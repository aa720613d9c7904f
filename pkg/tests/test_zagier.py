import cmath
import math

import pytest

from orbitalzeta.expoly import ExpPoly
from orbitalzeta.fields import QQ, parse_field
from orbitalzeta.global_formula import global_series
from orbitalzeta.lfunctions import dirichlet_L
from orbitalzeta.suites import TEST_FIELDS, ZAGIER_DELTAS, random_deltas, strip_grid
from orbitalzeta.zagier import (
    CompletedZagier,
    completed_lambda,
    functional_equation_residual,
    parity,
    zagier_decompose,
    zagier_L,
    zagier_L_direct,
)


def test_decompose_examples():
    assert zagier_decompose(45).admissible_norms() == [1, 3]
    z = zagier_decompose(5)
    assert z.admissible_norms() == [1] and z.finite_part == ExpPoly.constant(1)
    assert zagier_decompose(48).admissible_norms() == [1, 2]


@pytest.mark.parametrize("spec", TEST_FIELDS)
def test_admissible_ideals_are_divisors_of_s(spec):
    F = parse_field(spec)
    for delta in random_deltas(F, 30, seed=13, bound=10**4):
        z = zagier_decompose(delta)
        assert sorted(map(str, z.admissible)) == sorted(map(str, z.s_delta.divisors()))
        # the dropped primes at I are exactly those dividing S / I
        for I, drop in zip(z.admissible, z.dropped):
            assert sorted(map(str, drop)) == sorted(map(str, (z.s_delta / I).primes()))


def test_values():
    assert abs(zagier_L(1, 45) - 0.7173482349) < 1e-9
    assert abs(zagier_L(1, 45) - 5 / 3 * dirichlet_L(1, 5)) < 1e-14
    assert abs(zagier_L(1, -4) - math.pi / 4) < 1e-12
    for s in (0.5 + 3j, 2.0, -0.5 + 1j):
        assert zagier_L(s, 5) == dirichlet_L(s, 5)


def test_parity():
    assert parity(-4) == 1 and parity(45) == 0
    c = CompletedZagier.of(-12)
    assert (c.D, c.S, c.i, c.conductor) == (-3, 2, 1, 3)


@pytest.mark.parametrize("delta", ZAGIER_DELTAS + (180, 48, -12, -300, 1300))
def test_direct_route_agrees(delta):
    for re, im in strip_grid(10, seed=1) + [(1.0, 0.0), (2.0, 5.0)]:
        s = complex(re, im)
        a, b = zagier_L(s, delta), zagier_L_direct(s, delta)
        assert abs(a - b) <= 1e-9 * max(1, abs(a))


def test_functional_equation_example():
    assert functional_equation_residual(0.3 + 2j, 45) < 1e-8


@pytest.mark.parametrize("delta", [5, 12, 45, 173, 180])
def test_center_value_is_real(delta):
    assert abs(completed_lambda(0.5, delta).imag) < 1e-12


@pytest.mark.parametrize("delta", [45, -12, 180, -7])
def test_completion_factorises(delta):
    c = CompletedZagier.of(delta)
    O = global_series(delta).product
    for s in (0.3 + 2j, 0.7 - 5j, 1.5):
        lhs = completed_lambda(s, delta)
        rhs = c.Lambda_chi(s) * O.evaluate(s)
        assert abs(lhs - rhs) <= 1e-12 * max(1, abs(lhs))
        assert abs(c.Lambda_chi(s) - c.Lambda_chi(1 - s)) <= 1e-9 * max(1, abs(c.Lambda_chi(s)))

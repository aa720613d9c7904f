"""Kloosterman sums K_{a,d} and the 2-part of their double Dirichlet series.

For a = 2^i the sum only depends on the parity of i (up to a power of
2), so the a-sum is a rational function of 2^-s; the d-sum is truncated
with a geometric tail bound.
"""

from orbitalzeta.kloosterman import euler_factor_at_2, euler_factor_exact, kloosterman

# K_{2^i, d} = 2^(i-1) K_{2,d} for odd i and 2^(i-2) K_{4,d} for even i
for p, k, sign, d in [(3, 1, "-", 1), (5, 0, "+", 2)]:
    print(f"K_(2^i, {d}) for p = {p}, k = {k}, sign {sign}:", [kloosterman(2**i, d, p, k, sign) for i in range(1, 8)])

print()
print(" k  sign   without-cc       closed form   with-cc")
for k in range(5):
    for sign in "+-":
        w = euler_factor_at_2(k, 1, "without-cc", N=14, sign=sign)
        c = euler_factor_at_2(k, 1, "with-cc", N=14, sign=sign)
        mark = "*" if w.matches_closed_form() else " "
        print(f" {k}   {sign}    {w.value.real:.10f} {mark}  {w.closed_form():.10f}   {c.value.real:.10f}")
print("(* = agrees within the tail bound)")

# the agreeing cases are exact rationals
for k in (1, 3, 5):
    print(f"k = {k}: exact truncated value {euler_factor_exact(k, N=14)}")

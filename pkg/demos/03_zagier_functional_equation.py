"""L(s, delta) = N(S)^-s O(s, delta) L(s, chi_D) and its completion.

Evaluates both the factored and the direct (sum over f) forms, then
walks a vertical line in the critical strip and prints the residual of
Lambda(s) = Lambda(1 - s).
"""

import numpy as np

from orbitalzeta.zagier import completed_lambda, zagier_decompose, zagier_L, zagier_L_direct

delta = 45
z = zagier_decompose(delta)
print("admissible norms:", z.admissible_norms())
print("finite part Z(s) =", z.finite_part)

print("L(1, 45) =", zagier_L(1, delta).real)
print("direct sum:", zagier_L_direct(1, delta).real)

for t in np.linspace(0, 20, 6):
    s = 0.3 + 1j * t
    a, b = completed_lambda(s, delta), completed_lambda(1 - s, delta)
    print(f"  s = 0.3 + {t:5.1f}i   |Lambda| = {abs(a):.3e}   residual = {abs(a - b) / (1 + abs(a)):.1e}")

for d in (-4, -7, 12, 173):
    print(f"Lambda(1/2, {d}) = {completed_lambda(0.5, d):.12f}")

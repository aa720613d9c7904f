"""The same machinery over K = Q(sqrt -5), where 2 ramifies (e = 2).

The interesting part is the prime above 2: whether delta / pi^(2r) is a
square modulo 4 decides the exponent of S_delta there.
"""

from orbitalzeta import global_series, langlands_value, parse_element, parse_field
from orbitalzeta.fields import ideals_up_to
from orbitalzeta.local import conductor_exponent, delta_to_matrix, local_data, satisfies_congruence

K = parse_field("Q(sqrt:-5)")
delta = parse_element(K, "-36+8*w") * parse_element(K, "1+w") ** 2
print("K =", K, " delta =", delta, " N(delta) =", delta.norm())

(r, _), (m, _) = delta_to_matrix(delta)
print("companion matrix [[r, 1], [m, 0]] with r =", r, " m =", m)

for q, t, n in local_data(delta):
    alt = conductor_exponent(r, -m, q)
    print(f"  {q.label():>12}  e={q.e} f={q.f}  {t!s:9} n={n}  (integrality route: {alt})")

series = global_series(delta)
print("S_delta =", series.s_delta, " N(S) =", series.s_delta.norm)
print("self-dual:", series.product.is_self_dual(), " value at 1:", langlands_value(series))

# ideals that pass the congruence conditions are exactly the divisors of S
passing = [I for I in ideals_up_to(K, 400) if satisfies_congruence(I, delta)]
print("ideals of norm <= 400 passing the congruence conditions:")
for I in sorted(passing, key=lambda I: I.norm):
    print("  ", I, " divides S:", I.divides(series.s_delta))

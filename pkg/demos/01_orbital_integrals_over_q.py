"""The element with characteristic polynomial X^2 - 3X - 9 over Q.

Walks from delta to S_delta, the local factors J~, the functional
equation, and finally the value at s = 1 by two independent routes:
the closed form and a lattice count in the tree of PGL(2, Q_3).
"""

from orbitalzeta import (
    arthur_series,
    divisor_expansion,
    global_series,
    langlands_value,
    local_split_type,
    primes_above,
    tree_orbital_oracle,
    QQ,
)

gamma = ((3, 1), (9, 0))
tau, det = 3, -9
delta = tau * tau - 4 * det
print("delta =", delta)

# splitting of each prime dividing delta, and the depth n_q = val_q(S_delta)
for p in (3, 5):
    t, n = local_split_type(delta, primes_above(QQ, p)[0])
    print(f"  p = {p}: {t}, n = {n}")

series = global_series(delta)
print("S_delta =", series.s_delta, " N(S) =", series.s_delta.norm)
print("O(s, delta) =", series.product)

# s -> 1 - s maps the exponential polynomial to itself, term by term
print("self-dual:", series.product.is_self_dual())
print("equals divisor sum:", divisor_expansion(series) == series.product)
print("equals Q-only route:", arthur_series(delta) == series.product)

print("value at s = 1:", langlands_value(series))
res = tree_orbital_oracle(gamma, 3)
print(f"tree count at p = 3: {res.value} (stable set sizes by radius {list(res.history)})")

# a second matrix with the same discriminant gives the same series
print("X^2 - 5X - 5:", global_series(5 * 5 + 4 * 5).product == series.product)

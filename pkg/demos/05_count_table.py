"""Two families where minimal systems crush the naive multiplication count.

The power family (x+y+z)^k has 3^k terms but a bidiagonal minimal system:
k-1 products instead of (k-1)*3^k.  The convolution family q_k (fresh
letter triples at each level) fills the whole upper triangle and needs
k(k-1)/2 - still nothing against its 3*4^(k-1) terms.
"""

import time

from ncpoly import count_n, is_minimal, minimize, naive_mult_count
from ncpoly.families import (
    convolution_polynomial,
    convolution_system,
    power_polynomial,
    power_system,
)

start = time.perf_counter()
print(f"{'family':>6} {'k':>2} {'rank':>4} {'terms':>6} {'naive':>8} {'N':>3}")
for family, kmax, poly_of, system_of in (
    ("p", 9, power_polynomial, power_system),
    ("q", 7, convolution_polynomial, convolution_system),
):
    for k in range(kmax + 1):
        poly = poly_of(k)
        system = minimize(system_of(k))
        assert system.polynomial() == poly and is_minimal(system)
        print(
            f"{family:>6} {k:>2} {system.n:>4} {len(poly):>6}"
            f" {naive_mult_count(poly):>8} {count_n(system):>3}"
        )
print(f"\ncomputed and certified in {time.perf_counter() - start:.2f}s")
print("the same table is available from the command line: ncpoly table")

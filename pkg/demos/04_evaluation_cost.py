"""Counting matrix products: N_s, N_t, bounds, and block factorizations.

Evaluating a system bottom-up (left family) costs one product per
non-scalar entry in the upper-left block; top-down (right family) per
non-scalar entry in the lower-right block.  Values that stay scalar
multiples of the identity never cost anything, and the evaluator tracks
that structurally.
"""

import random

import numpy as np

from ncpoly import (
    Alphabet,
    BlockFactorization,
    build_als,
    complexity_bounds,
    count_n,
    count_ns,
    count_nt,
    evaluate_block_factorization,
    evaluate_left,
    evaluate_right,
    naive_evaluate,
    naive_mult_count,
    parse,
    random_rational_tuple,
    right_companion,
)

rng = random.Random(0)

print("== left vs right evaluation ==")
ab = Alphabet(("x", "y"))
p = parse("x - x*y*x", ab)
system = build_als(p)
tup = random_rational_tuple(rng, 2, 4)
left = evaluate_left(system, tup)
right = evaluate_right(system, tup)
naive = naive_evaluate(p, tup.mats)
print(f"{p}: N_s = {count_ns(system)}, N_t = {count_nt(system)}")
print(f"left evaluation used {left.mult_count} products, right used {right.mult_count}")
print(f"all three values agree exactly: "
      f"{np.array_equal(left.result, naive) and np.array_equal(right.result, naive)}")

print()
print("== the bounds for rank n: n-2 <= N <= (n-1)(n-2)/2 ==")
for text in ("x*y + y*x", "(x+y)^4", "x*y*x*y - 2*y*x + 1"):
    q = parse(text, ab)
    s = build_als(q)
    lo, hi = complexity_bounds(s.n)
    print(f"{text}: rank {s.n}, N = {count_n(s)}, bounds [{lo}, {hi}],"
          f" naive {naive_mult_count(q)}")

print()
print("== univariate case: nested (Horner) evaluation falls out ==")
abx = Alphabet(("x",))
degree = 7
coeffs = [rng.randint(-5, 5) for _ in range(degree)]
companion = right_companion(abx, ["x"] * degree, coeffs)
tup1 = random_rational_tuple(rng, 1, 4)
report = evaluate_left(companion, tup1)
print(f"monic degree {degree}: {report.mult_count} products (= degree - 1)")

print()
print("== matrix factorizations: products of rectangular blocks ==")
anti = parse("x*y + y*x", ab)
bf = BlockFactorization.from_cells(ab, [[["x", "y"]], [["y"], ["x"]]])
tup2 = random_rational_tuple(rng, 2, 5)
report = evaluate_block_factorization(bf, tup2)
print(f"{anti} has no polynomial factorization, yet it is an outer product:")
print(f"[x y] @ [y x]^T evaluates with {report.mult_count} products"
      f" (naive: {naive_mult_count(anti)})")
print(f"matches the oracle: {np.array_equal(report.result, naive_evaluate(anti, tup2.mats))}")
print("for a 19-term polynomial where the same idea drops 97 products to 15,")
print("see tests/test_acceptance.py (criterion 6)")

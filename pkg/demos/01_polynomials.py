"""Non-commutative polynomials: words, exact arithmetic, and naive evaluation.

Letters are placeholders for matrices, so they do not commute: x*y and y*x
are different words.  Coefficients are exact rationals throughout.
"""

import random
from fractions import Fraction

import numpy as np

from ncpoly import Alphabet, NcPolynomial, naive_evaluate, naive_mult_count, parse

ab = Alphabet(("x", "y"))

print("== arithmetic in the free algebra ==")
p = parse("x", ab)
q = parse("1 - y*x", ab)
print(f"p = {p}")
print(f"q = {q}")
print(f"p + q = {p + q}")
print(f"p * q = {p * q}        (note: q * p = {q * p})")
print(f"(x^2 + 1/2*x*y) - (x*y + 2*y^2) = {parse('x^2 + 1/2*x*y', ab) - parse('x*y + 2*y^2', ab)}")

print()
print("== parsing ==")
print(f"'(x*y+1)*(z*x-3)' expands to {parse('(x*y+1)*(z*x-3)', Alphabet(('x','y','z')))}")
print("single-character alphabets accept juxtaposition:")
print(f"  'xyx' parses to {parse('xyx', ab)}")

print()
print("== evaluation on matrices ==")
rng = random.Random(1)
mats = [
    np.array([[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)], dtype=object)
    for _ in range(2)
]
value = naive_evaluate(p * q, mats)
direct = mats[0] - mats[0] @ mats[1] @ mats[0]
print(f"p*q = {p * q} at a random rational 3x3 pair:")
print(value)
print(f"matches X - X@Y@X computed directly: {np.array_equal(value, direct)}")

print()
print("== the cost of naive evaluation ==")
power = parse("(x + y)^6", ab)
print(f"(x+y)^6 has {len(power)} terms")
print(f"evaluating term by term costs {naive_mult_count(power)} matrix products")
print("the linear-system representation will get this down to 5 (see demo 04)")

"""Exact rational elimination: solving, rank, invertibility."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncpoly import RatMatrix, is_invertible, rank, solve_linear
from ncpoly.linalg import solve_rows


class TestSolveLinear:
    def test_identity_system(self):
        a = RatMatrix.identity(3)
        b = RatMatrix.column([1, 2, 3])
        assert solve_linear(a, b) == RatMatrix.column([1, 2, 3])

    def test_inconsistent(self):
        a = RatMatrix([[1, 1], [2, 2]])
        b = RatMatrix.column([1, 3])
        assert solve_linear(a, b) is None

    def test_free_variables_zeroed(self):
        a = RatMatrix([[1, 1]])
        b = RatMatrix.column([5])
        x = solve_linear(a, b)
        assert x == RatMatrix.column([5, 0])
        assert a @ x == b

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            solve_linear(RatMatrix.identity(2), RatMatrix.column([1, 2, 3]))

    def test_exactness_on_random_consistent_systems(self):
        rng = random.Random(1)
        for _ in range(25):
            rows_n = rng.randint(1, 5)
            cols_n = rng.randint(1, 5)
            a = RatMatrix(
                [
                    [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols_n)]
                    for _ in range(rows_n)
                ]
            )
            x0 = RatMatrix.column(
                [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols_n)]
            )
            b = a @ x0
            x = solve_linear(a, b)
            assert x is not None
            assert a @ x == b


class TestSolveRows:
    def test_empty_system_is_all_zero(self):
        assert solve_rows([], [], 4) == [Fraction(0)] * 4

    def test_zero_width(self):
        assert solve_rows([[], []], [0, 0], 0) == []
        assert solve_rows([[]], [1], 0) is None


class TestRank:
    def test_identity(self):
        assert rank(RatMatrix.identity(4)) == 4

    def test_zero_matrix(self):
        assert rank(RatMatrix.zeros(3, 5)) == 0

    def test_proportional_rows(self):
        assert rank(RatMatrix([[1, 2], [2, 4], [3, 6]])) == 1

    def test_rank_equals_transpose_rank(self):
        rng = random.Random(2)
        for _ in range(20):
            n_rows, n_cols = rng.randint(1, 5), rng.randint(1, 5)
            a = RatMatrix(
                [
                    [Fraction(rng.randint(-3, 3)) for _ in range(n_cols)]
                    for _ in range(n_rows)
                ]
            )
            assert rank(a) == rank(a.transpose())

    def test_invariant_under_invertible_left_multiplication(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(1, 4)
            a = RatMatrix(
                [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
            )
            while True:
                p = RatMatrix(
                    [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
                )
                if is_invertible(p):
                    break
            assert rank(p @ a) == rank(a)


class TestIsInvertible:
    def test_identity(self):
        assert is_invertible(RatMatrix.identity(2))

    def test_singular(self):
        assert not is_invertible(RatMatrix([[1, 1], [1, 1]]))

    def test_unitriangular_always(self):
        rng = random.Random(4)
        for n in (1, 3, 6):
            rows = [
                [
                    Fraction(1)
                    if i == j
                    else (Fraction(rng.randint(-5, 5)) if j > i else Fraction(0))
                    for j in range(n)
                ]
                for i in range(n)
            ]
            assert is_invertible(RatMatrix(rows))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            is_invertible(RatMatrix([[1, 2]]))


@settings(max_examples=50, deadline=None, derandomize=True)
@given(
    st.lists(
        st.lists(st.fractions(min_value=-5, max_value=5), min_size=3, max_size=3),
        min_size=1,
        max_size=4,
    )
)
def test_solutions_satisfy_their_system(rows):
    a = RatMatrix(rows)
    b = RatMatrix.column([Fraction(1)] * a.rows)
    x = solve_linear(a, b)
    if x is not None:
        assert a @ x == b

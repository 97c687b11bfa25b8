"""Minimization equations, the reduction algorithm, rank, and minimality."""

import random
from fractions import Fraction

import numpy as np
import pytest

from ncpoly import (
    AdmissibleTransformation,
    Als,
    RatMatrix,
    als_add,
    als_mul,
    apply_transformation,
    build_als,
    decompose,
    evaluate_left,
    evaluate_right,
    is_minimal,
    minimal_monomial,
    minimize,
    naive_evaluate,
    parse,
    random_rational_tuple,
    rank_of,
    restore_polynomial_form,
    solve_left_minimization,
    solve_right_minimization,
)
from ncpoly.minimizer import reassemble

from conftest import random_polynomial


def system_for_x(ab):
    return Als.from_cells(ab, [["1", "-x"], ["0", "1"]], [0, 1])


def system_for_one_minus_yx(ab):
    return Als.from_cells(
        ab, [["1", "y", "-1"], ["0", "1", "-x"], ["0", "0", "1"]], [0, 0, 1]
    )


class TestBlockDecomposition:
    def test_reassembly_is_exact(self, intro_als, triple_product_als):
        for als in (intro_als, triple_product_als):
            for k in range(1, als.n + 1):
                assert reassemble(als.alphabet, decompose(als, k)) == als

    def test_out_of_range(self, intro_als):
        with pytest.raises(IndexError):
            decompose(intro_als, 0)
        with pytest.raises(IndexError):
            decompose(intro_als, 5)


class TestSolveLeftMinimization:
    def test_dependent_row_in_sum_intermediate(self, ab_xy):
        # the 4-dim stage of minimizing x + (1 - yx): s_2 = 1 depends on s_4 = 1;
        # the fix subtracts row 4 from row 2 and adds column 2 to column 4
        stage = Als.from_cells(
            ab_xy,
            [
                ["1", "-x", "y", "-1"],
                ["0", "1", "0", "0"],
                ["0", "0", "1", "-x"],
                ["0", "0", "0", "1"],
            ],
            [0, 1, 0, 1],
        )
        t, u = solve_left_minimization(stage, 2)
        assert t == (Fraction(0), Fraction(-1))
        assert u == (Fraction(0), Fraction(1))

    def test_minimal_monomial_has_independent_left_family(self, ab_xy):
        als = minimal_monomial(ab_xy, (0, 1, 0))
        assert all(
            solve_left_minimization(als, k) is None for k in range(1, als.n)
        )

    def test_pivot_one_detects_zero(self, ab_xy):
        # terminal state of minimizing x + (-x); solvability with U = 0 means p = 0
        tail = Als.from_cells(ab_xy, [["1", "0"], ["0", "1"]], [0, -1])
        assert solve_left_minimization(tail, 1) == ((Fraction(0),), (Fraction(0),))
        # contrast: a unit polynomial forces U != 0, so pivot 1 must fail
        unit = Als.from_cells(ab_xy, [["1", "-1"], ["0", "1"]], [0, 1])
        assert solve_left_minimization(unit, 1) is None

    def test_index_errors(self, intro_als):
        with pytest.raises(IndexError):
            solve_left_minimization(intro_als, 0)
        with pytest.raises(IndexError):
            solve_left_minimization(intro_als, intro_als.n)


class TestSolveRightMinimization:
    def test_zero_right_component_in_sum(self, ab_xy):
        total = restore_polynomial_form(
            als_add(system_for_x(ab_xy), system_for_one_minus_yx(ab_xy))
        )
        t, u = solve_right_minimization(total, 3)
        assert t == (Fraction(1), Fraction(0))  # add row 3 to row 1
        assert u == (Fraction(0), Fraction(0))

    def test_product_coupling_column(self, ab_xy):
        product = als_mul(system_for_x(ab_xy), system_for_one_minus_yx(ab_xy))
        t, u = solve_right_minimization(product, 3)
        assert t == (Fraction(0), Fraction(1))  # add row 3 to row 2
        assert u == (Fraction(0), Fraction(0))

    def test_independent_right_family(self, ab_xy):
        als = system_for_x(ab_xy)
        assert solve_right_minimization(als, 2) is None

    def test_index_errors(self, intro_als):
        with pytest.raises(IndexError):
            solve_right_minimization(intro_als, 1)
        with pytest.raises(IndexError):
            solve_right_minimization(intro_als, intro_als.n + 1)


class TestMinimize:
    def test_sum_reduces_to_dimension_three(self, ab_xy):
        trace = []
        reduced = minimize(
            als_add(system_for_x(ab_xy), system_for_one_minus_yx(ab_xy)), trace
        )
        assert trace == ["R k=3 dim=4", "L k=2 dim=3"]
        assert reduced == Als.from_cells(
            ab_xy,
            [["1", "y", "-1-x"], ["0", "1", "-x"], ["0", "0", "1"]],
            [0, 0, 1],
        )
        assert reduced.polynomial() == parse("1 + x - y*x", ab_xy)

    def test_product_reduces_to_dimension_four(self, ab_xy):
        trace = []
        reduced = minimize(
            als_mul(system_for_x(ab_xy), system_for_one_minus_yx(ab_xy)), trace
        )
        assert trace == ["R k=3 dim=4"]
        assert reduced == Als.from_cells(
            ab_xy,
            [
                ["1", "-x", "0", "0"],
                ["0", "1", "y", "-1"],
                ["0", "0", "1", "-x"],
                ["0", "0", "0", "1"],
            ],
            [0, 0, 0, 1],
        )

    def test_opposites_collapse_to_empty(self, ab_xy):
        total = als_add(minimal_monomial(ab_xy, (0,)), minimal_monomial(ab_xy, (0,), -1))
        assert minimize(total).is_empty

    def test_idempotent_on_minimal_input(self, ab_xyz):
        als = minimal_monomial(ab_xyz, (0, 1, 2))
        assert minimize(als) == als

    def test_empty_input(self, ab_xy):
        assert minimize(Als.empty(ab_xy)).is_empty

    def test_accepted_steps_make_removal_admissible(self, ab_xy):
        # turn each solver solution into the full (P(T), Q(U)) pair and check
        # the removal precondition: A_23 = 0 and v_2 = 0, or A_12 = 0
        total = restore_polynomial_form(
            als_add(system_for_x(ab_xy), system_for_one_minus_yx(ab_xy))
        )
        n = total.n
        k = 3
        t, u = solve_right_minimization(total, k)
        cells_p = {(i, k - 1): t[i] for i in range(k - 1)}
        cells_q = {(i, k - 1): u[i] for i in range(k - 1)}
        p = RatMatrix(
            [
                [Fraction(1) if i == j else cells_p.get((i, j), Fraction(0)) for j in range(n)]
                for i in range(n)
            ]
        )
        q = RatMatrix(
            [
                [Fraction(1) if i == j else cells_q.get((i, j), Fraction(0)) for j in range(n)]
                for i in range(n)
            ]
        )
        moved = apply_transformation(total, AdmissibleTransformation(p, q))
        assert all(moved.rows[i][k - 1].is_zero for i in range(k - 1))
        assert moved.polynomial() == total.polynomial()


class TestRankOf:
    def test_introduction_polynomial(self, ab_xy):
        assert rank_of(parse("x - x*y*x", ab_xy)) == 4

    def test_power_family(self, ab_xyz):
        base = parse("x + y + z", ab_xyz)
        for k in range(5):
            assert rank_of(base**k) == k + 1

    def test_trivial_ranks(self, ab_xy):
        assert rank_of(parse("0", ab_xy)) == 0
        assert rank_of(parse("7/2", ab_xy)) == 1
        assert rank_of(parse("x - 3", ab_xy)) == 2


class TestBuildAls:
    def test_anticommutator(self, ab_xy):
        als = build_als(parse("x*y + y*x", ab_xy))
        assert als.n == 4
        assert is_minimal(als)

    def test_zero_polynomial(self, ab_xy):
        assert build_als(parse("0", ab_xy)).is_empty

    def test_dimension_is_insertion_order_independent(self, ab_xyz):
        rng = random.Random(42)
        for _ in range(5):
            p = random_polynomial(rng, ab_xyz, max_terms=6, max_degree=4)
            reference = build_als(p).n
            words = list(p.support())
            for _ in range(4):
                rng.shuffle(words)
                shuffled = build_als(p, insertion_order=list(words))
                assert shuffled.n == reference
                assert shuffled.polynomial() == p

    def test_rejects_bad_insertion_order(self, ab_xy):
        p = parse("x + y", ab_xy)
        with pytest.raises(ValueError):
            build_als(p, insertion_order=[(0,)])


class TestIsMinimal:
    def test_two_dim_letter_system(self, ab_xy):
        assert is_minimal(system_for_x(ab_xy))

    def test_raw_sum_is_not_minimal(self, ab_xy):
        total = als_add(system_for_x(ab_xy), system_for_one_minus_yx(ab_xy))
        assert not is_minimal(total)

    def test_remark_systems(self, seven_dim_remark, six_dim_remark):
        assert not is_minimal(seven_dim_remark)
        assert is_minimal(six_dim_remark)

    def test_empty_is_minimal(self, ab_xy):
        assert is_minimal(Als.empty(ab_xy))


class TestCorpusInvariants:
    def test_minimize_preserves_polynomial_and_reaches_minimality(self, ab_xyz):
        rng = random.Random(7)
        for _ in range(30):
            p = random_polynomial(rng, ab_xyz, max_terms=8, max_degree=4)
            als = build_als(p)
            assert als.polynomial() == p
            assert is_minimal(als)
            assert minimize(als).n == als.n

    def test_evaluation_matches_oracle(self, ab_xyz):
        rng = random.Random(8)
        for _ in range(15):
            p = random_polynomial(rng, ab_xyz, max_terms=6, max_degree=4)
            als = build_als(p)
            tup = random_rational_tuple(rng, 3, 3)
            reference = naive_evaluate(p, tup.mats)
            assert np.array_equal(evaluate_left(als, tup).result, reference)
            assert np.array_equal(evaluate_right(als, tup).result, reference)

    def test_rank_laws(self, ab_xy):
        rng = random.Random(9)
        for _ in range(12):
            p = random_polynomial(rng, ab_xy, max_terms=4, max_degree=3)
            q = random_polynomial(rng, ab_xy, max_terms=4, max_degree=3)
            rp, rq = rank_of(p), rank_of(q)
            assert rank_of(p + q) <= rp + rq
            if not p.is_zero and not q.is_zero:
                assert rank_of(p * q) == rp + rq - 1

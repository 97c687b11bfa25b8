"""Minimization of polynomial admissible linear systems.

A system is minimal exactly when both its left family ``s = A^-1 v`` and
right family ``t = u A^-1`` are linearly independent over the rationals.
Dependencies are detected by solving *minimization equations*: small exact
linear systems whose solutions (T, U) turn into row/column transformations
after which one row/column can be removed without changing the represented
polynomial.

Pivot indices in this module are 1-based, matching the block decomposition

    [A_11  A_12  A_13]       [v_1]
    [  0    1    A_23]   v = [v_2]
    [  0    0    A_33]       [v_3]

with row/column ``k`` in the middle.  The left equations at pivot k are
``U + A_23 + T A_33 = 0`` and ``v_2 + T v_3 = 0``; the right equations are
``A_11 U + A_12 + T = 0``.  Both split per pencil component into rational
systems because T and U are scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .freepoly import Alphabet, NcPolynomial, Word, word_key
from .realization import (
    Als,
    LinearEntry,
    als_add,
    minimal_monomial,
    restore_polynomial_form,
)


@dataclass(frozen=True)
class BlockDecomposition:
    """The system split around pivot row/column k (1-based)."""

    k: int
    a11: tuple[tuple[LinearEntry, ...], ...]
    a12: tuple[LinearEntry, ...]
    a13: tuple[tuple[LinearEntry, ...], ...]
    a23: tuple[LinearEntry, ...]
    a33: tuple[tuple[LinearEntry, ...], ...]
    v1: tuple[Fraction, ...]
    v2: Fraction
    v3: tuple[Fraction, ...]


def decompose(als: Als, k: int) -> BlockDecomposition:
    if not 1 <= k <= als.n:
        raise IndexError(f"pivot {k} out of range for dimension {als.n}")
    p = k - 1
    rows = als.rows
    return BlockDecomposition(
        k=k,
        a11=tuple(row[:p] for row in rows[:p]),
        a12=tuple(rows[i][p] for i in range(p)),
        a13=tuple(row[p + 1 :] for row in rows[:p]),
        a23=tuple(rows[p][p + 1 :]),
        a33=tuple(row[p + 1 :] for row in rows[p + 1 :]),
        v1=als.rhs[:p],
        v2=als.rhs[p] if als.n else Fraction(0),
        v3=als.rhs[p + 1 :],
    )


def reassemble(als_alphabet: Alphabet, blocks: BlockDecomposition) -> Als:
    """Inverse of decompose; used to validate the block split."""
    p = blocks.k - 1
    d = len(als_alphabet)
    one = LinearEntry.scalar(1, d)
    zero = LinearEntry.zero(d)
    n = p + 1 + len(blocks.a33)
    rows = []
    for i in range(p):
        rows.append(
            list(blocks.a11[i]) + [blocks.a12[i]] + list(blocks.a13[i])
        )
    rows.append([zero] * p + [one] + list(blocks.a23))
    for i in range(n - p - 1):
        rows.append([zero] * (p + 1) + list(blocks.a33[i]))
    rhs = list(blocks.v1) + [blocks.v2] + list(blocks.v3)
    return Als(als_alphabet, rows, rhs)


def solve_left_minimization(
    als: Als, k: int
) -> Optional[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    """Solve U + A_23 + T A_33 = 0 and v_2 + T v_3 = 0 at pivot k.

    Returns (T, U) with entries in K^{1 x (n-k)}, or None.  At k = 1 the
    transformation must keep the first row of Q equal to e1, which forces
    U = 0; solvability there certifies that the represented polynomial is
    zero.
    """
    n = als.n
    if not 1 <= k <= n - 1:
        raise IndexError(f"left pivot {k} out of range for dimension {n}")
    blocks = decompose(als, k)
    q = n - k
    d = len(als.alphabet)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    components = range(d + 1) if k == 1 else range(1, d + 1)
    for comp in components:
        for j in range(q):
            rows.append([blocks.a33[r][j].coeffs[comp] for r in range(q)])
            rhs.append(-blocks.a23[j].coeffs[comp])
    rows.append(list(blocks.v3))
    rhs.append(-blocks.v2)
    t = linalg.solve_rows(rows, rhs, q)
    if t is None:
        return None
    u = [
        -(
            blocks.a23[j].constant
            + sum((t[r] * blocks.a33[r][j].constant for r in range(q)), Fraction(0))
        )
        for j in range(q)
    ]
    return tuple(t), tuple(u)


def solve_right_minimization(
    als: Als, k: int
) -> Optional[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    """Solve A_11 U + A_12 + T = 0 at pivot k.

    Returns (T, U) with entries in K^{(k-1) x 1}, or None.  Admissibility
    forbids touching the first column, so U_1 = 0 is imposed.
    """
    n = als.n
    if not 2 <= k <= n:
        raise IndexError(f"right pivot {k} out of range for dimension {n}")
    blocks = decompose(als, k)
    q = k - 1
    d = len(als.alphabet)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for comp in range(1, d + 1):
        for i in range(q):
            rows.append([blocks.a11[i][c].coeffs[comp] for c in range(q)])
            rhs.append(-blocks.a12[i].coeffs[comp])
    rows.append([Fraction(1)] + [Fraction(0)] * (q - 1))  # U_1 = 0
    rhs.append(Fraction(0))
    u = linalg.solve_rows(rows, rhs, q)
    if u is None:
        return None
    t = [
        -(
            blocks.a12[i].constant
            + sum((blocks.a11[i][c].constant * u[c] for c in range(q)), Fraction(0))
        )
        for i in range(q)
    ]
    return tuple(t), tuple(u)


def _drop(als: Als, k: int, rows, rhs) -> Als:
    """Remove row/column k (1-based) from mutable copies and rebuild."""
    p = k - 1
    new_rows = [
        [entry for j, entry in enumerate(row) if j != p]
        for i, row in enumerate(rows)
        if i != p
    ]
    new_rhs = [x for i, x in enumerate(rhs) if i != p]
    return Als(als.alphabet, new_rows, new_rhs)


def _left_step(als: Als, k: int, t, u) -> Als:
    """Apply the left transformation at pivot k and remove row/column k."""
    p = k - 1
    rows = [list(row) for row in als.rows]
    rhs = list(als.rhs)
    # row k += T . (rows below)
    for j, factor in enumerate(t):
        if factor:
            src = p + 1 + j
            rows[p] = [a + b.scale(factor) for a, b in zip(rows[p], rows[src])]
            rhs[p] += factor * rhs[src]
    # column k+j += U_j . column k
    for j, factor in enumerate(u):
        if factor:
            dst = p + 1 + j
            for i in range(len(rows)):
                rows[i][dst] = rows[i][dst] + rows[i][p].scale(factor)
    assert all(rows[p][j].is_zero for j in range(p + 1, als.n)) and rhs[p] == 0
    return _drop(als, k, rows, rhs)


def _right_step(als: Als, k: int, t, u) -> Als:
    """Apply the right transformation at pivot k and remove row/column k."""
    p = k - 1
    rows = [list(row) for row in als.rows]
    rhs = list(als.rhs)
    # row i += T_i . row k  (for i < k)
    for i, factor in enumerate(t):
        if factor:
            rows[i] = [a + b.scale(factor) for a, b in zip(rows[i], rows[p])]
            rhs[i] += factor * rhs[p]
    # column k += sum_i U_i . column i
    for i, factor in enumerate(u):
        if factor:
            for r in range(len(rows)):
                rows[r][p] = rows[r][p] + rows[r][i].scale(factor)
    assert all(rows[i][p].is_zero for i in range(p))
    return _drop(als, k, rows, rhs)


def minimize(als: Als, trace: Optional[list[str]] = None) -> Als:
    """Reduce to a minimal polynomial ALS for the same polynomial.

    Scans pivots with the decrement rule so every removable row/column is
    found; the final dimension equals the rank of the polynomial.  Returns
    the empty system exactly when the polynomial is zero.  Input may have a
    general right-hand side; polynomial form is restored first (and again
    at the end, since a removal at the last pivot can disturb it).
    """
    if als.is_empty:
        return als
    if all(x == 0 for x in als.rhs):
        return Als.empty(als.alphabet)
    als = restore_polynomial_form(als)
    k = 2
    while k <= als.n:
        n = als.n
        pivot = n + 1 - k
        left = solve_left_minimization(als, pivot) if pivot >= 1 else None
        if left is not None:
            if pivot == 1:
                return Als.empty(als.alphabet)
            als = _left_step(als, pivot, *left)
            if trace is not None:
                trace.append(f"L k={pivot} dim={als.n}")
            if k > 2 and 2 * k > n + 1:
                k -= 1
            continue
        right = solve_right_minimization(als, k)
        if right is not None:
            als = _right_step(als, k, *right)
            if trace is not None:
                trace.append(f"R k={k} dim={als.n}")
            if k > 2 and 2 * k > n + 1:
                k -= 1
            continue
        k += 1
    if all(x == 0 for x in als.rhs):
        return Als.empty(als.alphabet)
    return restore_polynomial_form(als)


def build_als(
    p: NcPolynomial, insertion_order: Optional[Sequence[Word]] = None
) -> Als:
    """Minimal polynomial ALS for p, built monomial by monomial.

    Each monomial's bidiagonal system is added and the sum is minimized
    before the next one, keeping intermediate dimensions near-minimal.
    The default insertion order is canonical deglex (lowest degree first);
    the final dimension is order-independent, though the sparsity of the
    result is not.
    """
    if insertion_order is None:
        words = sorted(p.support(), key=word_key)
    else:
        words = list(insertion_order)
        if sorted(words, key=word_key) != sorted(p.support(), key=word_key):
            raise ValueError("insertion order must be a permutation of the support")
    acc = Als.empty(p.alphabet)
    for word in words:
        mono = minimal_monomial(p.alphabet, word, p.coefficient(word))
        acc = minimize(als_add(acc, mono))
    return acc


def rank_of(p: NcPolynomial) -> int:
    """Dimension of a minimal linear representation of p.

    rank 0 iff p = 0; rank 1 for nonzero scalars; degree + 1 in the
    univariate case.
    """
    return build_als(p).n


def _family_rank(family: Sequence[NcPolynomial]) -> int:
    support = sorted(set().union(*(q.support() for q in family)), key=word_key)
    if not support:
        return 0
    matrix = linalg.RatMatrix(
        [[q.coefficient(w) for w in support] for q in family]
    )
    return linalg.rank(matrix)


def is_minimal(als: Als) -> bool:
    """Exact minimality certificate: both families linearly independent.

    The families are computed symbolically and stacked as coefficient
    vectors over their joint word support; independence is a rational rank
    computation.
    """
    if als.is_empty:
        return True
    n = als.n
    return (
        _family_rank(als.left_family()) == n
        and _family_rank(als.right_family()) == n
    )

"""Evaluation of linear systems on matrix tuples, with multiplication counts.

Evaluating a polynomial ALS never inverts anything: the left family is
computed bottom-up (s_n = lam*I, then s_{n-1} ... s_1 = p), the right
family top-down.  Each step materializes pencil entries as
``c0*I + c1*X1 + ... + cd*Xd`` (additions and scalings only) and multiplies
them into the running family values.

Only genuine matrix-matrix products are counted.  Values that are scalar
multiples of the identity are tracked *structurally* (by how they were
produced, not by inspecting numeric content), so products with them are
O(m^2) scalings and stay uncounted; this is exactly why the static counts
N_s / N_t exclude the last column respectively the first row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import FormatError
from .factorizer import BlockFactorization
from .freepoly import identity_matrix
from .realization import Als, LinearEntry

RAT = "rat"
F64 = "f64"


@dataclass(frozen=True)
class MatrixTuple:
    """One square matrix per letter, all of the same size and mode."""

    mats: tuple[np.ndarray, ...]
    mode: str  # RAT (Fraction entries) or F64

    def __post_init__(self):
        if self.mode not in (RAT, F64):
            raise ValueError(f"mode must be {RAT!r} or {F64!r}")
        if not self.mats:
            raise ValueError("need at least one matrix")
        m = self.mats[0].shape[0]
        for mat in self.mats:
            if mat.shape != (m, m):
                raise ValueError("matrices must all be square of the same size")

    @classmethod
    def exact(cls, mats: Sequence[Sequence[Sequence]]) -> "MatrixTuple":
        arrays = tuple(
            np.array([[Fraction(x) for x in row] for row in mat], dtype=object)
            for mat in mats
        )
        return cls(arrays, RAT)

    @classmethod
    def floating(cls, mats: Sequence) -> "MatrixTuple":
        return cls(tuple(np.array(mat, dtype=float) for mat in mats), F64)

    @property
    def m(self) -> int:
        return self.mats[0].shape[0]

    @property
    def d(self) -> int:
        return len(self.mats)

    @property
    def is_exact(self) -> bool:
        return self.mode == RAT

    def to_float(self) -> "MatrixTuple":
        if self.mode == F64:
            return self
        return MatrixTuple(
            tuple(mat.astype(object).astype(float) for mat in self.mats), F64
        )


@dataclass(frozen=True)
class EvalReport:
    """Evaluation result plus the number of matrix products actually done."""

    result: np.ndarray
    mult_count: int
    side: str  # "left" or "right"


def random_rational_tuple(
    rng, d: int, m: int, max_num: int = 4, max_den: int = 4
) -> MatrixTuple:
    """Seeded random exact tuple; handy for oracle-equivalence checks."""
    mats = [
        [
            [
                Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
                for _ in range(m)
            ]
            for _ in range(m)
        ]
        for _ in range(d)
    ]
    return MatrixTuple.exact(mats)


# -- tracked values -----------------------------------------------------------


class _Value:
    """Either a scalar multiple of the identity or a full matrix."""

    __slots__ = ("scalar", "mat")

    def __init__(self, scalar=None, mat=None):
        self.scalar = scalar
        self.mat = mat

    @property
    def is_scalar(self) -> bool:
        return self.mat is None


class _Accumulator:
    """Sum of tracked values; stays scalar until a matrix term arrives."""

    def __init__(self, tup: MatrixTuple):
        self.tup = tup
        self.scalar = Fraction(0) if tup.is_exact else 0.0
        self.mat: Optional[np.ndarray] = None

    def add(self, value: _Value, negate: bool = False) -> None:
        sign = -1 if negate else 1
        if value.is_scalar:
            self.scalar += sign * value.scalar
        elif self.mat is None:
            self.mat = sign * value.mat
        else:
            self.mat = self.mat + sign * value.mat

    def finish(self) -> _Value:
        if self.mat is None:
            return _Value(scalar=self.scalar)
        mat = self.mat
        if self.scalar:
            mat = mat + self.scalar * identity_matrix(self.tup.m, self.tup.is_exact)
        return _Value(mat=mat)


def _coeff(value: Fraction, exact: bool):
    return value if exact else float(value)


def _entry_value(entry: LinearEntry, tup: MatrixTuple) -> _Value:
    """Materialize a pencil entry; additions and scalings only, no products."""
    exact = tup.is_exact
    if entry.is_scalar:
        return _Value(scalar=_coeff(entry.constant, exact))
    acc = None
    for index, coeff in enumerate(entry.coeffs[1:]):
        if coeff == 0:
            continue
        term = _coeff(coeff, exact) * tup.mats[index]
        acc = term if acc is None else acc + term
    if entry.constant != 0:
        acc = acc + _coeff(entry.constant, exact) * identity_matrix(tup.m, exact)
    return _Value(mat=acc)


class _Counter:
    def __init__(self):
        self.count = 0

    def product(self, left: _Value, right: _Value) -> _Value:
        """Multiply tracked values; count only matrix-times-matrix."""
        if left.is_scalar and right.is_scalar:
            return _Value(scalar=left.scalar * right.scalar)
        if left.is_scalar:
            return _Value(mat=left.scalar * right.mat)
        if right.is_scalar:
            return _Value(mat=right.scalar * left.mat)
        self.count += 1
        return _Value(mat=left.mat @ right.mat)


def _materialize(value: _Value, tup: MatrixTuple) -> np.ndarray:
    if value.is_scalar:
        return value.scalar * identity_matrix(tup.m, tup.is_exact)
    return value.mat


def _check_compatible(als: Als, tup: MatrixTuple) -> None:
    if tup.d != len(als.alphabet):
        raise ValueError(
            f"tuple has {tup.d} matrices but the alphabet has {len(als.alphabet)}"
        )


def _require_polynomial(als: Als) -> None:
    if not als.is_polynomial_form:
        raise ValueError("system is not in polynomial form; minimize/restore first")


def evaluate_left(als: Als, tup: MatrixTuple) -> EvalReport:
    """Back substitution s_n = lam*I, s_i = -sum_{j>i} a_ij s_j; result s_1."""
    _check_compatible(als, tup)
    _require_polynomial(als)
    if als.is_empty:
        zero = Fraction(0) if tup.is_exact else 0.0
        return EvalReport(zero * identity_matrix(tup.m, tup.is_exact), 0, "left")
    n = als.n
    counter = _Counter()
    family: list[Optional[_Value]] = [None] * n
    family[n - 1] = _Value(scalar=_coeff(als.lam, tup.is_exact))
    for i in range(n - 2, -1, -1):
        acc = _Accumulator(tup)
        for j in range(i + 1, n):
            entry = als.rows[i][j]
            if entry.is_zero:
                continue
            acc.add(counter.product(_entry_value(entry, tup), family[j]), negate=True)
        family[i] = acc.finish()
    return EvalReport(_materialize(family[0], tup), counter.count, "left")


def evaluate_right(als: Als, tup: MatrixTuple) -> EvalReport:
    """Forward substitution t_1 = I, t_j = -sum_{i<j} t_i a_ij; result lam*t_n."""
    _check_compatible(als, tup)
    _require_polynomial(als)
    if als.is_empty:
        zero = Fraction(0) if tup.is_exact else 0.0
        return EvalReport(zero * identity_matrix(tup.m, tup.is_exact), 0, "right")
    n = als.n
    counter = _Counter()
    family: list[_Value] = [_Value(scalar=_coeff(Fraction(1), tup.is_exact))]
    for j in range(1, n):
        acc = _Accumulator(tup)
        for i in range(j):
            entry = als.rows[i][j]
            if entry.is_zero:
                continue
            acc.add(counter.product(family[i], _entry_value(entry, tup)), negate=True)
        family.append(acc.finish())
    last = family[n - 1]
    lam = _coeff(als.lam, tup.is_exact)
    if last.is_scalar:
        result = _Value(scalar=lam * last.scalar)
    else:
        result = _Value(mat=lam * last.mat)
    return EvalReport(_materialize(result, tup), counter.count, "right")


# -- static multiplication counts ---------------------------------------------


def count_ns(als: Als) -> int:
    """Non-scalar entries in the upper-left (n-1) x (n-1) block."""
    n = als.n
    if n < 2:
        return 0
    return sum(
        1
        for i in range(n - 1)
        for j in range(i + 1, n - 1)
        if not als.rows[i][j].is_scalar
    )


def count_nt(als: Als) -> int:
    """Non-scalar entries in the lower-right (n-1) x (n-1) block."""
    n = als.n
    if n < 2:
        return 0
    return sum(
        1
        for i in range(1, n)
        for j in range(i + 1, n)
        if not als.rows[i][j].is_scalar
    )


def count_n(als: Als) -> int:
    """min(N_s, N_t): the cheaper of the two evaluation directions."""
    if als.n < 2:
        return 0
    return min(count_ns(als), count_nt(als))


def complexity_bounds(n: int) -> tuple[int, int]:
    """Bounds n-2 <= N(p) <= (n-1)(n-2)/2 for a polynomial of rank n >= 2."""
    if n < 2:
        raise ValueError("bounds are defined for rank >= 2")
    return n - 2, (n - 1) * (n - 2) // 2


# -- block factorizations -------------------------------------------------------


def evaluate_block_factorization(
    bf: BlockFactorization, tup: MatrixTuple
) -> EvalReport:
    """Evaluate a chain of rectangular pencil matrices left to right.

    The running value is a row of tracked blocks; a cell product is counted
    only when both sides are genuinely non-scalar.
    """
    if bf.alphabet is not None and tup.d != len(bf.alphabet):
        raise ValueError("tuple size does not match the factor alphabet")
    counter = _Counter()
    first = bf.factors[0]
    row: list[_Value] = [_entry_value(entry, tup) for entry in first[0]]
    for factor in bf.factors[1:]:
        if len(factor) != len(row):
            raise ValueError("factor dimensions do not chain")
        width = len(factor[0])
        new_row = []
        for j in range(width):
            acc = _Accumulator(tup)
            for i, value in enumerate(row):
                entry = factor[i][j]
                if entry.is_zero or (value.is_scalar and value.scalar == 0):
                    continue
                acc.add(counter.product(value, _entry_value(entry, tup)))
            new_row.append(acc.finish())
        row = new_row
    if len(row) != 1:
        raise ValueError("factor chain must end in a single column")
    return EvalReport(_materialize(row[0], tup), counter.count, "left")


def evaluate_product(systems: Sequence[Als], tup: MatrixTuple) -> EvalReport:
    """Evaluate a product of polynomials, each given by a polynomial ALS.

    Every factor is evaluated through its own system (left side), then the
    results are chained left to right; scalar factors never cost a product.
    """
    if not systems:
        raise ValueError("need at least one factor")
    total = 0
    value: Optional[_Value] = None
    counter = _Counter()
    for als in systems:
        report = evaluate_left(als, tup)
        total += report.mult_count
        factor = (
            _Value(scalar=_coeff(als.lam, tup.is_exact))
            if als.n == 1
            else _Value(mat=report.result)
        )
        value = factor if value is None else counter.product(value, factor)
    return EvalReport(_materialize(value, tup), total + counter.count, "left")


# -- matrix tuple files ---------------------------------------------------------


def dump_matrix_tuple(tup: MatrixTuple) -> str:
    lines = [f"{tup.m} {tup.d} {tup.mode}"]
    for mat in tup.mats:
        for row in mat:
            if tup.is_exact:
                lines.append(
                    " ".join(f"{x.numerator}/{x.denominator}" for x in row)
                )
            else:
                lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def load_matrix_tuple(text: str) -> MatrixTuple:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("empty matrix file")
    header = lines[0].split()
    if len(header) != 3 or header[2] not in (RAT, F64):
        raise FormatError("matrix header must be 'm d mode' with mode rat|f64")
    try:
        m, d = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FormatError("matrix header must be 'm d mode'") from exc
    if len(lines) != 1 + m * d:
        raise FormatError(f"expected {m * d} matrix rows, found {len(lines) - 1}")
    mats = []
    at = 1
    for _ in range(d):
        rows = []
        for _ in range(m):
            tokens = lines[at].split()
            at += 1
            if len(tokens) != m:
                raise FormatError(f"expected {m} entries per row")
            if header[2] == RAT:
                try:
                    rows.append([Fraction(tok) for tok in tokens])
                except (ValueError, ZeroDivisionError) as exc:
                    raise FormatError(f"bad rational in matrix file: {exc}") from exc
            else:
                try:
                    rows.append([float(tok) for tok in tokens])
                except ValueError as exc:
                    raise FormatError(f"bad float in matrix file: {exc}") from exc
        mats.append(rows)
    if header[2] == RAT:
        return MatrixTuple.exact(mats)
    return MatrixTuple.floating(mats)

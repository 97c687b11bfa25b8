"""Dense exact-rational linear algebra.

Everything here is deliberately boring: row-major ``Fraction`` matrices,
Gaussian elimination with first-nonzero pivoting (exact arithmetic needs no
magnitude pivoting), and a solver that zeroes all free variables so results
are deterministic.  These routines back the minimization equations, the
family-rank tests, and the factorization solves.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence


class RatMatrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if width == 0 or any(len(row) != width for row in data):
            raise ValueError("rows must be non-empty and of equal length")
        self.data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(
            [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def column(cls, entries: Sequence) -> "RatMatrix":
        return cls([[x] for x in entries])

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        return RatMatrix(
            [
                [
                    sum(
                        (self.data[i][k] * other.data[k][j] for k in range(self.cols)),
                        Fraction(0),
                    )
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix[{body}]"


def _eliminate(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Row echelon form in place; returns (rows, pivot column indices)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    target = 0
    for col in range(n_cols):
        pivot_row = next(
            (r for r in range(target, n_rows) if rows[r][col] != 0), None
        )
        if pivot_row is None:
            continue
        rows[target], rows[pivot_row] = rows[pivot_row], rows[target]
        inv = 1 / rows[target][col]
        rows[target] = [x * inv for x in rows[target]]
        for r in range(n_rows):
            if r != target and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[target])]
        pivots.append(col)
        target += 1
        if target == n_rows:
            break
    return rows, pivots


def rank(a: RatMatrix) -> int:
    """Exact rank by rational Gaussian elimination."""
    work = [list(row) for row in a.data]
    _, pivots = _eliminate(work)
    return len(pivots)


def is_invertible(a: RatMatrix) -> bool:
    if a.rows != a.cols:
        raise ValueError("invertibility is only defined for square matrices")
    return rank(a) == a.rows


def solve_linear(a: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """Solve A x = b exactly.

    Returns the particular solution with all free variables set to zero,
    or ``None`` when the system is inconsistent.
    """
    if b.cols != 1 or b.rows != a.rows:
        raise ValueError("right-hand side must be a column of matching height")
    width = a.cols
    augmented = [list(row) + [b.data[i][0]] for i, row in enumerate(a.data)]
    reduced, pivots = _eliminate(augmented)
    if width in pivots:
        return None  # a pivot in the constant column: inconsistent
    solution = [Fraction(0)] * width
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][width]
    return RatMatrix.column(solution)


def solve_rows(
    rows: Sequence[Sequence], rhs: Sequence, width: int
) -> Optional[list[Fraction]]:
    """Solve a system given as plain lists; tolerates empty systems.

    ``rows`` are coefficient rows of length ``width``; returns a flat
    solution list (free variables zero) or ``None`` if inconsistent.
    """
    rows = [list(map(Fraction, row)) for row in rows]
    rhs = [Fraction(x) for x in rhs]
    if width == 0:
        return [] if all(x == 0 for x in rhs) else None
    if not rows:
        return [Fraction(0)] * width
    solution = solve_linear(RatMatrix(rows), RatMatrix.column(rhs))
    if solution is None:
        return None
    return [solution.data[i][0] for i in range(width)]

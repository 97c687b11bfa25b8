"""Factorization of polynomials through zero blocks in minimal systems.

A minimal polynomial ALS of dimension n represents a product q1*q2 with
rank(q_i) = n_i (n_1 + n_2 = n + 1) exactly when some polynomial
transformation (P, Q) pushes an (n_1 - 1) x (n_2 - 1) block of zeros into
the upper right corner of the system matrix.  Finding such (P, Q) is a
non-linear problem in general; this module implements the *linear*
"non-overlapping" strategies: rows-only, columns-only, joint solves whose
row sources all lie below the split and whose column sources all lie above
it (so no bilinear terms survive), and a bounded alternation of partial
row/column passes.  A ``None`` result therefore means "no split found",
never "irreducible".

Block factorizations (chains of rectangular pencil matrices whose product
is a polynomial) are verified symbolically in the free algebra and can be
embedded as block systems with the factors on the superdiagonal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg, minimizer
from .errors import FormatError
from .freepoly import Alphabet, NcPolynomial
from .linalg import RatMatrix
from .realization import (
    AdmissibleTransformation,
    Als,
    CellLike,
    LinearEntry,
    _coerce_cell,
    apply_transformation,
)

Grid = tuple[tuple[LinearEntry, ...], ...]


def entry_grid(alphabet: Alphabet, cells: Sequence[Sequence[CellLike]]) -> Grid:
    """Rectangular grid of pencil entries from entry-like cells."""
    rows = tuple(
        tuple(_coerce_cell(cell, alphabet) for cell in row) for row in cells
    )
    if not rows or not rows[0]:
        raise ValueError("grid must be non-empty")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("grid rows must have equal length")
    return rows


def hstack(*grids: Grid) -> Grid:
    height = len(grids[0])
    if any(len(g) != height for g in grids):
        raise ValueError("hstack needs equal heights")
    return tuple(
        tuple(entry for g in grids for entry in g[i]) for i in range(height)
    )


def vstack(*grids: Grid) -> Grid:
    width = len(grids[0][0])
    if any(len(g[0]) != width for g in grids):
        raise ValueError("vstack needs equal widths")
    return tuple(row for g in grids for row in g)


def block_diag(*grids: Grid) -> Grid:
    d = grids[0][0][0].width
    total_rows = sum(len(g) for g in grids)
    total_cols = sum(len(g[0]) for g in grids)
    zero = LinearEntry.zero(d)
    out = [[zero] * total_cols for _ in range(total_rows)]
    r = c = 0
    for g in grids:
        for i, row in enumerate(g):
            for j, entry in enumerate(row):
                out[r + i][c + j] = entry
        r += len(g)
        c += len(g[0])
    return tuple(tuple(row) for row in out)


class BlockFactorization:
    """Chain of pencil matrices (1 x k1)(k1 x k2)...(k_r x 1)."""

    __slots__ = ("alphabet", "factors")

    def __init__(self, alphabet: Alphabet, factors: Sequence[Grid]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one factor")
        if len(factors[0]) != 1:
            raise ValueError("first factor must have one row")
        if len(factors[-1][0]) != 1:
            raise ValueError("last factor must have one column")
        for left, right in zip(factors, factors[1:]):
            if len(left[0]) != len(right):
                raise ValueError("factor dimensions do not chain")
        d = len(alphabet)
        for grid in factors:
            for row in grid:
                for entry in row:
                    if entry.width != d:
                        raise ValueError("entry width does not match the alphabet")
        self.alphabet = alphabet
        self.factors = factors

    @classmethod
    def from_cells(
        cls, alphabet: Alphabet, factors: Sequence[Sequence[Sequence[CellLike]]]
    ) -> "BlockFactorization":
        return cls(alphabet, [entry_grid(alphabet, grid) for grid in factors])

    def polynomial(self) -> NcPolynomial:
        """Symbolic product of the chain in the free algebra."""
        row = [entry.to_polynomial(self.alphabet) for entry in self.factors[0][0]]
        for grid in self.factors[1:]:
            width = len(grid[0])
            row = [
                sum(
                    (
                        row[i] * grid[i][j].to_polynomial(self.alphabet)
                        for i in range(len(row))
                    ),
                    NcPolynomial.zero(self.alphabet),
                )
                for j in range(width)
            ]
        return row[0]

    def to_block_als(self) -> Als:
        """Polynomial ALS with -factor blocks on the block superdiagonal."""
        sizes = [1] + [len(grid[0]) for grid in self.factors]
        n = sum(sizes)
        d = len(self.alphabet)
        zero = LinearEntry.zero(d)
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = LinearEntry.scalar(1, d)
        offset = 0
        for b, grid in enumerate(self.factors):
            col_offset = offset + sizes[b]
            for i, grid_row in enumerate(grid):
                for j, entry in enumerate(grid_row):
                    if not entry.is_zero:
                        rows[offset + i][col_offset + j] = -entry
            offset = col_offset
        rhs = [Fraction(0)] * (n - 1) + [Fraction(1)]
        return Als(self.alphabet, rows, rhs)


def verify_block_factorization(bf: BlockFactorization, p: NcPolynomial) -> bool:
    """True iff the symbolic chain product equals p exactly."""
    if bf.alphabet != p.alphabet:
        raise ValueError("factorization and polynomial use different alphabets")
    return bf.polynomial() == p


# -- split search --------------------------------------------------------------


@dataclass(frozen=True)
class FactorSplit:
    """A certified zero-block split of a minimal polynomial ALS."""

    transformed: Als
    n1: int
    n2: int
    transformation: AdmissibleTransformation

    def __post_init__(self):
        n = self.transformed.n
        if self.n1 + self.n2 != n + 1:
            raise ValueError("factor ranks must satisfy n1 + n2 = n + 1")
        if not _block_is_zero(self.transformed, self.n1):
            raise ValueError("zero-block certificate does not hold")


def _block_is_zero(als: Als, n1: int) -> bool:
    return all(
        als.rows[i][j].is_zero
        for i in range(n1 - 1)
        for j in range(n1, als.n)
    )


def _unitriangular(n: int, cells: dict[tuple[int, int], Fraction]) -> RatMatrix:
    rows = [
        [Fraction(1) if i == j else cells.get((i, j), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]
    return RatMatrix(rows)


def _solve_joint(
    als: Als, n1: int, row_sources: Sequence[int], col_sources: Sequence[int]
) -> Optional[AdmissibleTransformation]:
    """One exact linear solve for alpha/beta zeroing the target block.

    Sources are 0-based; every row source must exceed every column source,
    which kills the bilinear alpha*A*beta terms and makes the combined
    equations exactly linear.
    """
    n = als.n
    d = len(als.alphabet)
    target_rows = range(n1 - 1)
    target_cols = range(n1, n)
    variables: list[tuple[str, int, int]] = []
    for i in target_rows:
        for r in row_sources:
            if r > i:
                variables.append(("row", i, r))
    for j in target_cols:
        for c in col_sources:
            if 0 < c < j:
                variables.append(("col", c, j))
    index = {var: pos for pos, var in enumerate(variables)}
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for comp in range(d + 1):
        for i in target_rows:
            for j in target_cols:
                coeffs = [Fraction(0)] * len(variables)
                for r in row_sources:
                    if r > i:
                        coeffs[index[("row", i, r)]] = als.rows[r][j].coeffs[comp]
                for c in col_sources:
                    if 0 < c < j:
                        coeffs[index[("col", c, j)]] = als.rows[i][c].coeffs[comp]
                rows.append(coeffs)
                rhs.append(-als.rows[i][j].coeffs[comp])
    solution = linalg.solve_rows(rows, rhs, len(variables))
    if solution is None:
        return None
    alpha = {
        (i, r): solution[pos]
        for (kind, i, r), pos in index.items()
        if kind == "row" and solution[pos] != 0
    }
    beta = {
        (c, j): solution[pos]
        for (kind, c, j), pos in index.items()
        if kind == "col" and solution[pos] != 0
    }
    return AdmissibleTransformation(
        _unitriangular(n, alpha), _unitriangular(n, beta)
    )


def _solve_single_row(
    als: Als, i: int, n1: int, comps: Sequence[int]
) -> Optional[dict[tuple[int, int], Fraction]]:
    """Row ops zeroing the given components of row i's target cells."""
    n = als.n
    variables = list(range(i + 1, n - 1))
    rows, rhs = [], []
    for comp in comps:
        for j in range(n1, n):
            rows.append([als.rows[r][j].coeffs[comp] for r in variables])
            rhs.append(-als.rows[i][j].coeffs[comp])
    solution = linalg.solve_rows(rows, rhs, len(variables))
    if solution is None or all(x == 0 for x in solution):
        return None
    return {(i, r): x for r, x in zip(variables, solution) if x != 0}


def _solve_single_col(
    als: Als, j: int, n1: int, comps: Sequence[int]
) -> Optional[dict[tuple[int, int], Fraction]]:
    """Column ops zeroing the given components of column j's target cells."""
    variables = list(range(1, j))
    rows, rhs = [], []
    for comp in comps:
        for i in range(n1 - 1):
            rows.append([als.rows[i][c].coeffs[comp] for c in variables])
            rhs.append(-als.rows[i][j].coeffs[comp])
    solution = linalg.solve_rows(rows, rhs, len(variables))
    if solution is None or all(x == 0 for x in solution):
        return None
    return {(c, j): x for c, x in zip(variables, solution) if x != 0}


def _partial_passes(
    als: Als, n1: int, max_passes: int = 3
) -> Optional[tuple[Als, AdmissibleTransformation]]:
    """Alternating per-row / per-column cleanup passes.

    Each pass zeroes whatever single rows or columns of the target block
    are individually reachable on the current matrix; when a row or column
    cannot be zeroed completely, its letter components alone are tried,
    leaving a scalar residue for the other side of the alternation.  Later
    passes see the transformed system, so sequentially applied row and
    column ops compose exactly even where a one-shot joint solve would be
    bilinear.  Bounded, so possibly incomplete by design.
    """
    n = als.n
    d = len(als.alphabet)
    all_comps = list(range(d + 1))
    letter_comps = list(range(1, d + 1))
    current = als
    p_total = RatMatrix.identity(n)
    q_total = RatMatrix.identity(n)
    for _ in range(max_passes):
        changed = False
        for i in range(n1 - 1):
            alpha = _solve_single_row(current, i, n1, all_comps) or _solve_single_row(
                current, i, n1, letter_comps
            )
            if alpha is None:
                continue
            trans = AdmissibleTransformation(
                _unitriangular(n, alpha), RatMatrix.identity(n)
            )
            current = apply_transformation(current, trans)
            p_total = trans.p @ p_total
            changed = True
        for j in range(n1, n):
            beta = _solve_single_col(current, j, n1, all_comps) or _solve_single_col(
                current, j, n1, letter_comps
            )
            if beta is None:
                continue
            trans = AdmissibleTransformation(
                RatMatrix.identity(n), _unitriangular(n, beta)
            )
            current = apply_transformation(current, trans)
            q_total = q_total @ trans.q
            changed = True
        if _block_is_zero(current, n1):
            return current, AdmissibleTransformation(p_total, q_total)
        if not changed:
            return None
    return None


def find_split(
    als: Als, order: Optional[Sequence[int]] = None
) -> Optional[FactorSplit]:
    """Search split positions for a certified zero block.

    ``order`` optionally permutes the candidate positions n1 = 2..n-1.
    Strategies per position, in order: rows-only, columns-only, the two
    non-overlapping joint solves, then bounded alternating passes.  The
    input must be minimal (the factorization criterion presupposes it).
    """
    n = als.n
    if n < 3:
        return None
    if not als.is_polynomial_form:
        raise ValueError("split search needs a polynomial ALS")
    if not minimizer.is_minimal(als):
        raise ValueError("split search needs a minimal system; minimize first")
    positions = list(order) if order is not None else list(range(2, n))
    if sorted(positions) != list(range(2, n)):
        raise ValueError("order must be a permutation of 2..n-1")
    for n1 in positions:
        strategies = (
            (range(1, n - 1), ()),          # rows only
            ((), range(1, n1)),             # columns only
            (range(n1 - 1, n - 1), range(1, n1 - 1)),  # joint, split row at n1
            (range(n1, n - 1), range(1, n1)),          # joint, split col at n1
        )
        for row_sources, col_sources in strategies:
            trans = _solve_joint(als, n1, list(row_sources), list(col_sources))
            if trans is None:
                continue
            transformed = apply_transformation(als, trans)
            if _block_is_zero(transformed, n1):
                return FactorSplit(transformed, n1, n + 1 - n1, trans)
        partial = _partial_passes(als, n1)
        if partial is not None:
            transformed, trans = partial
            return FactorSplit(transformed, n1, n + 1 - n1, trans)
    return None


def extract_factors(split: FactorSplit) -> tuple[Als, Als]:
    """Read the two factor systems off a certified split.

    The left factor lives on rows/columns 1..n1 with lam = 1; the right
    factor on rows/columns n1..n with the original lam.  Their product is
    checked against the represented polynomial exactly.
    """
    als = split.transformed
    n1 = split.n1
    left = Als(
        als.alphabet,
        [row[:n1] for row in als.rows[:n1]],
        [Fraction(0)] * (n1 - 1) + [Fraction(1)],
    )
    right = Als(
        als.alphabet,
        [row[n1 - 1 :] for row in als.rows[n1 - 1 :]],
        als.rhs[n1 - 1 :],
    )
    if left.polynomial() * right.polynomial() != als.polynomial():
        raise RuntimeError("internal inconsistency: extracted factors do not multiply back")
    return left, right


_RETRY_LIMIT_DIM = 10  # beyond this a single search is already expensive


def _split_with_retries(
    als: Als, rng: Optional[random.Random]
) -> Optional[FactorSplit]:
    """find_split, retried on alternative minimal representatives.

    Whether the linear strategies reach a zero block depends on the
    concrete system matrix, not just on the polynomial, so when the search
    misses we rebuild the system with shuffled monomial insertion orders
    and try again.  Seeded deterministically unless a caller rng is given.
    """

    def order_for(n: int) -> Optional[list[int]]:
        if rng is None:
            return None
        positions = list(range(2, n))
        rng.shuffle(positions)
        return positions

    split = find_split(als, order_for(als.n))
    if split is not None or als.n > _RETRY_LIMIT_DIM:
        return split
    poly = als.polynomial()
    words = sorted(poly.support())
    local = random.Random(0x5EED if rng is None else rng.randrange(1 << 30))
    for _ in range(5):
        local.shuffle(words)
        candidate = minimizer.build_als(poly, insertion_order=list(words))
        split = find_split(candidate, order_for(candidate.n))
        if split is not None:
            return split
    return None


def _atoms_from_system(als: Als, rng: Optional[random.Random]) -> list[Als]:
    if als.n < 3:
        return [als]
    split = _split_with_retries(als, rng)
    if split is None:
        return [als]
    left, right = extract_factors(split)
    left = minimizer.minimize(left)
    right = minimizer.minimize(right)
    return _atoms_from_system(left, rng) + _atoms_from_system(right, rng)


def factor_atoms(
    p: NcPolynomial, rng: Optional[random.Random] = None
) -> list[NcPolynomial]:
    """Split recursively until no further split is found.

    The returned factors multiply back to p in order.  Factors are atoms
    *as far as the linear strategies can tell*; a single-element result is
    not a proof of irreducibility.  A miss on one minimal system may be a
    hit on another, so each no-split verdict is double-checked on a few
    rebuilt representatives (small dimensions only).  ``rng`` randomizes
    the split-position order; the atom count is invariant under it.
    """
    if p.is_zero or p.is_scalar:
        raise ValueError("factorization needs a non-scalar polynomial")
    systems = _atoms_from_system(minimizer.build_als(p), rng)
    return [als.polynomial() for als in systems]


# -- matrix reducibility pattern ------------------------------------------------


def check_k_reducibility_pattern(als: Als, i: int, k: int) -> bool:
    """Cellwise test of the k-reducibility pattern at block row i (1-based).

    Checks the system matrix as given (no transformation search): an upper
    right i x (n-i-k) zero block together with an identity k x k diagonal
    block in rows i+1..i+k.  Meaningful for minimal systems, where the
    pattern certifies a factorization of p into matrices of inner size k.
    """
    n = als.n
    if n < 3 or not 1 <= k <= n - 2 or not 1 <= i <= n - k - 1:
        raise IndexError(f"no pattern position (i={i}, k={k}) in dimension {n}")
    for row in range(i):
        for col in range(i + k, n):
            if not als.rows[row][col].is_zero:
                return False
    for row in range(i, i + k):
        for col in range(i, i + k):
            if row != col and not als.rows[row][col].is_zero:
                return False
    return True


# -- serialization ---------------------------------------------------------------

_FACTORS_TAG = "ncpoly-factors 1"


def dump_factors(bf: BlockFactorization) -> str:
    lines = [
        _FACTORS_TAG,
        "alphabet " + ",".join(bf.alphabet.letters),
        f"count {len(bf.factors)}",
    ]
    for grid in bf.factors:
        lines.append(f"factor {len(grid)} {len(grid[0])}")
        for row in grid:
            cells = [
                " ".join(f"{c.numerator}/{c.denominator}" for c in entry.coeffs)
                for entry in row
            ]
            lines.append(" | ".join(cells))
    return "\n".join(lines) + "\n"


def load_factors(text: str) -> BlockFactorization:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != _FACTORS_TAG:
        raise FormatError("not a block-factor file (missing format tag)")
    try:
        alphabet = Alphabet(lines[1].split(" ", 1)[1].split(","))
        count = int(lines[2].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError(f"malformed factor header: {exc}") from exc
    d = len(alphabet)
    factors = []
    at = 3
    for _ in range(count):
        if at >= len(lines) or not lines[at].startswith("factor "):
            raise FormatError("expected a 'factor rows cols' line")
        try:
            _, rows_s, cols_s = lines[at].split()
            height, width = int(rows_s), int(cols_s)
        except ValueError as exc:
            raise FormatError("malformed factor size line") from exc
        at += 1
        grid = []
        for _ in range(height):
            cells = lines[at].split("|")
            at += 1
            if len(cells) != width:
                raise FormatError("factor row width mismatch")
            row = []
            for cell in cells:
                try:
                    coeffs = [Fraction(tok) for tok in cell.split()]
                except (ValueError, ZeroDivisionError) as exc:
                    raise FormatError(f"bad rational: {exc}") from exc
                if len(coeffs) != d + 1:
                    raise FormatError(f"cell needs {d + 1} coefficients")
                row.append(LinearEntry(tuple(coeffs)))
            grid.append(tuple(row))
        factors.append(tuple(grid))
    try:
        return BlockFactorization(alphabet, factors)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc

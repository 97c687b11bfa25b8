"""Admissible linear systems (ALS) for non-commutative polynomials.

An ALS is a triple ``(u, A, v)`` with ``u = e1`` fixed, ``A`` an upper
unitriangular n x n matrix of affine-linear entries, and ``v`` a rational
vector.  The represented polynomial is the first component of the unique
solution ``s`` of ``A s = v``.  The n = 0 system encodes the zero
polynomial.

Entries are *pencils*: an entry is ``c0 + c1*x1 + ... + cd*xd`` stored as a
``(d+1)``-vector of rationals, so the whole matrix can be viewed as
``A = A0 + A1 (x) x1 + ... + Ad (x) xd`` with scalar coefficient matrices.

A *polynomial* ALS additionally has ``v = (0, ..., 0, lam)`` with nonzero
``lam``; all constructors here produce that shape directly, and the
minimizer restores it after transformations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg
from .errors import FormatError
from .freepoly import Alphabet, NcPolynomial, Word, parse

CellLike = Union["LinearEntry", "NcPolynomial", int, Fraction, str]


@dataclass(frozen=True)
class LinearEntry:
    """Affine-linear form c0 + c1*x1 + ... + cd*xd as a coefficient tuple."""

    coeffs: tuple[Fraction, ...]  # length d+1; index 0 is the constant part

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )
        if not self.coeffs:
            raise ValueError("entry needs at least the constant coefficient")

    @classmethod
    def zero(cls, d: int) -> "LinearEntry":
        return cls((Fraction(0),) * (d + 1))

    @classmethod
    def scalar(cls, value, d: int) -> "LinearEntry":
        return cls((Fraction(value),) + (Fraction(0),) * d)

    @classmethod
    def letter(cls, index: int, d: int, coeff=1) -> "LinearEntry":
        coeffs = [Fraction(0)] * (d + 1)
        coeffs[index + 1] = Fraction(coeff)
        return cls(tuple(coeffs))

    @classmethod
    def from_polynomial(cls, p: NcPolynomial) -> "LinearEntry":
        if p.degree() > 1:
            raise ValueError("entry must be affine-linear (degree <= 1)")
        coeffs = [Fraction(0)] * (len(p.alphabet) + 1)
        for word, coeff in p.terms():
            coeffs[0 if not word else word[0] + 1] = coeff
        return cls(tuple(coeffs))

    @property
    def width(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0]

    @property
    def is_scalar(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "LinearEntry") -> "LinearEntry":
        if other.width != self.width:
            raise ValueError("entry width mismatch")
        return LinearEntry(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearEntry":
        return LinearEntry(tuple(-c for c in self.coeffs))

    def scale(self, factor) -> "LinearEntry":
        factor = Fraction(factor)
        return LinearEntry(tuple(factor * c for c in self.coeffs))

    def add_constant(self, value) -> "LinearEntry":
        coeffs = list(self.coeffs)
        coeffs[0] += Fraction(value)
        return LinearEntry(tuple(coeffs))

    def to_polynomial(self, alphabet: Alphabet) -> NcPolynomial:
        terms: dict[Word, Fraction] = {(): self.coeffs[0]}
        for i, coeff in enumerate(self.coeffs[1:]):
            terms[(i,)] = coeff
        return NcPolynomial(alphabet, terms)


def _coerce_cell(cell: CellLike, alphabet: Alphabet) -> LinearEntry:
    if isinstance(cell, LinearEntry):
        if cell.width != len(alphabet):
            raise ValueError("entry width does not match the alphabet")
        return cell
    if isinstance(cell, NcPolynomial):
        return LinearEntry.from_polynomial(cell)
    if isinstance(cell, str):
        return LinearEntry.from_polynomial(parse(cell, alphabet))
    return LinearEntry.scalar(cell, len(alphabet))


class Als:
    """Upper unitriangular admissible linear system (u is implicitly e1)."""

    __slots__ = ("alphabet", "rows", "rhs")

    def __init__(
        self,
        alphabet: Alphabet,
        rows: Sequence[Sequence[LinearEntry]],
        rhs: Sequence,
    ):
        rows = tuple(tuple(row) for row in rows)
        rhs = tuple(Fraction(x) for x in rhs)
        n = len(rows)
        d = len(alphabet)
        if len(rhs) != n:
            raise ValueError("right-hand side length must equal the dimension")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("system matrix must be square")
            for j, entry in enumerate(row):
                if entry.width != d:
                    raise ValueError("entry width does not match the alphabet")
                if i == j and entry.coeffs != LinearEntry.scalar(1, d).coeffs:
                    raise ValueError(f"diagonal entry ({i},{j}) must be scalar 1")
                if i > j and not entry.is_zero:
                    raise ValueError(f"entry ({i},{j}) below the diagonal must be 0")
        self.alphabet = alphabet
        self.rows = rows
        self.rhs = rhs

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Als":
        """The dimension-0 system representing the zero polynomial."""
        return cls(alphabet, (), ())

    @classmethod
    def from_cells(
        cls,
        alphabet: Alphabet,
        cells: Sequence[Sequence[CellLike]],
        rhs: Sequence,
    ) -> "Als":
        """Build a system from a grid of entry-like cells.

        Cells may be ``LinearEntry``, affine-linear ``NcPolynomial``,
        numbers, or strings parsed over the alphabet ("-x", "2c-d", ...).
        """
        rows = [[_coerce_cell(cell, alphabet) for cell in row] for row in cells]
        return cls(alphabet, rows, rhs)

    # -- basic inspection ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def is_empty(self) -> bool:
        return self.n == 0

    @property
    def is_polynomial_form(self) -> bool:
        """v = (0, ..., 0, lam) with lam != 0; vacuously true when empty."""
        if self.is_empty:
            return True
        return all(x == 0 for x in self.rhs[:-1]) and self.rhs[-1] != 0

    @property
    def lam(self) -> Fraction:
        if self.is_empty or not self.is_polynomial_form:
            raise ValueError("system is not in polynomial form")
        return self.rhs[-1]

    def entry(self, i: int, j: int) -> LinearEntry:
        return self.rows[i][j]

    def pencil_component(self, component: int) -> linalg.RatMatrix:
        """Scalar coefficient matrix of pencil component 0..d (0 = constant)."""
        if self.is_empty:
            raise ValueError("empty system has no pencil components")
        return linalg.RatMatrix(
            [[entry.coeffs[component] for entry in row] for row in self.rows]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Als):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.rows == other.rows
            and self.rhs == other.rhs
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.rows, self.rhs))

    def __repr__(self) -> str:
        return f"Als(dim={self.n}, alphabet={','.join(self.alphabet.letters)})"

    # -- symbolic solution ---------------------------------------------------

    def left_family(self) -> list[NcPolynomial]:
        """s = A^-1 v by back substitution; s[0] is the represented polynomial."""
        n = self.n
        family: list[Optional[NcPolynomial]] = [None] * n
        for i in range(n - 1, -1, -1):
            total = NcPolynomial.scalar(self.alphabet, self.rhs[i])
            for j in range(i + 1, n):
                entry = self.rows[i][j]
                if not entry.is_zero:
                    total = total - entry.to_polynomial(self.alphabet) * family[j]
            family[i] = total
        return family  # type: ignore[return-value]

    def right_family(self) -> list[NcPolynomial]:
        """t = u A^-1 by forward substitution; t[0] is always 1."""
        n = self.n
        family: list[NcPolynomial] = []
        for j in range(n):
            if j == 0:
                family.append(NcPolynomial.one(self.alphabet))
                continue
            total = NcPolynomial.zero(self.alphabet)
            for i in range(j):
                entry = self.rows[i][j]
                if not entry.is_zero:
                    total = total - family[i] * entry.to_polynomial(self.alphabet)
            family.append(total)
        return family

    def polynomial(self) -> NcPolynomial:
        """The represented polynomial (symbolic back substitution)."""
        if self.is_empty:
            return NcPolynomial.zero(self.alphabet)
        return self.left_family()[0]


@dataclass(frozen=True)
class AdmissibleTransformation:
    """Pair of invertible scalar matrices (P, Q) with first row of Q = e1."""

    p: linalg.RatMatrix
    q: linalg.RatMatrix

    def __post_init__(self):
        if self.p.rows != self.p.cols or self.q.rows != self.q.cols:
            raise ValueError("transformation matrices must be square")
        if self.p.rows != self.q.rows:
            raise ValueError("P and Q must have the same size")
        n = self.q.rows
        first = self.q.row(0)
        if first[0] != 1 or any(x != 0 for x in first[1:]):
            raise ValueError("first row of Q must be e1")
        if not linalg.is_invertible(self.p) or not linalg.is_invertible(self.q):
            raise ValueError("P and Q must be invertible")

    @property
    def n(self) -> int:
        return self.p.rows


def apply_transformation(als: Als, trans: AdmissibleTransformation) -> Als:
    """Transform (A, v) -> (P A Q, P v); the represented polynomial is unchanged.

    The result must stay upper unitriangular (the only system shape this
    package works with); otherwise ``ValueError`` is raised.
    """
    n = als.n
    if trans.n != n:
        raise ValueError("transformation size does not match the system")
    d = len(als.alphabet)
    components = [
        trans.p @ als.pencil_component(c) @ trans.q for c in range(d + 1)
    ]
    rows = [
        [
            LinearEntry(tuple(components[c][i, j] for c in range(d + 1)))
            for j in range(n)
        ]
        for i in range(n)
    ]
    rhs = [
        sum((trans.p[i, k] * als.rhs[k] for k in range(n)), Fraction(0))
        for i in range(n)
    ]
    return Als(als.alphabet, rows, rhs)


# -- constructors ------------------------------------------------------------


def minimal_monomial(alphabet: Alphabet, word: Word, coeff=1) -> Als:
    """Minimal polynomial ALS for coeff * word, of dimension len(word) + 1.

    The system is bidiagonal: superdiagonal entries -x_{i1}, ..., -x_{ik}
    and v = coeff * e_{k+1}.  ``coeff = 0`` yields the empty system.
    """
    coeff = Fraction(coeff)
    if coeff == 0:
        return Als.empty(alphabet)
    word = tuple(word)
    d = len(alphabet)
    n = len(word) + 1
    rows = [[LinearEntry.zero(d) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = LinearEntry.scalar(1, d)
    for i, letter in enumerate(word):
        rows[i][i + 1] = LinearEntry.letter(letter, d, -1)
    rhs = [Fraction(0)] * (n - 1) + [coeff]
    return Als(alphabet, rows, rhs)


def _block_join(
    a: Als, b: Als, coupling: dict[tuple[int, int], Fraction], rhs: Sequence
) -> Als:
    """Assemble [[A_a, C], [0, A_b]] with C given sparsely by `coupling`."""
    d = len(a.alphabet)
    na, nb = a.n, b.n
    n = na + nb
    rows = [[LinearEntry.zero(d) for _ in range(n)] for _ in range(n)]
    for i in range(na):
        for j in range(na):
            rows[i][j] = a.rows[i][j]
    for i in range(nb):
        for j in range(nb):
            rows[na + i][na + j] = b.rows[i][j]
    for (i, j), value in coupling.items():
        rows[i][na + j] = LinearEntry.scalar(value, d)
    return Als(a.alphabet, rows, rhs)


def als_add(a: Als, b: Als) -> Als:
    """System for the sum of the represented polynomials (not yet minimal).

    Block shape [[A_a, -e1 e1^T], [0, A_b]] with v = (v_a, v_b); dimension
    n_a + n_b.  The right-hand side is generally not in polynomial form;
    minimization restores it.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("operands use different alphabets")
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    coupling = {(0, 0): Fraction(-1)}
    return _block_join(a, b, coupling, list(a.rhs) + list(b.rhs))


def als_mul(a: Als, b: Als) -> Als:
    """System for the product (left factor first); dimension n_a + n_b.

    Block shape [[A_a, -v_a e1^T], [0, A_b]] with v = (0, v_b).  Scalar
    operands short-circuit by scaling the other side's right-hand side.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("operands use different alphabets")
    if a.is_empty or b.is_empty:
        return Als.empty(a.alphabet)
    if a.n == 1:
        return _scale_rhs(b, a.rhs[0])
    if b.n == 1:
        return _scale_rhs(a, b.rhs[0])
    coupling = {
        (i, 0): -a.rhs[i] for i in range(a.n) if a.rhs[i] != 0
    }
    return _block_join(a, b, coupling, [Fraction(0)] * a.n + list(b.rhs))


def _scale_rhs(als: Als, factor: Fraction) -> Als:
    if factor == 0:
        return Als.empty(als.alphabet)
    return Als(als.alphabet, als.rows, [factor * x for x in als.rhs])


def restore_polynomial_form(als: Als) -> Als:
    """Zero out v_1..v_{n-1} by adding multiples of the last row upward.

    Requires v_n != 0.  Only column n of the system matrix changes (the
    last row of A is e_n), so the result stays upper unitriangular and
    lam = v_n is preserved as stored, never rescaled.
    """
    if als.is_empty or als.is_polynomial_form:
        return als
    n = als.n
    if als.rhs[-1] == 0:
        raise ValueError(
            "cannot restore polynomial form: v_n is zero (see minimize)"
        )
    lam = als.rhs[-1]
    rows = [list(row) for row in als.rows]
    for i in range(n - 1):
        if als.rhs[i] != 0:
            rows[i][n - 1] = rows[i][n - 1].add_constant(-als.rhs[i] / lam)
    rhs = [Fraction(0)] * (n - 1) + [lam]
    return Als(als.alphabet, rows, rhs)


# -- companion systems --------------------------------------------------------


def _check_companion_args(
    alphabet: Alphabet, factors: Sequence[CellLike], consts: Sequence
) -> tuple[list[LinearEntry], list[Fraction]]:
    entries = [_coerce_cell(f, alphabet) for f in factors]
    if not entries:
        raise ValueError("need at least one pencil factor")
    for i, entry in enumerate(entries):
        if entry.is_scalar:
            raise ValueError(f"pencil factor {i + 1} is scalar; need rank 2")
    consts = [Fraction(c) for c in consts]
    if len(consts) != len(entries):
        raise ValueError("need exactly one constant per pencil factor")
    return entries, consts


def left_companion(
    alphabet: Alphabet, factors: Sequence[CellLike], consts: Sequence
) -> Als:
    """Companion-style system for q_m...q_1 + a_{m-1} q_{m-1}...q_1 + ... + a_0.

    ``factors`` lists q_1..q_m (affine-linear, non-scalar), ``consts`` lists
    a_0..a_{m-1}.  Dimension m + 1; the first row carries the constants.
    """
    q, a = _check_companion_args(alphabet, factors, consts)
    m = len(q)
    d = len(alphabet)
    n = m + 1
    rows = [[LinearEntry.zero(d) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = LinearEntry.scalar(1, d)
    rows[0][1] = (-q[m - 1]).add_constant(-a[m - 1])
    for col in range(2, n):
        rows[0][col] = LinearEntry.scalar(-a[m - col], d)
    for i in range(1, m):
        rows[i][i + 1] = -q[m - 1 - i]
    return Als(alphabet, rows, [Fraction(0)] * m + [Fraction(1)])


def right_companion(
    alphabet: Alphabet, factors: Sequence[CellLike], consts: Sequence
) -> Als:
    """Companion-style system for a_0 + a_1 q_1 + ... + q_1 q_2 ... q_m.

    For univariate monic input (all q_i = x), evaluating the left family
    bottom-up reproduces the classical nested (Horner) evaluation scheme.
    """
    q, a = _check_companion_args(alphabet, factors, consts)
    m = len(q)
    d = len(alphabet)
    n = m + 1
    rows = [[LinearEntry.zero(d) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = LinearEntry.scalar(1, d)
    for i in range(m - 1):
        rows[i][i + 1] = -q[i]
        rows[i][m] = LinearEntry.scalar(-a[i], d)
    rows[m - 1][m] = (-q[m - 1]).add_constant(-a[m - 1])
    return Als(alphabet, rows, [Fraction(0)] * m + [Fraction(1)])


def format_system(als: Als) -> str:
    """Human-readable display of A and v (zeros shown as '.')."""
    if als.is_empty:
        return "(empty system: the zero polynomial)"
    cells = []
    for i, row in enumerate(als.rows):
        rendered = [
            "." if e.is_zero else str(e.to_polynomial(als.alphabet)) for e in row
        ]
        rendered.append(f"| {als.rhs[i]}")
        cells.append(rendered)
    widths = [
        max(len(cells[i][j]) for i in range(als.n)) for j in range(als.n + 1)
    ]
    lines = [
        "  ".join(cell.rjust(widths[j]) for j, cell in enumerate(row))
        for row in cells
    ]
    return "\n".join(lines)


# -- serialization ------------------------------------------------------------

_FORMAT_TAG = "ncpoly-als 1"


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_frac(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {token!r}") from exc


def dump_als(als: Als) -> str:
    """Stable text serialization; bit-exact round trip with load_als."""
    lines = [
        _FORMAT_TAG,
        f"dim {als.n}",
        "alphabet " + ",".join(als.alphabet.letters),
        f"lambda-pos {als.n if als.is_polynomial_form and not als.is_empty else 0}",
        "matrix",
    ]
    for row in als.rows:
        cells = [" ".join(_frac_str(c) for c in entry.coeffs) for entry in row]
        lines.append(" | ".join(cells))
    lines.append("rhs")
    if als.n:
        lines.append(" ".join(_frac_str(x) for x in als.rhs))
    return "\n".join(lines) + "\n"


def load_als(text: str) -> Als:
    lines = [line.rstrip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != _FORMAT_TAG:
        raise FormatError("not an ALS file (missing format tag)")
    try:
        dim = int(lines[1].split()[1])
        alphabet = Alphabet(lines[2].split(" ", 1)[1].split(","))
        lines[3].split()[1]  # lambda-pos: informational
    except (IndexError, ValueError) as exc:
        raise FormatError(f"malformed ALS header: {exc}") from exc
    expected_lines = 6 + dim + (1 if dim else 0)
    if len(lines) < expected_lines:
        raise FormatError("truncated ALS file")
    if lines[4] != "matrix":
        raise FormatError("expected 'matrix' section")
    d = len(alphabet)
    rows = []
    for i in range(dim):
        cells = lines[5 + i].split("|")
        if len(cells) != dim:
            raise FormatError(f"row {i + 1} has {len(cells)} cells, expected {dim}")
        row = []
        for cell in cells:
            coeffs = [_parse_frac(tok) for tok in cell.split()]
            if len(coeffs) != d + 1:
                raise FormatError(f"cell needs {d + 1} coefficients")
            row.append(LinearEntry(tuple(coeffs)))
        rows.append(row)
    if lines[5 + dim] != "rhs":
        raise FormatError("expected 'rhs' section")
    if dim:
        rhs = [_parse_frac(tok) for tok in lines[6 + dim].split()]
        if len(rhs) != dim:
            raise FormatError("right-hand side length mismatch")
    else:
        rhs = []
    try:
        return Als(alphabet, rows, rhs)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc

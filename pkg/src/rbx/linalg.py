"""Exact scalars and dense linear algebra over the rationals and prime fields.

Scalars are plain Python values: `fractions.Fraction` over the rationals
(always in lowest terms with positive denominator) and integer residues in
``[0, p)`` over a prime field.  A :class:`Field` value carries the arithmetic;
matrices are immutable row-major tuples.

Rank, kernel and solve are computed exactly.  Over the rationals the forward
pass is fraction-free (Bareiss) on denominator-cleared rows, which keeps
intermediate entries polynomially bounded; over a prime field plain
Gauss-Jordan with modular inverses is used.  Pivoting is deterministic (first
nonzero entry in column order), so kernel bases and particular solutions are
reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterator, Optional, Sequence, Union

from .errors import BudgetExceeded, DimensionMismatch, InvalidStructure

Scalar = Union[int, Fraction]
Vector = tuple

#: Default cap on exhaustive-enumeration candidate counts.
DEFAULT_BUDGET = 3 ** 8


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: rationals when ``modulus`` is None, else Z/p."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise InvalidStructure(f"modulus {self.modulus} is not prime")

    @property
    def is_rationals(self) -> bool:
        return self.modulus is None

    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    def normalize(self, value) -> Scalar:
        """Coerce an int/Fraction into canonical form for this field."""
        p = self.modulus
        if p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InvalidStructure(f"{value} is not an integer residue")
            value = value.numerator
        return int(value) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.modulus
        return a + b if p is None else (a + b) % p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.modulus
        return a - b if p is None else (a - b) % p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.modulus
        return a * b if p is None else (a * b) % p

    def neg(self, a: Scalar) -> Scalar:
        p = self.modulus
        return -a if p is None else (-a) % p

    def invert(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.modulus
        if p is None:
            return 1 / Fraction(a)
        return pow(a, p - 2, p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.invert(b))

    def parse(self, text) -> Scalar:
        """Parse the exact text form: "n" or "n/d" over Q, a residue over F_p."""
        if isinstance(text, bool):
            raise InvalidStructure(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return self.normalize(text)
        if not isinstance(text, str):
            raise InvalidStructure(f"not a scalar: {text!r}")
        try:
            if self.modulus is None:
                return Fraction(text)
            return int(text, 10) % self.modulus
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidStructure(f"bad scalar {text!r}: {exc}") from None

    def format(self, value: Scalar) -> str:
        return str(value)

    def __repr__(self):
        return "QQ" if self.modulus is None else f"GF({self.modulus})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# vectors (plain tuples)
# ---------------------------------------------------------------------------

def vec_add(field: Field, u: Vector, v: Vector) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Vector, v: Vector) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_neg(field: Field, u: Vector) -> Vector:
    return tuple(field.neg(a) for a in u)


def vec_scale(field: Field, s: Scalar, u: Vector) -> Vector:
    return tuple(field.mul(s, a) for a in u)


def vec_is_zero(u: Vector) -> bool:
    return not any(u)


def unit_vector(field: Field, n: int, k: int) -> Vector:
    return tuple(field.one if i == k else field.zero for i in range(n))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; linear maps store images of basis vectors as columns."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entry grid does not match declared shape")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rows(field: Field, data: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "Matrix":
        rows = len(data)
        if rows == 0:
            if cols is None:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            return Matrix(field, 0, cols, ())
        width = len(data[0]) if cols is None else cols
        entries = tuple(tuple(field.normalize(x) for x in row) for row in data)
        return Matrix(field, rows, width, entries)

    @staticmethod
    def from_cols(field: Field, columns: Sequence[Vector], rows: Optional[int] = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise DimensionMismatch("empty matrix needs an explicit row count")
            return Matrix(field, rows, 0, tuple(() for _ in range(rows)))
        height = len(columns[0]) if rows is None else rows
        entries = tuple(
            tuple(field.normalize(col[r]) for col in columns) for r in range(height)
        )
        return Matrix(field, height, len(columns), entries)

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        o, z = field.one, field.zero
        return Matrix(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- access -------------------------------------------------------------

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def to_lists(self):
        return [list(r) for r in self.entries]

    # -- arithmetic ----------------------------------------------------------

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.add(a, b) for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.sub(a, b) for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.neg(a) for a in r) for r in self.entries
        ))

    def scale(self, s: Scalar) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.mul(s, a) for a in r) for r in self.entries
        ))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        p = self.field.modulus
        bt = tuple(zip(*other.entries)) if other.rows else tuple(() for _ in range(other.cols))
        if p is None:
            entries = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        else:
            entries = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt)
                for row in self.entries
            )
        return Matrix(self.field, self.rows, other.cols, entries)

    def apply(self, vec: Vector) -> Vector:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} vs {self.rows}x{self.cols}")
        p = self.field.modulus
        if p is None:
            return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)
        return tuple(sum(a * b for a, b in zip(row, vec)) % p for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        return Matrix(self.field, self.rows, self.cols + other.cols, tuple(
            r1 + r2 for r1, r2 in zip(self.entries, other.entries)
        ))

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            (x == 1 if i == j else not x)
            for i, r in enumerate(self.entries) for j, x in enumerate(r)
        )

    # -- elimination-backed queries -------------------------------------------

    def rank(self) -> int:
        _, pivots = _rref(self.field, [list(r) for r in self.entries], self.cols)
        return len(pivots)

    def kernel_basis(self) -> list:
        """Basis of the right kernel, deterministic given the pivoting rule."""
        rref, pivots = _rref(self.field, [list(r) for r in self.entries], self.cols)
        return _kernel_from_rref(self.field, rref, pivots, self.cols)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices invert")
        n = self.rows
        aug = self.hstack(Matrix.identity(self.field, n))
        rref, pivots = _rref(self.field, [list(r) for r in aug.entries], aug.cols)
        if pivots != list(range(n)):
            raise InvalidStructure("matrix is singular")
        return Matrix(self.field, n, n, tuple(tuple(row[n:]) for row in rref))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.entries)
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}: {body})"


# ---------------------------------------------------------------------------
# reduced row echelon form
# ---------------------------------------------------------------------------

def _rref(field: Field, data: list, cols: int):
    """Return ``(pivot_rows, pivot_columns)`` of the RREF.  ``data`` is consumed."""
    if field.modulus is not None:
        return _rref_prime(field.modulus, data, cols)
    return _rref_rationals(data, cols)


def _rref_prime(p: int, m: list, cols: int):
    nrows = len(m)
    for i in range(nrows):
        m[i] = [int(x) % p for x in m[i]]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def _rref_rationals(data: list, cols: int):
    # clear denominators row by row; row scaling changes neither rank nor kernel
    m = []
    for row in data:
        fr = [Fraction(x) for x in row]
        mult = lcm(*(x.denominator for x in fr)) if fr else 1
        m.append([int(x * mult) for x in fr])
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            ri, rr = m[i], m[r]
            for j in range(c, cols):
                ri[j] = (piv * ri[j] - mic * rr[j]) // prev  # exact (Bareiss)
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    rref = [[Fraction(x) for x in m[k]] for k in range(r)]
    for k, c in enumerate(pivots):
        pv = rref[k][c]
        rref[k] = [x / pv for x in rref[k]]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            f = rref[i][c]
            if f:
                rref[i] = [a - f * b for a, b in zip(rref[i], rref[k])]
    return rref, pivots


def _kernel_from_rref(field: Field, rref: list, pivots: list, cols: int) -> list:
    pivset = set(pivots)
    basis = []
    for fc in range(cols):
        if fc in pivset:
            continue
        v = [field.zero] * cols
        v[fc] = field.one
        for k, pc in enumerate(pivots):
            v[pc] = field.neg(field.normalize(rref[k][fc]))
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Vector):
    """Particular solution of ``a x = b`` plus a kernel basis, or None if inconsistent.

    The particular solution sets every free variable to zero, so it is
    deterministic; the residual is exactly zero by construction.
    """
    if len(b) != a.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    f = a.field
    data = [list(r) + [f.normalize(x)] for r, x in zip(a.entries, b)]
    if a.rows == 0:
        data = []
    rref, pivots = _rref(f, data, a.cols + 1)
    if a.cols in pivots:
        return None
    x = [f.zero] * a.cols
    for k, pc in enumerate(pivots):
        x[pc] = f.normalize(rref[k][a.cols])
    kernel = _kernel_from_rref(f, [row[: a.cols] for row in rref], pivots, a.cols)
    return tuple(x), kernel


# ---------------------------------------------------------------------------
# flattening and operator assembly
# ---------------------------------------------------------------------------

def matrix_to_vec_cols(m: Matrix) -> Vector:
    """Column-major flattening (column index major, row index minor)."""
    return tuple(m.entries[r][c] for c in range(m.cols) for r in range(m.rows))


def vec_to_matrix_cols(field: Field, vec: Vector, rows: int, cols: int) -> Matrix:
    if len(vec) != rows * cols:
        raise DimensionMismatch("flat vector length mismatch")
    return Matrix(field, rows, cols, tuple(
        tuple(vec[c * rows + r] for c in range(cols)) for r in range(rows)
    ))


def operator_matrix(field: Field, domain_dim: int, codomain_dim: int,
                    image: Callable[[int], Vector]) -> Matrix:
    """Matrix of a linear map given its values on domain basis vectors."""
    return Matrix.from_cols(field, [tuple(image(k)) for k in range(domain_dim)], rows=codomain_dim)


# ---------------------------------------------------------------------------
# exhaustive enumeration over prime fields
# ---------------------------------------------------------------------------

def matrix_count(field: Field, rows: int, cols: int) -> int:
    if field.modulus is None:
        raise InvalidStructure("matrix enumeration needs a prime field")
    return field.modulus ** (rows * cols)


def enumerate_matrices(field: Field, rows: int, cols: int, budget: int = DEFAULT_BUDGET) -> Iterator[Matrix]:
    """All rows x cols matrices over F_p, lexicographic in row-major entries."""
    total = matrix_count(field, rows, cols)
    if total > budget:
        raise BudgetExceeded(required=total, budget=budget)
    p = field.modulus
    for combo in itertools.product(range(p), repeat=rows * cols):
        entries = tuple(combo[i * cols:(i + 1) * cols] for i in range(rows))
        yield Matrix(field, rows, cols, entries)

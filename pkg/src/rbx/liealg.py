"""Finite-dimensional Lie algebras given by structure constants, and
Rota-Baxter operators on them.

All identities are checked on basis tuples only; bilinearity extends them to
arbitrary vectors, which the property tests exercise directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import BudgetExceeded, DimensionMismatch, InvalidStructure
from .linalg import (
    DEFAULT_BUDGET,
    Field,
    Matrix,
    Vector,
    enumerate_matrices,
    matrix_count,
    operator_matrix,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_neg,
    vec_sub,
)


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``brackets[i][j]`` = coordinates of [e_i, e_j].

    Both (i, j) and (j, i) entries are materialized; `from_pairs` fills the
    mirror image so antisymmetry holds by construction, and `check_jacobi`
    audits it for hand-built tables.
    """

    field: Field
    dim: int
    brackets: tuple  # dim x dim grid of coordinate tuples

    def __post_init__(self):
        if len(self.brackets) != self.dim or any(
            len(row) != self.dim or any(len(v) != self.dim for v in row)
            for row in self.brackets
        ):
            raise DimensionMismatch("structure constant grid has wrong shape")

    @staticmethod
    def from_pairs(field: Field, dim: int, pairs: Mapping) -> "LieAlgebra":
        """Build from ``{(i, j): coords}`` with i < j; unlisted pairs are zero."""
        table = [[tuple(field.zero for _ in range(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), coords in pairs.items():
            if not (0 <= i < j < dim):
                raise InvalidStructure(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            vec = tuple(field.normalize(x) for x in coords)
            if len(vec) != dim:
                raise DimensionMismatch(f"bracket value for ({i}, {j}) has length {len(vec)}")
            table[i][j] = vec
            table[j][i] = vec_neg(field, vec)
        return LieAlgebra(field, dim, tuple(tuple(row) for row in table))

    @staticmethod
    def abelian(field: Field, dim: int) -> "LieAlgebra":
        return LieAlgebra.from_pairs(field, dim, {})

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.brackets[i][j]

    def bracket(self, u: Vector, v: Vector) -> Vector:
        """[u, v] by bilinear extension of the structure constants."""
        f = self.field
        acc = [f.zero] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.brackets[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                coeff = f.mul(ui, vj)
                cij = row[j]
                for k, ck in enumerate(cij):
                    if ck:
                        acc[k] = f.add(acc[k], f.mul(coeff, ck))
        return tuple(acc)

    def ad(self, v: Vector) -> Matrix:
        """Matrix of x -> [v, x]."""
        f = self.field
        cols = []
        for j in range(self.dim):
            col = [f.zero] * self.dim
            for i, vi in enumerate(v):
                if not vi:
                    continue
                for k, ck in enumerate(self.brackets[i][j]):
                    if ck:
                        col[k] = f.add(col[k], f.mul(vi, ck))
            cols.append(tuple(col))
        return Matrix.from_cols(f, cols, rows=self.dim)

    def ad_basis(self, i: int) -> Matrix:
        return Matrix.from_cols(self.field, [self.brackets[i][j] for j in range(self.dim)], rows=self.dim)

    @property
    def is_abelian(self) -> bool:
        return all(vec_is_zero(v) for row in self.brackets for v in row)


def check_jacobi(l: LieAlgebra) -> bool:
    """Antisymmetry on all pairs plus the Jacobi identity on basis triples."""
    f = l.field
    for i in range(l.dim):
        if not vec_is_zero(l.brackets[i][i]):
            return False
        for j in range(i + 1, l.dim):
            if l.brackets[j][i] != vec_neg(f, l.brackets[i][j]):
                return False
    for i in range(l.dim):
        for j in range(i + 1, l.dim):
            for k in range(j + 1, l.dim):
                total = vec_add(
                    f,
                    vec_add(
                        f,
                        l.bracket(unit_vector(f, l.dim, i), l.bracket_basis(j, k)),
                        l.bracket(unit_vector(f, l.dim, j), l.bracket_basis(k, i)),
                    ),
                    l.bracket(unit_vector(f, l.dim, k), l.bracket_basis(i, j)),
                )
                if not vec_is_zero(total):
                    return False
    return True


@dataclass(frozen=True)
class RBLieAlgebra:
    """A Lie algebra together with a weight-zero Rota-Baxter operator."""

    lie: LieAlgebra
    op: Matrix

    def __post_init__(self):
        if self.op.rows != self.lie.dim or self.op.cols != self.lie.dim:
            raise DimensionMismatch("operator is not an endomorphism of the algebra")
        if self.op.field != self.lie.field:
            raise InvalidStructure("operator and algebra live over different fields")

    @property
    def field(self) -> Field:
        return self.lie.field

    @property
    def dim(self) -> int:
        return self.lie.dim


def check_rota_baxter(l: LieAlgebra, t: Matrix) -> bool:
    """[T x, T y] = T([T x, y] + [x, T y]) on basis pairs (i < j suffices)."""
    if t.rows != l.dim or t.cols != l.dim:
        raise DimensionMismatch("operator shape does not match the algebra")
    f = l.field
    tcols = [t.col(i) for i in range(l.dim)]
    for i in range(l.dim):
        for j in range(i + 1, l.dim):
            lhs = l.bracket(tcols[i], tcols[j])
            inner = vec_add(
                f,
                l.bracket(tcols[i], unit_vector(f, l.dim, j)),
                l.bracket(unit_vector(f, l.dim, i), tcols[j]),
            )
            if lhs != t.apply(inner):
                return False
    return True


def validate_rb_lie(a: RBLieAlgebra) -> bool:
    return check_jacobi(a.lie) and check_rota_baxter(a.lie, a.op)


def check_rb_morphism(src: RBLieAlgebra, dst: RBLieAlgebra, f: Matrix) -> bool:
    """Bracket-preserving linear map intertwining the two operators."""
    if f.rows != dst.dim or f.cols != src.dim:
        raise DimensionMismatch("map shape does not match source/target dimensions")
    if dst.op @ f != f @ src.op:
        return False
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            if f.apply(src.lie.bracket_basis(i, j)) != dst.lie.bracket(f.col(i), f.col(j)):
                return False
    return True


def is_rb_automorphism(a: RBLieAlgebra, f: Matrix) -> bool:
    if f.rows != a.dim or f.cols != a.dim:
        return False
    return f.rank() == a.dim and check_rb_morphism(a, a, f)


def derivation_algebra(l: LieAlgebra) -> list:
    """Basis of {D : D[x, y] = [Dx, y] + [x, Dy]}, as dim x dim matrices.

    Kernel of a linear system on the dim^2 entries of D, flattened column-major.
    """
    f = l.field
    n = l.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def defect(flat_index: int) -> Vector:
        col, row = divmod(flat_index, n)
        d = Matrix.from_cols(f, [
            unit_vector(f, n, row) if c == col else tuple(f.zero for _ in range(n))
            for c in range(n)
        ], rows=n)
        out = []
        for (i, j) in pairs:
            lhs = d.apply(l.bracket_basis(i, j))
            r1 = l.bracket(d.col(i), unit_vector(f, n, j))
            r2 = l.bracket(unit_vector(f, n, i), d.col(j))
            out.extend(vec_sub(f, lhs, vec_add(f, r1, r2)))
        return tuple(out)

    system = operator_matrix(f, n * n, len(pairs) * n, defect)
    from .linalg import vec_to_matrix_cols

    return [vec_to_matrix_cols(f, v, n, n) for v in system.kernel_basis()]


def enumerate_rb_automorphisms(a: RBLieAlgebra, budget: int = DEFAULT_BUDGET) -> list:
    """Every automorphism of a Rota-Baxter Lie algebra over a prime field.

    Candidates are scanned in lexicographic order over row-major matrix
    entries, so the output order is reproducible.
    """
    if a.field.modulus is None:
        raise InvalidStructure("exhaustive automorphism search needs a prime field")
    total = matrix_count(a.field, a.dim, a.dim)
    if total > budget:
        raise BudgetExceeded(required=total, budget=budget)
    out = []
    for m in enumerate_matrices(a.field, a.dim, a.dim, budget=budget):
        if is_rb_automorphism(a, m):
            out.append(m)
    return out

"""Representations of Rota-Baxter Lie algebras.

A representation packages an action map (one matrix per basis vector of the
acting algebra, extended linearly), an operator on the coefficient space, and
optionally a bracket on that space.  With a zero bracket it is an ordinary
module and the action must be a Lie algebra homomorphism; with a nonzero
bracket the homomorphism property is deliberately not enforced here, because
in that regime it is replaced by the first cocycle condition and validated by
the extension machinery instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionMismatch, InvalidStructure
from .liealg import (
    LieAlgebra,
    RBLieAlgebra,
    check_jacobi,
    check_rota_baxter,
    is_rb_automorphism,
)
from .linalg import Field, Matrix, Vector


@dataclass(frozen=True)
class Representation:
    base: RBLieAlgebra
    hdim: int
    action: tuple  # one hdim x hdim matrix per base basis vector
    s_op: Matrix
    h_bracket: Optional[LieAlgebra] = None

    def __post_init__(self):
        n, m = self.base.dim, self.hdim
        if len(self.action) != n:
            raise DimensionMismatch("need one action matrix per basis vector")
        for a in self.action:
            if a.rows != m or a.cols != m:
                raise DimensionMismatch("action matrices must be square of coefficient size")
        if self.s_op.rows != m or self.s_op.cols != m:
            raise DimensionMismatch("coefficient operator has wrong shape")
        if self.h_bracket is not None and self.h_bracket.dim != m:
            raise DimensionMismatch("coefficient bracket has wrong dimension")

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def gdim(self) -> int:
        return self.base.dim

    @property
    def module_valued(self) -> bool:
        return self.h_bracket is None or self.h_bracket.is_abelian

    def action_of(self, vec: Vector) -> Matrix:
        """Action matrix of an arbitrary vector, by linearity."""
        f = self.field
        acc = Matrix.zero(f, self.hdim, self.hdim)
        for k, c in enumerate(vec):
            if c:
                acc = acc + self.action[k].scale(c)
        return acc

    def coefficient_algebra(self) -> RBLieAlgebra:
        """The coefficient space as a Rota-Baxter Lie algebra (zero bracket if none)."""
        lie = self.h_bracket if self.h_bracket is not None else LieAlgebra.abelian(self.field, self.hdim)
        return RBLieAlgebra(lie, self.s_op)


def check_representation(r: Representation) -> bool:
    """Action compatibility with both operators, on all basis instantiations.

    For a module (zero coefficient bracket) the action must also be a Lie
    algebra homomorphism into endomorphisms.
    """
    n = r.gdim
    t = r.base.op
    s = r.s_op
    if r.module_valued:
        for i in range(n):
            for j in range(i + 1, n):
                lhs = r.action_of(r.base.lie.bracket_basis(i, j))
                rhs = r.action[i] @ r.action[j] - r.action[j] @ r.action[i]
                if lhs != rhs:
                    return False
    for i in range(n):
        psi_t = r.action_of(t.col(i))
        if psi_t @ s != s @ (psi_t + r.action[i] @ s):
            return False
    return True


def adjoint_representation(a: RBLieAlgebra) -> Representation:
    """Action of an algebra on itself by brackets, with its own operator."""
    action = tuple(a.lie.ad_basis(i) for i in range(a.dim))
    return Representation(base=a, hdim=a.dim, action=action, s_op=a.op, h_bracket=a.lie)


def pullback_action(r: Representation, alpha: Matrix) -> Representation:
    """Precompose the action with an automorphism of the acting algebra."""
    if not is_rb_automorphism(r.base, alpha):
        raise InvalidStructure("pullback needs an automorphism of the acting algebra")
    new_action = tuple(r.action_of(alpha.col(i)) for i in range(r.gdim))
    out = Representation(base=r.base, hdim=r.hdim, action=new_action,
                         s_op=r.s_op, h_bracket=r.h_bracket)
    if not check_representation(out):
        raise RuntimeError("pullback produced an invalid representation")
    return out


def semidirect_product(r: Representation) -> RBLieAlgebra:
    """Split-extension algebra on (acting space) + (abelian coefficient space).

    Basis order: acting-algebra slots first, coefficient slots after.  The
    operator is the block diagonal of the two given operators.
    """
    if not check_representation(r):
        raise InvalidStructure("not a valid representation")
    if not r.module_valued:
        raise InvalidStructure("semidirect product needs an abelian coefficient bracket")
    f = r.field
    n, m = r.gdim, r.hdim
    dim = n + m
    zeros_m = tuple(f.zero for _ in range(m))
    zeros_n = tuple(f.zero for _ in range(n))
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec = r.base.lie.bracket_basis(i, j) + zeros_m
            pairs[(i, j)] = vec
        for b in range(m):
            pairs[(i, n + b)] = zeros_n + r.action[i].col(b)
    lie = LieAlgebra.from_pairs(f, dim, pairs)
    op = Matrix.from_rows(f, [
        list(r.base.op.row(i)) + [f.zero] * m for i in range(n)
    ] + [
        [f.zero] * n + list(r.s_op.row(a)) for a in range(m)
    ])
    out = RBLieAlgebra(lie, op)
    if not (check_jacobi(out.lie) and check_rota_baxter(out.lie, out.op)):
        raise RuntimeError("semidirect product failed structural validation")
    return out


def check_compatible_pair(r: Representation, beta: Matrix, alpha: Matrix) -> bool:
    """Does the coefficient automorphism intertwine the action twisted by alpha?"""
    if not is_rb_automorphism(r.coefficient_algebra(), beta):
        raise InvalidStructure("beta is not an automorphism of the coefficient algebra")
    if not is_rb_automorphism(r.base, alpha):
        raise InvalidStructure("alpha is not an automorphism of the acting algebra")
    return all(
        beta @ r.action[i] == r.action_of(alpha.col(i)) @ beta
        for i in range(r.gdim)
    )

"""Non-abelian extensions of Rota-Baxter Lie algebras and their twisting data.

An extension is a short exact sequence of Rota-Baxter Lie algebras; choosing a
linear section of the projection extracts a twisting triple (chi, psi, phi):
a 2-cochain, an action by derivations, and a linear defect of the operator
against the section.  Four compatibility conditions, labelled I-IV in all
diagnostics, characterize exactly the triples that assemble back into an
extension; pairwise equivalence of triples matches equivalence of extensions.

Deciding equivalence is linear in the unknown comparison map except for one
quadratic bracket term, so the solver is total over prime fields (affine
enumeration within a budget) and over the rationals whenever the linear part
pins the solution or the coefficient bracket vanishes; the leftover rational
quadratic case reports UNDECIDED rather than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, DimensionMismatch, InvalidStructure
from .cohomology import Cochain, linear_map_to_cochain
from .liealg import (
    LieAlgebra,
    RBLieAlgebra,
    check_jacobi,
    check_rb_morphism,
    check_rota_baxter,
)
from .linalg import (
    DEFAULT_BUDGET,
    Matrix,
    Vector,
    operator_matrix,
    solve,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_sub,
    vec_to_matrix_cols,
)
from .results import (
    EquivalenceResult,
    ExtensionEquivalenceResult,
    ValidationReport,
    Verdict,
)


@dataclass(frozen=True)
class NonAbelianCocycle:
    """Twisting triple of one Rota-Baxter Lie algebra with values in another."""

    g: RBLieAlgebra
    h: RBLieAlgebra
    chi: Cochain          # degree 2 on g with h-valued coefficients
    psi: tuple            # one hdim x hdim matrix per g basis vector
    phi: Matrix           # hdim x gdim

    def __post_init__(self):
        n, m = self.g.dim, self.h.dim
        if (self.chi.degree, self.chi.gdim, self.chi.hdim) != (2, n, m):
            raise DimensionMismatch("chi must be a degree-2 cochain on g with h values")
        if len(self.psi) != n or any(p.rows != m or p.cols != m for p in self.psi):
            raise DimensionMismatch("psi needs one h-endomorphism per g basis vector")
        if self.phi.rows != m or self.phi.cols != n:
            raise DimensionMismatch("phi must map g to h")

    def psi_of(self, vec: Vector) -> Matrix:
        f = self.g.field
        acc = Matrix.zero(f, self.h.dim, self.h.dim)
        for k, c in enumerate(vec):
            if c:
                acc = acc + self.psi[k].scale(c)
        return acc

    @staticmethod
    def zero(g: RBLieAlgebra, h: RBLieAlgebra, psi=None) -> "NonAbelianCocycle":
        f = g.field
        m = h.dim
        psi = tuple(psi) if psi is not None else tuple(Matrix.zero(f, m, m) for _ in range(g.dim))
        return NonAbelianCocycle(
            g=g, h=h,
            chi=Cochain.zero(f, g.dim, m, 2),
            psi=psi,
            phi=Matrix.zero(f, m, g.dim),
        )


@dataclass(frozen=True)
class Extension:
    """Short exact sequence datum: h embeds via i, e projects onto g via p."""

    e: RBLieAlgebra
    i: Matrix
    p: Matrix
    g: RBLieAlgebra
    h: RBLieAlgebra

    def __post_init__(self):
        if self.i.rows != self.e.dim or self.i.cols != self.h.dim:
            raise DimensionMismatch("inclusion shape mismatch")
        if self.p.rows != self.g.dim or self.p.cols != self.e.dim:
            raise DimensionMismatch("projection shape mismatch")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_cocycle(c: NonAbelianCocycle) -> ValidationReport:
    """Check the twisting-triple conditions on all basis instantiations.

    Conditions, in validation order:
      psi-derivation: every psi value derives the coefficient bracket;
      I:   commutator defect of psi equals the inner action of chi;
      II:  the action-twisted cocycle identity for chi on basis triples;
      III: the operator compatibility of psi corrected by phi;
      IV:  the operator compatibility of chi and phi.
    """
    f = c.g.field
    n, m = c.g.dim, c.h.dim
    t, s = c.g.op, c.h.op
    tcols = [t.col(i) for i in range(n)]
    ad_h = lambda v: c.h.lie.ad(v)
    psi_t = [c.psi_of(tcols[i]) for i in range(n)]

    checks = []
    first_failure = None

    def record(label: str, ok: bool, where: Optional[tuple]):
        nonlocal first_failure
        checks.append((label, ok))
        if not ok and first_failure is None:
            first_failure = f"condition {label} fails at basis tuple {where}"

    # psi lands in derivations of the coefficient bracket
    ok, where = True, None
    for k in range(n):
        d = c.psi[k]
        for a in range(m):
            for b in range(a + 1, m):
                lhs = d.apply(c.h.lie.bracket_basis(a, b))
                rhs = vec_add(
                    f,
                    c.h.lie.bracket(d.col(a), unit_vector(f, m, b)),
                    c.h.lie.bracket(unit_vector(f, m, a), d.col(b)),
                )
                if lhs != rhs:
                    ok, where = False, (k, a, b)
                    break
            if not ok:
                break
        if not ok:
            break
    record("psi-derivation", ok, where)

    # I
    ok, where = True, None
    for i in range(n):
        for j in range(i + 1, n):
            lhs = c.psi[i] @ c.psi[j] - c.psi[j] @ c.psi[i] - c.psi_of(c.g.lie.bracket_basis(i, j))
            if lhs != ad_h(c.chi.value((i, j))):
                ok, where = False, (i, j)
                break
        if not ok:
            break
    record("I", ok, where)

    # II
    ok, where = True, None
    for i in range(n):
        if not ok:
            break
        for j in range(i + 1, n):
            if not ok:
                break
            for k in range(j + 1, n):
                total = c.psi[i].apply(c.chi.eval_basis((j, k)))
                total = vec_add(f, total, c.psi[j].apply(c.chi.eval_basis((k, i))))
                total = vec_add(f, total, c.psi[k].apply(c.chi.eval_basis((i, j))))
                total = vec_sub(f, total, c.chi.eval_front(c.g.lie.bracket_basis(i, j), (k,)))
                total = vec_sub(f, total, c.chi.eval_front(c.g.lie.bracket_basis(j, k), (i,)))
                total = vec_sub(f, total, c.chi.eval_front(c.g.lie.bracket_basis(k, i), (j,)))
                if not vec_is_zero(total):
                    ok, where = False, (i, j, k)
                    break
    record("II", ok, where)

    # III
    ok, where = True, None
    for i in range(n):
        ad_phi = ad_h(c.phi.col(i))
        lhs = psi_t[i] @ s
        rhs = s @ (c.psi[i] @ s + psi_t[i]) + s @ ad_phi - ad_phi @ s
        if lhs != rhs:
            ok, where = False, (i,)
            break
    record("III", ok, where)

    # IV
    ok, where = True, None
    for i in range(n):
        if not ok:
            break
        for j in range(i + 1, n):
            ui, uj = unit_vector(f, n, i), unit_vector(f, n, j)
            total = c.chi.eval_vectors([tcols[i], tcols[j]])
            inner = vec_add(f, c.chi.eval_vectors([ui, tcols[j]]), c.chi.eval_vectors([tcols[i], uj]))
            total = vec_sub(f, total, s.apply(inner))
            br = vec_add(f, c.g.lie.bracket(ui, tcols[j]), c.g.lie.bracket(tcols[i], uj))
            total = vec_sub(f, total, c.phi.apply(br))
            total = vec_add(f, total, psi_t[i].apply(c.phi.col(j)))
            total = vec_sub(f, total, psi_t[j].apply(c.phi.col(i)))
            mixed = vec_sub(f, c.psi[i].apply(c.phi.col(j)), c.psi[j].apply(c.phi.col(i)))
            total = vec_sub(f, total, s.apply(mixed))
            total = vec_add(f, total, c.h.lie.bracket(c.phi.col(i), c.phi.col(j)))
            if not vec_is_zero(total):
                ok, where = False, (i, j)
                break
    record("IV", ok, where)

    passed = all(flag for _, flag in checks)
    return ValidationReport(ok=passed, checks=tuple(checks), first_failure=first_failure)


def validate_extension(x: Extension) -> ValidationReport:
    """Exactness, morphism, and structural axioms of an extension datum."""
    n, m = x.g.dim, x.h.dim
    checks = []
    first_failure = None

    def record(label: str, ok: bool):
        nonlocal first_failure
        checks.append((label, ok))
        if not ok and first_failure is None:
            first_failure = f"check {label} failed"

    record("dimension", x.e.dim == n + m)
    record("i-injective", x.i.rank() == m)
    record("p-surjective", x.p.rank() == n)
    record("composite-zero", (x.p @ x.i).is_zero())
    record("i-morphism", check_rb_morphism(x.h, x.e, x.i))
    record("p-morphism", check_rb_morphism(x.e, x.g, x.p))
    record("jacobi", check_jacobi(x.e.lie))
    record("rota-baxter", check_rota_baxter(x.e.lie, x.e.op))

    passed = all(flag for _, flag in checks)
    return ValidationReport(ok=passed, checks=tuple(checks), first_failure=first_failure)


# ---------------------------------------------------------------------------
# sections and extraction
# ---------------------------------------------------------------------------

def is_section(x: Extension, s: Matrix) -> bool:
    return s.rows == x.e.dim and s.cols == x.g.dim and (x.p @ s).is_identity()


def canonical_section(x: Extension) -> Matrix:
    """Deterministic right inverse of the projection (column-wise exact solve)."""
    f = x.e.field
    cols = []
    for j in range(x.g.dim):
        sol = solve(x.p, unit_vector(f, x.g.dim, j))
        if sol is None:
            raise InvalidStructure("projection is not surjective")
        cols.append(sol[0])
    s = Matrix.from_cols(f, cols, rows=x.e.dim)
    if not is_section(x, s):
        raise InvalidStructure("failed to construct a section")
    return s


def h_component_map(x: Extension, s: Matrix) -> Matrix:
    """The map q: e -> h with q i = id and q s = 0, inverting i on its image."""
    f = x.e.field
    ident = Matrix.identity(f, x.e.dim)
    remainder = ident - s @ x.p
    cols = []
    for j in range(x.e.dim):
        sol = solve(x.i, remainder.col(j))
        if sol is None:
            raise InvalidStructure("broken exactness: complement of the section misses the image of i")
        cols.append(sol[0])
    return Matrix.from_cols(f, cols, rows=x.h.dim)


def extract_cocycle(x: Extension, s: Matrix) -> NonAbelianCocycle:
    """Twisting triple of an extension along a section.

    chi(x, y) is the bracket defect of the section, psi the induced action on
    the embedded ideal, phi the defect of the operator against the section;
    every value is pulled back through the inclusion, and the result is
    validated before being returned.
    """
    if not is_section(x, s):
        raise InvalidStructure("not a section of the projection")
    f = x.e.field
    n = x.g.dim
    q = h_component_map(x, s)

    psi = tuple(q @ x.e.lie.ad(s.col(j)) @ x.i for j in range(n))
    values = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = vec_sub(
                f,
                x.e.lie.bracket(s.col(i), s.col(j)),
                s.apply(x.g.lie.bracket_basis(i, j)),
            )
            values[(i, j)] = q.apply(w)
    chi = Cochain.build(f, n, x.h.dim, 2, values)
    phi = q @ (x.e.op @ s - s @ x.g.op)
    c = NonAbelianCocycle(g=x.g, h=x.h, chi=chi, psi=psi, phi=phi)
    report = validate_cocycle(c)
    if not report.ok:
        raise InvalidStructure(f"extracted triple is not a cocycle: {report.first_failure}")
    return c


# ---------------------------------------------------------------------------
# building extensions from cocycles
# ---------------------------------------------------------------------------

def _assemble_extension(c: NonAbelianCocycle):
    """Assemble the total algebra on g + h without validating the cocycle."""
    f = c.g.field
    n, m = c.g.dim, c.h.dim
    dim = n + m
    zeros_n = tuple(f.zero for _ in range(n))
    zeros_m = tuple(f.zero for _ in range(m))
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            pairs[(i, j)] = c.g.lie.bracket_basis(i, j) + c.chi.value((i, j))
        for b in range(m):
            pairs[(i, n + b)] = zeros_n + c.psi[i].col(b)
    for a in range(m):
        for b in range(a + 1, m):
            pairs[(n + a, n + b)] = zeros_n + c.h.lie.bracket_basis(a, b)
    lie = LieAlgebra.from_pairs(f, dim, pairs)
    op = Matrix.from_rows(f, [
        list(c.g.op.row(i)) + [f.zero] * m for i in range(n)
    ] + [
        list(c.phi.row(a)) + list(c.h.op.row(a)) for a in range(m)
    ])
    e = RBLieAlgebra(lie, op)
    i_map = Matrix.from_rows(f, [[f.zero] * m for _ in range(n)] +
                             [list(unit_vector(f, m, a)) for a in range(m)])
    p_map = Matrix.from_rows(f, [list(unit_vector(f, n, i)) + [f.zero] * m for i in range(n)])
    section = Matrix.from_rows(f, [list(unit_vector(f, n, i)) for i in range(n)] +
                               [[f.zero] * n for _ in range(m)])
    return Extension(e=e, i=i_map, p=p_map, g=c.g, h=c.h), section


def build_extension(c: NonAbelianCocycle):
    """Total algebra of a validated twisting triple, with the slot section.

    Returns ``(extension, section)``; the extension carries the direct-sum
    coordinate space with the twisted bracket and operator, and the returned
    section is the first-slot inclusion.
    """
    report = validate_cocycle(c)
    if not report.ok:
        raise InvalidStructure(f"not a cocycle: {report.first_failure}")
    x, section = _assemble_extension(c)
    check = validate_extension(x)
    if not check.ok:
        raise RuntimeError(f"assembled extension failed validation: {check.first_failure}")
    return x, section


# ---------------------------------------------------------------------------
# equivalence of cocycles
# ---------------------------------------------------------------------------

def _equivalence_failure(c1: NonAbelianCocycle, c2: NonAbelianCocycle, phi: Matrix) -> Optional[str]:
    """First violated comparison identity ("I", "II", "III"), or None."""
    f = c1.g.field
    n = c1.g.dim
    ad_h = lambda v: c1.h.lie.ad(v)
    for i in range(n):
        if c1.psi[i] - c2.psi[i] != ad_h(phi.col(i)):
            return "I"
    t, s = c1.g.op, c1.h.op
    if c1.phi - c2.phi != s @ phi - phi @ t:
        return "III"
    for i in range(n):
        for j in range(i + 1, n):
            rhs = c2.psi[i].apply(phi.col(j))
            rhs = vec_sub(f, rhs, c2.psi[j].apply(phi.col(i)))
            rhs = vec_sub(f, rhs, phi.apply(c1.g.lie.bracket_basis(i, j)))
            rhs = vec_add(f, rhs, c1.h.lie.bracket(phi.col(i), phi.col(j)))
            lhs = vec_sub(f, c1.chi.value((i, j)), c2.chi.value((i, j)))
            if lhs != rhs:
                return "II"
    return None


def verify_cocycle_equivalence(c1: NonAbelianCocycle, c2: NonAbelianCocycle, phi: Matrix) -> bool:
    """Does phi witness equivalence of the two triples (identities I-III)?"""
    _require_same_base(c1, c2)
    if phi.rows != c1.h.dim or phi.cols != c1.g.dim:
        raise DimensionMismatch("comparison map must send g to h")
    return _equivalence_failure(c1, c2, phi) is None


def _require_same_base(c1: NonAbelianCocycle, c2: NonAbelianCocycle):
    if c1.g != c2.g or c1.h != c2.h:
        raise InvalidStructure("cocycles live over different algebra pairs")


def _linear_system(c1: NonAbelianCocycle, c2: NonAbelianCocycle, include_ii: bool):
    """Linear part of the comparison identities as ``(matrix, rhs, spans)``.

    The unknown comparison map is flattened column-major.  ``spans`` records
    the row ranges of the subsystems, in the order I, III, then optionally II,
    so infeasibility can be attributed to a named condition.
    """
    f = c1.g.field
    n, m = c1.g.dim, c1.h.dim
    t, s = c1.g.op, c1.h.op
    ad_h = lambda v: c1.h.lie.ad(v)

    def lin_rows(phi: Matrix):
        out = []
        for i in range(n):
            adp = ad_h(phi.col(i))
            out.extend(x for row in adp.entries for x in row)
        diff = s @ phi - phi @ t
        out.extend(x for row in diff.entries for x in row)
        if include_ii:
            for i in range(n):
                for j in range(i + 1, n):
                    rhs = c2.psi[i].apply(phi.col(j))
                    rhs = vec_sub(f, rhs, c2.psi[j].apply(phi.col(i)))
                    rhs = vec_sub(f, rhs, phi.apply(c1.g.lie.bracket_basis(i, j)))
                    out.extend(rhs)
        return tuple(out)

    unknowns = m * n

    def column(k: int):
        basis = vec_to_matrix_cols(
            f,
            tuple(f.one if idx == k else f.zero for idx in range(unknowns)),
            m, n,
        )
        return lin_rows(basis)

    rhs = []
    for i in range(n):
        diff = c1.psi[i] - c2.psi[i]
        rhs.extend(x for row in diff.entries for x in row)
    span_i = (0, len(rhs))
    diff = c1.phi - c2.phi
    rhs.extend(x for row in diff.entries for x in row)
    span_iii = (span_i[1], len(rhs))
    span_ii = None
    if include_ii:
        start = len(rhs)
        for i in range(n):
            for j in range(i + 1, n):
                rhs.extend(vec_sub(f, c1.chi.value((i, j)), c2.chi.value((i, j))))
        span_ii = (start, len(rhs))

    matrix = operator_matrix(f, unknowns, len(rhs), column)
    return matrix, tuple(rhs), {"I": span_i, "III": span_iii, "II": span_ii}


def _name_infeasible(matrix: Matrix, rhs, spans) -> str:
    """Attribute an inconsistent linear system to its first infeasible subsystem."""
    for label in ("I", "III", "II"):
        span = spans.get(label)
        if span is None:
            continue
        upto = span[1]
        sub = Matrix(matrix.field, upto, matrix.cols, matrix.entries[:upto])
        if solve(sub, rhs[:upto]) is None:
            return label
    return "II"


def solve_cocycle_equivalence(c1: NonAbelianCocycle, c2: NonAbelianCocycle,
                              budget: int = DEFAULT_BUDGET) -> EquivalenceResult:
    """Decide whether two twisting triples are equivalent.

    Strategy: solve the linear subsystem of identities I and III (plus II when
    the coefficient bracket vanishes, which makes it linear too); an
    inconsistent system is a proof of inequivalence.  Otherwise verify the
    particular solution against the quadratic identity II; failing that,
    enumerate the affine solution set over a prime field (within the budget),
    or report NO when the solution was unique, or UNDECIDED over the
    rationals with a positive-dimensional solution set.
    """
    _require_same_base(c1, c2)
    f = c1.g.field
    n, m = c1.g.dim, c1.h.dim
    abelian_h = c1.h.lie.is_abelian

    matrix, rhs, spans = _linear_system(c1, c2, include_ii=abelian_h)
    sol = solve(matrix, rhs)
    if sol is None:
        label = _name_infeasible(matrix, rhs, spans)
        return EquivalenceResult(Verdict.NO, failing_condition=label,
                                 detail=f"linear subsystem ({label}) is infeasible")
    particular, kernel = sol
    phi0 = vec_to_matrix_cols(f, particular, m, n)
    if _equivalence_failure(c1, c2, phi0) is None:
        return EquivalenceResult(Verdict.YES, phi=phi0)

    if not kernel:
        return EquivalenceResult(
            Verdict.NO, failing_condition="II",
            detail="the unique solution of the linear subsystem violates (II)")
    if f.modulus is None:
        return EquivalenceResult(
            Verdict.UNDECIDED, failing_condition="II",
            detail=f"rational affine solution set of dimension {len(kernel)}; "
                   "quadratic condition (II) unresolved")

    p = f.modulus
    total = p ** len(kernel)
    if total > budget:
        raise BudgetExceeded(required=total, budget=budget)
    for combo in itertools.product(range(p), repeat=len(kernel)):
        if not any(combo):
            continue  # the particular solution was already rejected
        flat = list(particular)
        for coeff, basis_vec in zip(combo, kernel):
            if coeff:
                for idx, val in enumerate(basis_vec):
                    if val:
                        flat[idx] = f.add(flat[idx], f.mul(coeff, val))
        phi = vec_to_matrix_cols(f, tuple(flat), m, n)
        if _equivalence_failure(c1, c2, phi) is None:
            return EquivalenceResult(Verdict.YES, phi=phi)
    return EquivalenceResult(
        Verdict.NO, failing_condition="II",
        detail=f"exhausted all {total} candidates in the affine solution set")


# ---------------------------------------------------------------------------
# equivalence of extensions
# ---------------------------------------------------------------------------

def check_extension_equivalence(x1: Extension, x2: Extension,
                                budget: int = DEFAULT_BUDGET) -> ExtensionEquivalenceResult:
    """Decide equivalence of two extensions of the same pair of algebras.

    Reduces to cocycle equivalence along canonical sections; a positive answer
    reconstitutes the diagram isomorphism and verifies it before returning.
    """
    if x1.g != x2.g or x1.h != x2.h:
        raise InvalidStructure("extensions are not over the same algebra pair")
    s1 = canonical_section(x1)
    s2 = canonical_section(x2)
    c1 = extract_cocycle(x1, s1)
    c2 = extract_cocycle(x2, s2)
    res = solve_cocycle_equivalence(c1, c2, budget=budget)
    if res.verdict is not Verdict.YES:
        return ExtensionEquivalenceResult(res.verdict, failing_condition=res.failing_condition,
                                          detail=res.detail)
    q1 = h_component_map(x1, s1)
    theta = x2.i @ (q1 + res.phi @ x1.p) + s2 @ x1.p
    ok = (
        theta.rank() == x1.e.dim
        and (x2.p @ theta) == x1.p
        and (theta @ x1.i) == x2.i
        and check_rb_morphism(x1.e, x2.e, theta)
    )
    if not ok:
        raise RuntimeError("internal error: reconstructed equivalence failed verification")
    return ExtensionEquivalenceResult(Verdict.YES, mapping=theta)

"""Shared pools of validated structures and randomized generators.

Every structure produced here is checked against its axioms at build time, so
tests can treat pool members as trusted inputs.  Randomness is always driven
by an explicit seeded Random instance to keep runs reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from rbx import GF, QQ
from rbx.cohomology import Cochain, RBCochain
from rbx.liealg import LieAlgebra, RBLieAlgebra, check_jacobi, check_rota_baxter
from rbx.linalg import Field, Matrix
from rbx.nonabelian import (
    Extension,
    NonAbelianCocycle,
    build_extension,
    canonical_section,
    extract_cocycle,
    validate_cocycle,
)
from rbx.reps import Representation, check_representation


def random_scalar(rng: random.Random, field: Field, nonzero: bool = False):
    while True:
        if field.modulus is not None:
            value = rng.randrange(field.modulus)
        else:
            value = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        if value or not nonzero:
            return value


def random_matrix(rng: random.Random, field: Field, rows: int, cols: int) -> Matrix:
    return Matrix.from_rows(field, [
        [random_scalar(rng, field) for _ in range(cols)] for _ in range(rows)
    ])


def random_cochain(rng: random.Random, field: Field, gdim: int, hdim: int, degree: int) -> Cochain:
    values = {
        key: tuple(random_scalar(rng, field) for _ in range(hdim))
        for key in itertools.combinations(range(gdim), degree)
    }
    return Cochain.build(field, gdim, hdim, degree, values)


def random_rb_cochain(rng: random.Random, field: Field, gdim: int, hdim: int, degree: int) -> RBCochain:
    theta = random_cochain(rng, field, gdim, hdim, degree - 1) if degree >= 2 else None
    return RBCochain(random_cochain(rng, field, gdim, hdim, degree), theta)


# ---------------------------------------------------------------------------
# algebra pool
# ---------------------------------------------------------------------------

def abelian_rb(field: Field, dim: int, op: Matrix = None) -> RBLieAlgebra:
    return RBLieAlgebra(LieAlgebra.abelian(field, dim),
                        op if op is not None else Matrix.zero(field, dim, dim))


def sol2(field: Field, t_entry=0) -> RBLieAlgebra:
    """[e0, e1] = e1 with T(e0) = t * e1, T(e1) = 0."""
    lie = LieAlgebra.from_pairs(field, 2, {(0, 1): (0, 1)})
    op = Matrix.from_rows(field, [[0, 0], [t_entry, 0]])
    return RBLieAlgebra(lie, op)


def heis3(field: Field, a=0, b=0) -> RBLieAlgebra:
    """[e0, e1] = e2 with T(e0) = a e2, T(e1) = b e2, T(e2) = 0."""
    lie = LieAlgebra.from_pairs(field, 3, {(0, 1): (0, 0, 1)})
    op = Matrix.from_rows(field, [[0, 0, 0], [0, 0, 0], [a, b, 0]])
    return RBLieAlgebra(lie, op)


def cross3(field: Field) -> RBLieAlgebra:
    """[e0,e1]=e2, [e1,e2]=e0, [e2,e0]=e1 with the zero operator."""
    lie = LieAlgebra.from_pairs(field, 3, {
        (0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0),
    })
    return RBLieAlgebra(lie, Matrix.zero(field, 3, 3))


def sol2_h(field: Field, s_entry=0) -> RBLieAlgebra:
    """Nonabelian coefficient algebra [f0, f1] = f1 with S(f0) = s * f1."""
    lie = LieAlgebra.from_pairs(field, 2, {(0, 1): (0, 1)})
    op = Matrix.from_rows(field, [[0, 0], [s_entry, 0]])
    return RBLieAlgebra(lie, op)


def algebra_pool(field: Field, rng: random.Random) -> list:
    pool = [
        abelian_rb(field, 1),
        abelian_rb(field, 1, Matrix.from_rows(field, [[random_scalar(rng, field)]])),
        abelian_rb(field, 2, random_matrix(rng, field, 2, 2)),
        abelian_rb(field, 3, random_matrix(rng, field, 3, 3)),
        sol2(field, 0),
        sol2(field, random_scalar(rng, field, nonzero=True)),
        heis3(field, random_scalar(rng, field), random_scalar(rng, field)),
        cross3(field),
        sol2_h(field, random_scalar(rng, field, nonzero=True)),
    ]
    for a in pool:
        assert check_jacobi(a.lie) and check_rota_baxter(a.lie, a.op)
    return pool


# ---------------------------------------------------------------------------
# representation pool (module coefficients)
# ---------------------------------------------------------------------------

def rep_pool(field: Field, rng: random.Random) -> list:
    reps = []

    def trivial(base: RBLieAlgebra, hdim: int, s_op: Matrix) -> Representation:
        return Representation(base=base, hdim=hdim,
                              action=tuple(Matrix.zero(field, hdim, hdim) for _ in range(base.dim)),
                              s_op=s_op)

    reps.append(trivial(abelian_rb(field, 1), 1, Matrix.zero(field, 1, 1)))
    reps.append(trivial(abelian_rb(field, 1, random_matrix(rng, field, 1, 1)), 2,
                        random_matrix(rng, field, 2, 2)))
    reps.append(trivial(sol2(field, random_scalar(rng, field)), 2,
                        random_matrix(rng, field, 2, 2)))
    reps.append(trivial(heis3(field, random_scalar(rng, field), random_scalar(rng, field)), 2,
                        random_matrix(rng, field, 2, 2)))
    reps.append(trivial(cross3(field), 3, random_matrix(rng, field, 3, 3)))

    # sol2 acting on a 2-dim module, all operators zero
    lam = random_scalar(rng, field, nonzero=True)
    reps.append(Representation(
        base=sol2(field, 0), hdim=2,
        action=(Matrix.from_rows(field, [[1, 0], [0, 0]]),
                Matrix.from_rows(field, [[0, lam], [0, 0]])),
        s_op=Matrix.zero(field, 2, 2),
    ))

    # 1-dim algebra acting arbitrarily, both operators zero
    reps.append(Representation(
        base=abelian_rb(field, 1), hdim=2,
        action=(random_matrix(rng, field, 2, 2),),
        s_op=Matrix.zero(field, 2, 2),
    ))

    # nilpotent action and operators on a 1-dim algebra with nonzero T
    t = random_scalar(rng, field, nonzero=True)
    c = random_scalar(rng, field, nonzero=True)
    d = random_scalar(rng, field, nonzero=True)
    e01 = Matrix.from_rows(field, [[0, 1], [0, 0]])
    reps.append(Representation(
        base=abelian_rb(field, 1, Matrix.from_rows(field, [[t]])), hdim=2,
        action=(e01.scale(c),), s_op=e01.scale(d),
    ))

    # commuting diagonal actions of a 2-dim abelian algebra
    reps.append(Representation(
        base=abelian_rb(field, 2), hdim=2,
        action=(Matrix.from_rows(field, [[random_scalar(rng, field), 0], [0, random_scalar(rng, field)]]),
                Matrix.from_rows(field, [[random_scalar(rng, field), 0], [0, random_scalar(rng, field)]])),
        s_op=Matrix.zero(field, 2, 2),
    ))

    for r in reps:
        assert check_representation(r), "representation pool member failed validation"
    return reps


# ---------------------------------------------------------------------------
# valid cocycle generators
# ---------------------------------------------------------------------------

def seed_cocycles(field: Field, rng: random.Random) -> list:
    """Hand-analyzed families of valid twisting triples, randomized."""
    out = []
    z11 = Matrix.zero(field, 1, 1)

    # split triples from module representations
    for r in rep_pool(field, rng)[:5]:
        out.append(NonAbelianCocycle(
            g=r.base, h=abelian_rb(field, r.hdim, r.s_op),
            chi=Cochain.zero(field, r.gdim, r.hdim, 2),
            psi=r.action, phi=Matrix.zero(field, r.hdim, r.gdim),
        ))

    # operator defect on the 1-dim pair
    g1 = abelian_rb(field, 1)
    h1 = abelian_rb(field, 1)
    out.append(NonAbelianCocycle(
        g=g1, h=h1, chi=Cochain.zero(field, 1, 1, 2),
        psi=(z11,), phi=Matrix.from_rows(field, [[random_scalar(rng, field, nonzero=True)]]),
    ))

    # nonabelian coefficients, diagonal derivation action, operator defect
    delta = random_scalar(rng, field, nonzero=True)
    cval = random_scalar(rng, field)
    out.append(NonAbelianCocycle(
        g=g1, h=sol2_h(field, 0),
        chi=Cochain.zero(field, 1, 2, 2),
        psi=(Matrix.from_rows(field, [[0, 0], [0, delta]]),),
        phi=Matrix.from_rows(field, [[0], [cval]]),
    ))

    # nonabelian coefficients with a nonzero coefficient operator
    b = random_scalar(rng, field, nonzero=True)
    out.append(NonAbelianCocycle(
        g=g1, h=sol2_h(field, 1),
        chi=Cochain.zero(field, 1, 2, 2),
        psi=(Matrix.zero(field, 2, 2),),
        phi=Matrix.from_rows(field, [[0], [b]]),
    ))

    # 2-dim quotient with free chi and phi (all operators zero)
    w = random_scalar(rng, field)
    out.append(NonAbelianCocycle(
        g=sol2(field, 0), h=h1,
        chi=Cochain.build(field, 2, 1, 2, {(0, 1): (random_scalar(rng, field, nonzero=True),)}),
        psi=(Matrix.from_rows(field, [[w]]), z11),
        phi=random_matrix(rng, field, 1, 2),
    ))

    # 3-dim quotient with the action-constrained chi
    u = random_scalar(rng, field)
    v = random_scalar(rng, field)
    tval = random_scalar(rng, field, nonzero=True)
    chi = Cochain.build(field, 3, 1, 2, {
        (0, 1): (random_scalar(rng, field),),
        (1, 2): (field.mul(v, tval),),
        (0, 2): (field.neg(field.mul(u, tval)),),
    })
    out.append(NonAbelianCocycle(
        g=heis3(field, 0, 0), h=h1, chi=chi,
        psi=(Matrix.from_rows(field, [[u]]), Matrix.from_rows(field, [[v]]), z11),
        phi=random_matrix(rng, field, 1, 3),
    ))

    # nonzero quotient operator constraining chi
    s = random_scalar(rng, field, nonzero=True)
    c02 = random_scalar(rng, field)
    chi8 = Cochain.build(field, 3, 1, 2, {
        (0, 1): (random_scalar(rng, field),),
        (0, 2): (c02,),
        (1, 2): (c02,),
    })
    out.append(NonAbelianCocycle(
        g=heis3(field, 1, 1), h=abelian_rb(field, 1, Matrix.from_rows(field, [[s]])),
        chi=chi8,
        psi=(z11, z11, z11),
        phi=random_matrix(rng, field, 1, 3),
    ))

    for c in out:
        report = validate_cocycle(c)
        assert report.ok, f"seed cocycle invalid: {report.first_failure}"
    return out


def random_section(rng: random.Random, x: Extension) -> Matrix:
    s = canonical_section(x)
    phi = random_matrix(rng, x.e.field, x.h.dim, x.g.dim)
    return s + x.i @ phi


def random_valid_cocycle(rng: random.Random, field: Field) -> NonAbelianCocycle:
    """A validated triple: a randomized seed re-extracted along a random section."""
    seeds = seed_cocycles(field, rng)
    c = rng.choice(seeds)
    x, _ = build_extension(c)
    return extract_cocycle(x, random_section(rng, x))


# ---------------------------------------------------------------------------
# targeted invalid perturbations
# ---------------------------------------------------------------------------

def invalid_cocycles(field: Field, rng: random.Random) -> list:
    """Triples failing exactly one named condition, with the condition label."""
    out = []
    z11 = Matrix.zero(field, 1, 1)
    g1 = abelian_rb(field, 1)
    h1 = abelian_rb(field, 1)

    # psi not a derivation of the nonabelian coefficient bracket
    bad_psi = Matrix.from_rows(field, [[random_scalar(rng, field, nonzero=True), 0], [0, 0]])
    out.append(("psi-derivation", NonAbelianCocycle(
        g=g1, h=sol2_h(field, 0), chi=Cochain.zero(field, 1, 2, 2),
        psi=(bad_psi,), phi=Matrix.zero(field, 2, 1),
    )))

    # condition I: action fails to kill the bracket image
    out.append(("I", NonAbelianCocycle(
        g=sol2(field, 0), h=h1, chi=Cochain.zero(field, 2, 1, 2),
        psi=(Matrix.from_rows(field, [[random_scalar(rng, field)]]),
             Matrix.from_rows(field, [[random_scalar(rng, field, nonzero=True)]])),
        phi=Matrix.zero(field, 1, 2),
    )))

    # condition II: chi violates the action-twisted cocycle identity
    u = random_scalar(rng, field, nonzero=True)
    out.append(("II", NonAbelianCocycle(
        g=heis3(field, 0, 0), h=h1,
        chi=Cochain.build(field, 3, 1, 2, {(1, 2): (random_scalar(rng, field, nonzero=True),)}),
        psi=(Matrix.from_rows(field, [[u]]), z11, z11),
        phi=Matrix.zero(field, 1, 3),
    )))

    # condition III: operator defect with a forbidden component
    out.append(("III", NonAbelianCocycle(
        g=g1, h=sol2_h(field, 1), chi=Cochain.zero(field, 1, 2, 2),
        psi=(Matrix.zero(field, 2, 2),),
        phi=Matrix.from_rows(field, [[random_scalar(rng, field, nonzero=True)],
                                     [random_scalar(rng, field)]]),
    )))

    # condition IV: chi breaks the operator compatibility
    s = random_scalar(rng, field, nonzero=True)
    c02 = random_scalar(rng, field)
    c12 = field.add(c02, field.one)  # forces c02 != c12
    out.append(("IV", NonAbelianCocycle(
        g=heis3(field, 1, 1), h=abelian_rb(field, 1, Matrix.from_rows(field, [[s]])),
        chi=Cochain.build(field, 3, 1, 2, {(0, 2): (c02,), (1, 2): (c12,)}),
        psi=(z11, z11, z11),
        phi=Matrix.zero(field, 1, 3),
    )))

    for label, c in out:
        report = validate_cocycle(c)
        assert not report.ok, f"perturbation {label} unexpectedly valid"
        assert not report.check(label), f"perturbation {label} failed a different condition"
    return out


# ---------------------------------------------------------------------------
# fixture extensions
# ---------------------------------------------------------------------------

def phi_example_f3():
    """1-dim-by-1-dim extension over F_3 whose only twist is the operator defect."""
    f = GF(3)
    g = abelian_rb(f, 1)
    h = abelian_rb(f, 1)
    c = NonAbelianCocycle(
        g=g, h=h, chi=Cochain.zero(f, 1, 1, 2),
        psi=(Matrix.zero(f, 1, 1),), phi=Matrix.from_rows(f, [[1]]),
    )
    return build_extension(c)


def split_zero_f2():
    """Split zero extension over F_2 with 1-dim factors."""
    f = GF(2)
    return build_extension(NonAbelianCocycle.zero(abelian_rb(f, 1), abelian_rb(f, 1)))


def split_psi_f2():
    """Split extension over F_2 where the 1-dim quotient acts by identity."""
    f = GF(2)
    g = abelian_rb(f, 1)
    h = abelian_rb(f, 1)
    c = NonAbelianCocycle(
        g=g, h=h, chi=Cochain.zero(f, 1, 1, 2),
        psi=(Matrix.identity(f, 1),), phi=Matrix.zero(f, 1, 1),
    )
    return build_extension(c)


def nonabelian_h_f2():
    """3-dim extension over F_2: nonabelian 2-dim ideal, operator defect twist."""
    f = GF(2)
    g = abelian_rb(f, 1)
    h = sol2_h(f, 0)
    c = NonAbelianCocycle(
        g=g, h=h, chi=Cochain.zero(f, 1, 2, 2),
        psi=(Matrix.zero(f, 2, 2),), phi=Matrix.from_rows(f, [[0], [1]]),
    )
    return build_extension(c)

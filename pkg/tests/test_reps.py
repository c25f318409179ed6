from __future__ import annotations

import itertools

import pytest

from rbx import GF, QQ, Matrix
from rbx.errors import InvalidStructure
from rbx.liealg import check_jacobi, check_rota_baxter, enumerate_rb_automorphisms
from rbx.reps import (
    Representation,
    adjoint_representation,
    check_compatible_pair,
    check_representation,
    pullback_action,
    semidirect_product,
)

from tests.support import abelian_rb, algebra_pool, rep_pool, sol2


def test_zero_action_always_valid(rng):
    for field in (QQ, GF(5)):
        for base in algebra_pool(field, rng):
            r = Representation(
                base=base, hdim=2,
                action=tuple(Matrix.zero(field, 2, 2) for _ in range(base.dim)),
                s_op=Matrix.from_rows(field, [[1, 2], [3, 4]]),
            )
            assert check_representation(r)


def test_adjoint_representation_valid(rng):
    for field in (QQ, GF(5)):
        for base in algebra_pool(field, rng):
            adj = adjoint_representation(base)
            assert check_representation(adj)
            assert adj.h_bracket is base.lie
            assert adj.s_op is base.op


def test_adjoint_of_sol2_matrices():
    adj = adjoint_representation(sol2(QQ, 1))
    # ad(e0) sends e1 to e1; ad(e1) sends e0 to -e1
    assert adj.action[0].entries == ((0, 0), (0, 1))
    assert adj.action[1].entries == ((0, 0), (-1, 0))


def test_representation_counterexample():
    # 1-dim everywhere, T = 0, S = id, action = id: compatibility fails
    base = abelian_rb(QQ, 1)
    r = Representation(base=base, hdim=1, action=(Matrix.identity(QQ, 1),),
                       s_op=Matrix.identity(QQ, 1))
    assert not check_representation(r)


def test_pullback_identity_and_zero(rng):
    for r in rep_pool(GF(5), rng):
        same = pullback_action(r, Matrix.identity(GF(5), r.gdim))
        assert same.action == r.action


def test_pullback_scales_action():
    field = GF(3)
    base = abelian_rb(field, 1)
    r = Representation(base=base, hdim=1, action=(Matrix.identity(field, 1),),
                       s_op=Matrix.zero(field, 1, 1))
    pulled = pullback_action(r, Matrix.from_rows(field, [[2]]))
    assert pulled.action[0].entries == ((2,),)


def test_pullback_functoriality(rng):
    field = GF(5)
    for r in rep_pool(field, rng):
        auts = enumerate_rb_automorphisms(r.base, budget=5 ** 4) if r.gdim <= 2 else []
        for a1 in auts[:4]:
            for a2 in auts[:4]:
                once = pullback_action(pullback_action(r, a1), a2)
                both = pullback_action(r, a1 @ a2)
                assert once.action == both.action


def test_pullback_rejects_non_automorphism():
    field = GF(3)
    r = rep_pool(field, __import__("random").Random(3))[0]
    with pytest.raises(InvalidStructure):
        pullback_action(r, Matrix.zero(field, r.gdim, r.gdim))


def test_semidirect_trivial():
    field = QQ
    r = Representation(base=abelian_rb(field, 1), hdim=1,
                       action=(Matrix.zero(field, 1, 1),), s_op=Matrix.zero(field, 1, 1))
    e = semidirect_product(r)
    assert e.lie.is_abelian
    assert e.op.is_zero()


def test_semidirect_identity_action():
    field = QQ
    r = Representation(base=abelian_rb(field, 1), hdim=1,
                       action=(Matrix.identity(field, 1),), s_op=Matrix.zero(field, 1, 1))
    e = semidirect_product(r)
    assert e.lie.bracket_basis(0, 1) == (0, 1)
    assert check_jacobi(e.lie) and check_rota_baxter(e.lie, e.op)


def test_semidirect_validators_pass_on_pool(rng):
    for field in (QQ, GF(5)):
        for r in rep_pool(field, rng):
            e = semidirect_product(r)
            assert check_jacobi(e.lie)
            assert check_rota_baxter(e.lie, e.op)


def test_semidirect_rejects_nonabelian_coefficients():
    field = QQ
    adj = adjoint_representation(sol2(field, 0))
    with pytest.raises(InvalidStructure):
        semidirect_product(adj)


def test_compatible_pair_basics():
    field = GF(3)
    base = abelian_rb(field, 1)
    r = Representation(base=base, hdim=1, action=(Matrix.identity(field, 1),),
                       s_op=Matrix.zero(field, 1, 1))
    ident = Matrix.identity(field, 1)
    assert check_compatible_pair(r, ident, ident)
    # (id, 2*id): action twisted by alpha doubles, beta does not compensate
    assert not check_compatible_pair(r, ident, Matrix.from_rows(field, [[2]]))


def test_compatible_pairs_form_subgroup():
    field = GF(3)
    base = abelian_rb(field, 1)
    r = Representation(base=base, hdim=1, action=(Matrix.identity(field, 1),),
                       s_op=Matrix.zero(field, 1, 1))
    h_alg = r.coefficient_algebra()
    auts_h = enumerate_rb_automorphisms(h_alg)
    auts_g = enumerate_rb_automorphisms(r.base)
    compat = [
        (b, a) for b in auts_h for a in auts_g if check_compatible_pair(r, b, a)
    ]
    assert ((Matrix.identity(field, 1), Matrix.identity(field, 1))) in compat
    for b1, a1 in compat:
        assert (b1.inverse(), a1.inverse()) in compat
        for b2, a2 in compat:
            assert (b1 @ b2, a1 @ a2) in compat


def test_zero_action_all_pairs_compatible():
    field = GF(2)
    r = Representation(base=abelian_rb(field, 2), hdim=1,
                       action=(Matrix.zero(field, 1, 1), Matrix.zero(field, 1, 1)),
                       s_op=Matrix.zero(field, 1, 1))
    auts_g = enumerate_rb_automorphisms(r.base)
    for a in auts_g:
        assert check_compatible_pair(r, Matrix.identity(field, 1), a)

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rbx import GF, QQ, Matrix
from rbx.cohomology import (
    Cochain,
    RBCochain,
    ce_differential,
    cochain_dim,
    cochain_to_linear_map,
    derivation_space,
    linear_map_to_cochain,
    rb_cochain_dim,
    rb_twisted_differential,
    rbl_differential,
    rbl_matrix,
    second_cohomology,
)
from rbx.errors import InvalidStructure
from rbx.reps import Representation

from tests.support import (
    abelian_rb,
    random_cochain,
    random_rb_cochain,
    rep_pool,
    sol2,
)


def trivial_rep(field, gdim=1, hdim=1, s=None):
    base = abelian_rb(field, gdim)
    return Representation(
        base=base, hdim=hdim,
        action=tuple(Matrix.zero(field, hdim, hdim) for _ in range(gdim)),
        s_op=s if s is not None else Matrix.zero(field, hdim, hdim),
    )


# ---------------------------------------------------------------------------
# cochain mechanics
# ---------------------------------------------------------------------------

def test_antisymmetric_evaluation():
    c = Cochain.build(QQ, 3, 1, 2, {(0, 1): (5,), (1, 2): (7,)})
    assert c.eval_basis((0, 1)) == (5,)
    assert c.eval_basis((1, 0)) == (-5,)
    assert c.eval_basis((2, 2)) == (0,)
    assert c.eval_basis((2, 1)) == (-7,)


@settings(max_examples=50)
@given(data=st.data())
def test_permutation_sign_property(data):
    c = Cochain.build(QQ, 4, 1, 3, {
        key: (data.draw(st.integers(-5, 5)),)
        for key in itertools.combinations(range(4), 3)
    })
    perm = data.draw(st.permutations(list(range(3))))
    key = data.draw(st.sampled_from(list(itertools.combinations(range(4), 3))))
    permuted = tuple(key[p] for p in perm)
    sign = 1
    seen = list(perm)
    # parity by inversion count
    inversions = sum(
        1 for i in range(3) for j in range(i + 1, 3) if seen[i] > seen[j]
    )
    sign = -1 if inversions % 2 else 1
    expected = c.value(key)
    got = c.eval_basis(permuted)
    assert got == tuple(sign * x for x in expected)


def test_eval_vectors_multilinear():
    c = Cochain.build(QQ, 2, 1, 2, {(0, 1): (3,)})
    assert c.eval_vectors([(1, 0), (0, 1)]) == (3,)
    assert c.eval_vectors([(0, 1), (1, 0)]) == (-3,)
    assert c.eval_vectors([(1, 1), (1, 1)]) == (0,)
    assert c.eval_vectors([(2, 0), (0, 5)]) == (30,)


def test_flatten_round_trip(rng):
    for field in (QQ, GF(5)):
        for degree in (0, 1, 2, 3):
            c = random_cochain(rng, field, 3, 2, degree)
            assert Cochain.from_flat(field, 3, 2, degree, c.flatten()) == c
        rc = random_rb_cochain(rng, field, 3, 2, 2)
        assert RBCochain.from_flat(field, 3, 2, 2, rc.flatten()) == rc


def test_rb_cochain_shape_rules():
    f = Cochain.zero(QQ, 2, 1, 1)
    RBCochain(f, None)
    with pytest.raises(InvalidStructure):
        RBCochain(f, Cochain.zero(QQ, 2, 1, 0))
    f2 = Cochain.zero(QQ, 2, 1, 2)
    with pytest.raises(InvalidStructure):
        RBCochain(f2, None)


def test_linear_map_cochain_bridge():
    m = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    assert cochain_to_linear_map(linear_map_to_cochain(m, 2)) == m


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------

def test_ce_differential_degree0():
    field = QQ
    base = abelian_rb(field, 1)
    r = Representation(base=base, hdim=1, action=(Matrix.identity(field, 1),),
                       s_op=Matrix.zero(field, 1, 1))
    h = Cochain.build(field, 1, 1, 0, {(): (1,)})
    out = ce_differential(r, h)
    assert out.value((0,)) == (1,)


def test_ce_differential_zero_action_abelian():
    r = trivial_rep(QQ, gdim=2, hdim=1)
    f = Cochain.build(QQ, 2, 1, 1, {(0,): (1,), (1,): (2,)})
    assert ce_differential(r, f).is_zero()


def test_twisted_differential_zero_ops():
    r = trivial_rep(QQ, gdim=2, hdim=1)
    f = random_cochain(__import__("random").Random(0), QQ, 2, 1, 1)
    assert rb_twisted_differential(r, f).is_zero()


def test_twisted_differential_empty_codomain():
    field = QQ
    r = trivial_rep(field, gdim=1, hdim=1)
    f = Cochain.build(field, 1, 1, 1, {(0,): (1,)})
    assert rb_twisted_differential(r, f).is_zero()


def test_rbl_degree1_matches_derivation_condition(rng):
    for field in (QQ, GF(5)):
        for r in rep_pool(field, rng):
            d = Matrix.from_rows(field, [
                [rng.randint(0, 4) for _ in range(r.gdim)] for _ in range(r.hdim)
            ])
            out = rbl_differential(r, RBCochain(linear_map_to_cochain(d, r.gdim), None))
            assert out.f == ce_differential(r, linear_map_to_cochain(d, r.gdim))
            assert cochain_to_linear_map(out.theta) == r.s_op @ d - d @ r.base.op


def test_complex_axioms_random(rng):
    # the acceptance suite runs the large version; this is a quick guard
    for field in (QQ, GF(5)):
        for r in rep_pool(field, rng)[:4]:
            for _ in range(5):
                for degree in (1, 2):
                    c = random_cochain(rng, field, r.gdim, r.hdim, degree)
                    assert ce_differential(r, ce_differential(r, c)).is_zero()
                    assert rb_twisted_differential(r, rb_twisted_differential(r, c)).is_zero()
                    rc = random_rb_cochain(rng, field, r.gdim, r.hdim, degree)
                    assert rbl_differential(r, rbl_differential(r, rc)).is_zero()


# ---------------------------------------------------------------------------
# second cohomology
# ---------------------------------------------------------------------------

def test_second_cohomology_trivial_example():
    summary = second_cohomology(trivial_rep(QQ))
    assert (summary.zdim, summary.bdim, summary.hdim) == (1, 0, 1)


def test_second_cohomology_identity_s():
    summary = second_cohomology(trivial_rep(QQ, s=Matrix.identity(QQ, 1)))
    assert (summary.zdim, summary.bdim, summary.hdim) == (1, 1, 0)


def test_second_cohomology_consistency(rng):
    for field in (QQ, GF(5)):
        for r in rep_pool(field, rng):
            summary = second_cohomology(r)
            assert summary.hdim == summary.zdim - summary.bdim
            d2 = rbl_matrix(r, 2)
            for rep in summary.complement_reps:
                assert rbl_differential(r, rep).is_zero()
                assert all(x == 0 for x in d2.apply(rep.flatten()))
            # bdim at degree 2 = dim Hom - dim of the derivation space
            hom_dim = r.gdim * r.hdim
            assert summary.bdim == hom_dim - len(derivation_space(r))


def test_second_cohomology_rejects_nonabelian_coefficients():
    from rbx.reps import adjoint_representation

    adj = adjoint_representation(sol2(QQ, 0))
    with pytest.raises(InvalidStructure):
        second_cohomology(adj)


# ---------------------------------------------------------------------------
# derivation space
# ---------------------------------------------------------------------------

def test_derivation_space_trivial():
    assert len(derivation_space(trivial_rep(QQ))) == 1
    assert len(derivation_space(trivial_rep(QQ, s=Matrix.identity(QQ, 1)))) == 0
    assert len(derivation_space(trivial_rep(GF(2)))) == 1


def test_derivation_space_members_satisfy_identities(rng):
    for field in (QQ, GF(5)):
        for r in rep_pool(field, rng):
            for d in derivation_space(r):
                assert r.s_op @ d == d @ r.base.op
                for i in range(r.gdim):
                    for j in range(i + 1, r.gdim):
                        lhs = d.apply(r.base.lie.bracket_basis(i, j))
                        rhs = tuple(
                            field.sub(a, b) for a, b in zip(
                                r.action[i].apply(d.col(j)),
                                r.action[j].apply(d.col(i)),
                            )
                        )
                        assert lhs == rhs

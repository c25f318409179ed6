from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rbx import GF, QQ, Matrix, solve
from rbx.errors import BudgetExceeded, DimensionMismatch, InvalidStructure
from rbx.linalg import (
    enumerate_matrices,
    matrix_to_vec_cols,
    unit_vector,
    vec_to_matrix_cols,
)

from tests.support import random_matrix


def test_field_rejects_composite_modulus():
    with pytest.raises(InvalidStructure):
        GF(6)
    with pytest.raises(InvalidStructure):
        GF(1)


def test_scalar_parse_and_format_roundtrip():
    assert QQ.parse("2/4") == Fraction(1, 2)
    assert QQ.format(QQ.parse("2/4")) == "1/2"
    assert QQ.parse("-3") == Fraction(-3)
    assert QQ.format(Fraction(-1, 2)) == "-1/2"
    assert GF(5).parse("7") == 2
    assert GF(5).parse(-1) == 4
    with pytest.raises(InvalidStructure):
        QQ.parse("a/b")
    with pytest.raises(InvalidStructure):
        GF(5).parse("1/2")


@given(num=st.integers(-40, 40), den=st.integers(1, 40))
def test_rational_canonical_form(num, den):
    # re-serializing a computed scalar reproduces lowest-terms, positive-denominator form
    value = QQ.parse(f"{num}/{den}")
    text = QQ.format(value)
    assert QQ.parse(text) == value
    if "/" in text:
        n, d = text.split("/")
        import math

        assert int(d) > 1
        assert math.gcd(abs(int(n)), int(d)) == 1


def test_rank_identity_and_zero():
    assert Matrix.identity(QQ, 2).rank() == 2
    assert Matrix.zero(QQ, 2, 2).rank() == 0


def test_rank_dependent_rows_f3():
    m = Matrix.from_rows(GF(3), [[2, 4], [1, 2]])
    assert m.rank() == 1


def test_kernel_identity_empty():
    assert Matrix.identity(QQ, 3).kernel_basis() == []


def test_kernel_one_dimensional():
    m = Matrix.from_rows(QQ, [[1, 1]])
    basis = m.kernel_basis()
    assert len(basis) == 1
    assert m.apply(basis[0]) == (0,)


def test_kernel_zero_matrix_full():
    m = Matrix.zero(QQ, 2, 3)
    basis = m.kernel_basis()
    assert len(basis) == 3
    stacked = Matrix.from_cols(QQ, basis, rows=3)
    assert stacked.rank() == 3


def test_solve_identity():
    x, kernel = solve(Matrix.identity(QQ, 2), (3, 5))
    assert x == (3, 5)
    assert kernel == []


def test_solve_underdetermined():
    a = Matrix.from_rows(QQ, [[1, 1]])
    x, kernel = solve(a, (2,))
    assert a.apply(x) == (2,)
    assert len(kernel) == 1


def test_solve_inconsistent():
    a = Matrix.from_rows(QQ, [[1], [1]])
    assert solve(a, (0, 1)) is None


@pytest.mark.parametrize("field", [QQ, GF(3), GF(5)])
def test_rank_nullity_random(field, rng):
    for _ in range(30):
        rows = rng.randint(0, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, field, rows, cols)
        kernel = m.kernel_basis()
        assert m.rank() + len(kernel) == cols
        for v in kernel:
            assert all(x == 0 for x in m.apply(v))


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_solve_residual_exactly_zero(field, rng):
    for _ in range(30):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = random_matrix(rng, field, rows, cols)
        x0 = tuple(field.normalize(rng.randint(-3, 3)) for _ in range(cols))
        b = a.apply(x0)
        x, _ = solve(a, b)
        assert a.apply(x) == tuple(field.normalize(v) for v in b)


def test_inverse_round_trip(rng):
    for field in (QQ, GF(5)):
        for _ in range(20):
            n = rng.randint(1, 4)
            m = random_matrix(rng, field, n, n)
            if m.rank() < n:
                with pytest.raises(InvalidStructure):
                    m.inverse()
                continue
            assert (m @ m.inverse()).is_identity()
            assert (m.inverse() @ m).is_identity()


def test_bareiss_handles_fractional_entries():
    m = Matrix.from_rows(QQ, [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert m.rank() == 2
    x, kernel = solve(m, (1, 3))
    assert m.apply(x) == (Fraction(1), Fraction(3))
    assert kernel == []


def test_deterministic_kernel_across_runs():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6]])
    assert m.kernel_basis() == m.kernel_basis()


def test_column_flattening_round_trip(rng):
    for field in (QQ, GF(3)):
        m = random_matrix(rng, field, 3, 2)
        assert vec_to_matrix_cols(field, matrix_to_vec_cols(m), 3, 2) == m


def test_matmul_shapes():
    a = Matrix.zero(QQ, 2, 3)
    b = Matrix.zero(QQ, 3, 4)
    assert (a @ b).rows == 2 and (a @ b).cols == 4
    with pytest.raises(DimensionMismatch):
        b @ a @ a


def test_enumerate_matrices_lex_order_and_budget():
    mats = list(enumerate_matrices(GF(2), 1, 2, budget=16))
    assert [m.entries for m in mats] == [((0, 0),), ((0, 1),), ((1, 0),), ((1, 1),)]
    with pytest.raises(BudgetExceeded) as err:
        list(enumerate_matrices(GF(3), 3, 3, budget=100))
    assert err.value.required == 3 ** 9


def test_unit_vector():
    assert unit_vector(QQ, 3, 1) == (0, 1, 0)

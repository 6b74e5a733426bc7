from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from cangrow import exactla
from cangrow.exactla import FieldSpec, Matrix, kernel_basis, kernel_of_columns, rank, rref

F = FieldSpec.prime(101)
Q = FieldSpec.rational()


def matrices(field, max_side=7):
    def build(shape):
        r, c = shape
        entries = st.integers(-3, 3) if field.p is None else st.integers(0, field.p - 1)
        return st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
    shapes = st.tuples(st.integers(1, max_side), st.integers(1, max_side))
    return shapes.flatmap(build).map(lambda d: Matrix.from_dense(d, field))


@pytest.fixture
def python_backend():
    old = exactla.set_backend("python")
    yield
    exactla.set_backend(old)


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec.prime(32004)


def test_rational_inverse():
    assert Q.inv(Fraction(3, 4)) == Fraction(4, 3)
    assert F.mul(F.inv(7), 7) == 1


def test_identity_rank():
    assert rank(Matrix.identity(5, F)) == 5


def test_known_rank_over_q_and_fp():
    # rank 2 over Q; over F_3 the determinant 3 vanishes too
    data = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert rank(Matrix.from_dense(data, Q)) == 2
    assert rank(Matrix.from_dense([[1, 1], [1, 4]], FieldSpec.prime(3))) == 1


@settings(max_examples=60, deadline=None)
@given(matrices(F))
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).ncols == m.ncols


@settings(max_examples=60, deadline=None)
@given(matrices(Q))
def test_kernel_is_annihilated_over_q(m):
    K = kernel_basis(m)
    assert (m @ K).is_zero()


@settings(max_examples=40, deadline=None)
@given(matrices(F))
def test_rref_idempotent_and_transpose_rank(m):
    R, piv = rref(m)
    assert rref(R)[0] == R
    assert list(piv) == sorted(piv)
    assert rank(m) == rank(m.T) == len(piv)


@pytest.mark.skipif(exactla.flint is None, reason="python-flint missing")
@settings(max_examples=40, deadline=None)
@given(matrices(F, max_side=9))
def test_flint_and_python_backends_agree(m):
    cols = m.columns()
    old = exactla.set_backend("python")
    try:
        k_py, r_py = kernel_of_columns(cols, F), rref(m)
    finally:
        exactla.set_backend("flint")
    try:
        k_fl, r_fl = kernel_of_columns(cols, F), rref(m)
    finally:
        exactla.set_backend(old)
    assert k_py == k_fl
    assert r_py == r_fl


def test_explicit_zero_rejected():
    with pytest.raises(ValueError):
        Matrix(1, 1, F, [{0: 0}])


def test_unknown_backend():
    with pytest.raises(ValueError):
        exactla.set_backend("gpu")

from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_hecke.linalg import (
    EchelonBasis,
    LinAlgError,
    Matrix,
    inverse,
    is_invertible,
    kernel,
    rank,
    restrict,
    rref,
)
from affine_hecke.scalars import QContext

ONE = F(1)
small = st.fractions(-3, 3, max_denominator=3)
square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def det_oracle(a):
    """Laplace expansion."""
    n = len(a)
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * det_oracle([r[:j] + r[j + 1 :] for r in a[1:]]) for j in range(n))


@settings(max_examples=60, deadline=None)
@given(square)
def test_inverse_and_rank_agree_with_determinant(a):
    m = Matrix.from_dense(a, ONE)
    d = det_oracle(a)
    assert is_invertible(m) == (d != 0)
    if d:
        assert m @ inverse(m) == Matrix.identity(len(a), ONE)
        assert rank(m) == len(a)
    else:
        with pytest.raises(LinAlgError):
            inverse(m)


@settings(max_examples=60, deadline=None)
@given(square)
def test_kernel(a):
    m = Matrix.from_dense(a, ONE)
    ker = kernel(m)
    assert len(ker) + rank(m) == m.ncols
    for v in ker:
        assert not m.apply(v)


def test_rref():
    m = Matrix.from_dense([[2, 4], [1, 2]], ONE)
    rows, piv = rref(m)
    assert len(rows) == 1 and rank(m) == 1


def test_field_matrices():
    q = QContext(1).q()
    one = q / q
    m = Matrix.from_dense([[q, 1 - q], [0 * q, 1 / q]], one)
    assert m @ inverse(m) == Matrix.identity(2, one)
    assert (m**-1) == inverse(m)
    assert m**2 == m @ m


def test_echelon_basis():
    b = EchelonBasis(3, ONE)
    assert b.add({0: F(1), 1: F(2)})
    assert not b.add({0: F(2), 1: F(4)})
    assert b.add({2: F(1)})
    assert b.contains({0: F(3), 1: F(6), 2: F(1)})
    assert len(b) == 2


def test_restrict():
    m = Matrix.from_dense([[0, 1], [1, 0]], ONE)
    src = [{0: ONE, 1: ONE}]
    r = restrict(m, src, src, [0])
    assert r.to_dense() == [[1]]
    with pytest.raises(LinAlgError):
        restrict(m, [{0: ONE}], [{0: ONE}], [0])


def test_shape_errors():
    with pytest.raises(Exception):
        Matrix.zeros(2, 3, ONE) @ Matrix.zeros(2, 3, ONE)

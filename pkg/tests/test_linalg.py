from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lcpalg import linalg as la
from lcpalg.errors import MalformedInputError, MalformedRationalError

small = st.integers(min_value=-4, max_value=4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def to_sympy(A):
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in A])


@pytest.mark.parametrize(
    "text,value",
    [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), ("4/6", Fraction(2, 3)), ("−7", Fraction(-7)), ("0/5", Fraction(0))],
)
def test_parse_rational(text, value):
    assert la.parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "", "a", "1//2", "--1", "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(MalformedRationalError):
        la.parse_rational(text)


def test_format_rational_lowest_terms():
    assert la.format_rational(Fraction(6, -4)) == "-3/2"
    assert la.format_rational(Fraction(4, 2)) == "2"


def test_q_refuses_floats():
    with pytest.raises(TypeError):
        la.Q(0.5)
    with pytest.raises(TypeError):
        la.Q(True)


def test_ragged_matrix():
    with pytest.raises(MalformedInputError):
        la.mat([[1, 2], [3]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c))))
def test_rank_and_nullspace_match_sympy(rows):
    A = la.mat(rows)
    ncols = len(A[0])
    R, piv = la.rref(A)
    S = to_sympy(A)
    assert len(piv) == S.rank()
    N = la.nullspace(A, ncols)
    assert len(N) == ncols - S.rank()
    for v in N:
        assert not any(la.matvec(A, v))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_and_inverse_match_sympy(rows):
    A = la.mat(rows)
    S = to_sympy(A)
    assert la.det(A) == S.det()
    if S.det() != 0:
        assert to_sympy(la.inverse(A)) == S.inv()
        assert la.matmul(A, la.inverse(A)) == la.identity(len(A))
    else:
        with pytest.raises(MalformedInputError):
            la.inverse(A)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)), st.integers(0, 1))
def test_definiteness_matches_sympy(rows, shift):
    B = la.mat(rows)
    A = la.matmul(la.transpose(B), B)
    if shift:
        A = la.add(A, la.identity(len(A)))
    S = to_sympy(A)
    assert la.is_positive_semidefinite(A)
    assert la.is_positive_definite(A) == S.is_positive_definite
    neg = la.scale(-1, la.add(A, la.identity(len(A))))
    assert not la.is_positive_semidefinite(neg)


def test_semidefinite_with_zero_pivot_first():
    assert la.is_positive_semidefinite(la.mat([[0, 0], [0, 1]]))
    assert not la.is_positive_semidefinite(la.mat([[0, 1], [1, 1]]))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve(rows, b):
    A = la.mat(rows)
    x = la.solve(A, la.vec(b))
    if x is None:
        S = to_sympy(A)
        assert S.rank() < sp.Matrix.hstack(S, sp.Matrix(b)).rank()
    else:
        assert la.matvec(A, x) == la.vec(b)


def test_kron_block_diag():
    A = la.mat([[1, 2], [3, 4]])
    I = la.identity(2)
    K = la.kron(A, I)
    assert K[0] == la.vec([1, 0, 2, 0]) and K[3] == la.vec([0, 3, 0, 4])
    B = la.block_diag(A, la.mat([[5]]))
    assert la.shape(B) == (3, 3) and B[2][2] == 5 and B[0][2] == 0

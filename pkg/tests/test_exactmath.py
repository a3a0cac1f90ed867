import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgdesc.exactmath import (
    DimensionError,
    ExactMatrix,
    IntPolynomial,
    as_rational,
    format_rational,
    integer_roots,
    matmul,
    qbinomial,
    qint,
    rank,
    rational_sqrt,
    solve_linear,
    trace,
    transpose,
    tridiagonal_charpoly,
)
from drgdesc.ffield import subspaces

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def matrices(rows, cols):
    return st.lists(st.lists(fractions, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        ExactMatrix.from_rows
    )


@given(fractions)
def test_rational_text_round_trip(x):
    assert as_rational(format_rational(x)) == x


def test_format_is_num_over_den():
    assert format_rational(Fraction(3)) == "3/1"
    assert format_rational(Fraction(-2, 6)) == "-1/3"


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", range(0, 5))
def test_qbinomial_counts_subspaces(q, n):
    for k in range(n + 1):
        assert qbinomial(n, k, q) == sum(1 for _ in subspaces(q, n, k))


@given(st.integers(0, 12), st.integers(0, 12))
def test_qbinomial_at_one_is_binomial(n, k):
    assert qbinomial(n, k, 1) == (math.comb(n, k) if k <= n else 0)


@given(st.integers(0, 10), st.sampled_from([-3, -2, 2, 3, Fraction(1, 2)]))
def test_qint_is_geometric_sum(n, q):
    assert qint(n, q) == sum(Fraction(q) ** i for i in range(n))


@given(fractions)
def test_rational_sqrt_of_square(x):
    assert rational_sqrt(x * x) == abs(x)


@pytest.mark.parametrize("x", [Fraction(2), Fraction(3, 4), Fraction(-1)])
def test_rational_sqrt_rejects_non_squares(x):
    assert rational_sqrt(x) is None


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6))
def test_integer_roots_recover_roots(roots):
    p = IntPolynomial.from_roots(roots)
    found = integer_roots(p)
    assert [r for r, _ in found] == sorted(set(roots), reverse=True)
    assert sorted(r for r, m in found for _ in range(m)) == sorted(roots)


@settings(max_examples=40)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-4, 4), min_size=n, max_size=n),
    st.lists(st.integers(1, 4), min_size=n - 1, max_size=n - 1),
    st.lists(st.integers(1, 4), min_size=n - 1, max_size=n - 1),
)))
def test_tridiagonal_charpoly_matches_determinant(data):
    diag, upper, lower = data
    n = len(diag)
    M = np.diag(diag) + np.diag(upper, 1) + np.diag(lower, -1)
    p = tridiagonal_charpoly(diag, upper, lower)
    assert p.degree == n
    for x in range(-3, 4):
        assert p(x) == round(np.linalg.det(x * np.eye(n) - M))


@settings(max_examples=30)
@given(matrices(2, 3), matrices(3, 2), matrices(2, 2))
def test_matmul_associative_and_transpose(a, b, c):
    assert matmul(matmul(a, b), c) == matmul(a, matmul(b, c))
    assert transpose(a @ b) == transpose(b) @ transpose(a)


@settings(max_examples=30)
@given(matrices(3, 3), matrices(3, 3))
def test_trace_commutes(a, b):
    assert trace(a @ b) == trace(b @ a)


@settings(max_examples=40)
@given(matrices(3, 3), matrices(3, 1))
def test_solve_linear_on_consistent_systems(a, x0):
    rhs = a @ x0
    x = solve_linear(a, rhs)
    assert x is not None and a @ x == rhs


def test_solve_linear_detects_inconsistency():
    a = ExactMatrix.from_rows([[1, 1], [2, 2]])
    assert solve_linear(a, ExactMatrix.from_rows([[1], [3]])) is None


def test_rank_and_identity():
    assert rank(ExactMatrix.identity(4)) == 4
    assert rank(ExactMatrix.ones(3, 3)) == 1
    assert (ExactMatrix.identity(3) - ExactMatrix.identity(3)).is_zero()


def test_shape_mismatch_raises():
    with pytest.raises(DimensionError):
        ExactMatrix.ones(2, 3) @ ExactMatrix.ones(2, 3)
    with pytest.raises(DimensionError):
        ExactMatrix.ones(2, 3) + ExactMatrix.ones(3, 2)

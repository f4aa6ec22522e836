from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ
from sympy.polys.rings import ring

from coxhecke.linalg import bareiss_rank, integer_rows, kernel_basis, rank_rational, rref

from oracles import dense_rank


@st.composite
def sparse_matrices(draw, max_rows=7, max_cols=7):
    nrows = draw(st.integers(0, max_rows))
    ncols = draw(st.integers(1, max_cols))
    entry = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    rows = []
    for _ in range(nrows):
        cols = draw(st.sets(st.integers(0, ncols - 1), max_size=ncols))
        rows.append({j: draw(entry) for j in cols})
    # duplicate a combination of rows now and then to force dependence
    if len(rows) >= 2 and draw(st.booleans()):
        a, b = rows[0], rows[1]
        rows.append({j: a.get(j, 0) * 2 - b.get(j, 0) for j in set(a) | set(b)})
    return rows, ncols


def dense(rows, ncols):
    return [[r.get(j, 0) for j in range(ncols)] for r in rows]


@settings(max_examples=200, deadline=None)
@given(sparse_matrices())
def test_rank_matches_sympy(data):
    rows, ncols = data
    assert rank_rational(rows, ncols) == dense_rank(dense(rows, ncols), ncols)


@settings(max_examples=200, deadline=None)
@given(sparse_matrices())
def test_kernel_basis(data):
    rows, ncols = data
    basis = kernel_basis(rows, ncols)
    assert len(basis) == ncols - dense_rank(dense(rows, ncols), ncols)
    for vec in basis:
        for r in rows:
            assert sum(c * vec[j] for j, c in r.items()) == 0
    if basis:
        assert dense_rank(basis, ncols) == len(basis)


@settings(max_examples=100, deadline=None)
@given(sparse_matrices())
def test_rref_is_reduced(data):
    rows, ncols = data
    reduced, pivots = rref(rows, ncols)
    assert pivots == sorted(pivots)
    for row, p in zip(reduced, pivots):
        assert row[p] == 1
        assert min(row) == p
        for other, q in zip(reduced, pivots):
            if other is not row:
                assert p not in other


def test_integer_rows_clears_denominators():
    rows = [{0: Fraction(1, 2), 2: Fraction(2, 3)}, {}]
    assert integer_rows(rows, 3) == [[3, 0, 4]]


def test_bareiss_edge_cases():
    assert bareiss_rank([], 3) == 0
    assert bareiss_rank([[0, 0], [0, 0]], 2) == 0
    assert bareiss_rank([[0, 2], [0, 4]], 2) == 1
    assert bareiss_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 3) == 2
    assert bareiss_rank([[2, 0], [0, 3], [1, 1]], 2) == 2


def test_bareiss_over_polynomials():
    R, a, b = ring("a,b", ZZ)
    cases = [
        [[a, b], [b, a]],
        [[a, b, 1], [a * a, a * b, a], [1, 0, b]],
        [[a - b, 0], [0, 0], [a * b - b * b, 0]],
        [[0, a, b * b], [a, 0, 1], [a * b, a * a, a * b * b + a]],
    ]
    for rows in cases:
        sym = sympy.Matrix([[x.as_expr() if hasattr(x, "as_expr") else x for x in r] for r in rows])
        expected = sym.rank(simplify=True)
        lifted = [[R(x) for x in r] for r in rows]
        assert bareiss_rank(lifted, len(rows[0])) == expected


def test_inexact_division_is_detected():
    from coxhecke.linalg import _int_exquo

    with pytest.raises(ArithmeticError):
        _int_exquo(5, 2)

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det_cofactor, lagrange_products, rank_minors
from tmeshdim.exact import (
    DimensionError,
    ExactMatrix,
    InvalidGeometryError,
    PreconditionError,
    cycle_matrix,
    cycle_matrix_abs_det,
    det,
    format_rational,
    lagrange_ratio,
    rank,
    rref,
    to_rational,
    vandermonde,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero = small.filter(lambda x: x != 0)


@st.composite
def matrices(draw, max_dim=6, square=False):
    r = draw(st.integers(1, max_dim))
    c = r if square else draw(st.integers(1, max_dim))
    return ExactMatrix([[draw(small) for _ in range(c)] for _ in range(r)])


@st.composite
def low_rank(draw, max_dim=6):
    """Product of an r x k and k x c matrix, so rank <= k and often deficient."""
    r, c = draw(st.integers(1, max_dim)), draw(st.integers(1, max_dim))
    k = draw(st.integers(0, min(r, c)))
    ints = st.integers(-3, 3)
    a = [[draw(ints) for _ in range(k)] for _ in range(r)]
    b = [[draw(ints) for _ in range(c)] for _ in range(k)]
    return ExactMatrix([[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(c)] for i in range(r)])


def test_rational_roundtrip():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(-4) == -4
    assert format_rational(Fraction(4, 2)) == 2
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)
    with pytest.raises(ZeroDivisionError):
        to_rational("1/0")


def test_rank_examples():
    assert rank(ExactMatrix.identity(3)) == 3
    assert rank(ExactMatrix.zeros(2, 5)) == 0
    assert rank(vandermonde([1, 2, 3, 4], 2)) == 3
    assert rank(ExactMatrix([], ncols=3)) == 0


def test_det_examples():
    assert det(ExactMatrix([[7]])) == 7
    assert det(ExactMatrix([[1, 2], [3, 4]])) == -2
    assert det(ExactMatrix([[2, 9, 1], [0, 3, 4], [0, 0, 5]])) == 30
    assert det(ExactMatrix([], ncols=0)) == 1
    with pytest.raises(DimensionError):
        det(ExactMatrix([[1, 2]]))


def test_det_needs_row_swap():
    assert det(ExactMatrix([[0, 1], [1, 0]])) == -1
    assert det(ExactMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])) == -1


def test_rref_examples():
    r, piv = rref(ExactMatrix.identity(4))
    assert r == ExactMatrix.identity(4) and piv == [0, 1, 2, 3]
    r, piv = rref(ExactMatrix.zeros(3, 2))
    assert r == ExactMatrix.zeros(3, 2) and piv == []


def test_rref_vandermonde_five_nodes():
    nodes = [Fraction(i) for i in range(5)]
    r, piv = rref(vandermonde(nodes, 2))
    assert piv == [0, 1, 2]
    assert r.column(3) == tuple(lagrange_products(nodes[:3], nodes[3]))
    assert r.column(4) == tuple(lagrange_products(nodes[:3], nodes[4]))


def test_vandermonde_examples():
    assert vandermonde([0], 0) == ExactMatrix([[1]])
    t3, t2, t1 = 3, 2, 1
    assert vandermonde([t3, t2, t1], 2) == ExactMatrix([[1, 1, 1], [t3, t2, t1], [9, 4, 1]])
    with pytest.raises(InvalidGeometryError):
        vandermonde([1, 2, 1], 2)


def test_lagrange_ratio_examples():
    assert lagrange_ratio([2, 3, 6], 4, 5) == Fraction(3, 2)
    assert lagrange_ratio([2, 3, 6], 4, 4) == 1
    assert lagrange_ratio([2, 3, 6], 4, 3) == 0
    with pytest.raises(ZeroDivisionError):
        lagrange_ratio([2, 3], 3, 5)


def test_cycle_matrix_examples():
    a = [Fraction(2), Fraction(5), Fraction(-1, 3)]
    b = [Fraction(7), Fraction(1, 2), Fraction(3)]
    prod = a[0] * a[1] * a[2] * b[0] * b[1] * b[2]
    assert cycle_matrix_abs_det(a, b) == abs(prod - 1)
    assert cycle_matrix_abs_det([1, 1, 1], [1, 1, 1]) == 0
    assert cycle_matrix_abs_det([2, 3], [1, 1]) == 5
    assert abs(det_cofactor(cycle_matrix([2, 3], [1, 1]))) == 5
    with pytest.raises(PreconditionError):
        cycle_matrix_abs_det([2, 0], [1, 1])
    with pytest.raises(PreconditionError):
        cycle_matrix_abs_det([2], [1])


def test_cycle_matrix_layout_matches_three_cycle():
    m = cycle_matrix([1, 2, 3], [4, 5, 6])
    # one 1 per column, two nonzeros per row
    assert all(sum(1 for x in m.column(j) if x == 1) >= 1 for j in range(6))
    assert all(sum(1 for x in row if x) == 2 for row in m.rows)
    assert m.rows[3] == (0, 1, 4, 0, 0, 0)
    assert m.rows[5] == (6, 0, 0, 0, 0, 1)


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=8, square=True))
def test_det_matches_cofactor_oracle(m):
    assert det(m) == det_cofactor(m)


@settings(max_examples=150, deadline=None)
@given(st.one_of(matrices(max_dim=5), low_rank(max_dim=5)))
def test_rank_matches_minor_oracle(m):
    assert rank(m) == rank_minors(m)


@settings(max_examples=100, deadline=None)
@given(low_rank(max_dim=7), st.randoms(use_true_random=False))
def test_rank_permutation_invariant(m, rnd):
    rows = list(range(m.nrows))
    cols = list(range(m.ncols))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    assert rank(m.submatrix(rows, cols)) == rank(m)


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=1, max_size=8, unique=True), st.integers(0, 5))
def test_vandermonde_rank(nodes, d):
    assert rank(vandermonde(nodes, d)) == min(len(nodes), d + 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(small, min_size=d + 2, max_size=d + 5, unique=True))))
def test_vandermonde_rref_columns_are_lagrange_products(case):
    d, nodes = case
    r, piv = rref(vandermonde(nodes, d))
    assert piv == list(range(d + 1))
    for i in range(d + 1, len(nodes)):
        assert list(r.column(i)) == lagrange_products(nodes[:d + 1], nodes[i])


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.lists(nonzero, min_size=n, max_size=n),
                                                      st.lists(nonzero, min_size=n, max_size=n))))
def test_cycle_abs_det_matches_assembled(ab):
    a, b = ab
    assert cycle_matrix_abs_det(a, b) == abs(det(cycle_matrix(a, b)))


def test_rref_is_reduced():
    rng = random.Random(3)
    for _ in range(50):
        m = ExactMatrix([[rng.randint(-2, 2) for _ in range(5)] for _ in range(4)])
        r, piv = rref(m)
        for k, c in enumerate(piv):
            assert r.column(c) == tuple(Fraction(int(i == k)) for i in range(4))
        assert len(piv) == rank(m)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacsyz.errors import BadPrime
from jacsyz.jacobian import graded
from jacsyz.linalg import FILTER_PRIMES, Matrix, int_kernel, kernel_basis, rank, rank_mod_p
from jacsyz.parse import parse_polynomial

import oracles


def test_rank_trivial_cases():
    assert rank(Matrix.from_rows([[1, 0], [0, 1]])) == 2
    assert rank(Matrix.zeros(3, 3)) == 0


def test_fermat_cubic_degree_three_macaulay_rank():
    # f_x, f_y, f_z times x, y, z inside S_3
    M = graded(parse_polynomial("x^3 + y^3 + z^3")).macaulay(3)
    rows = [[int(M[i, j]) for j in range(M.ncols())] for i in range(M.nrows())]
    assert (M.nrows(), M.ncols()) == (10, 9)
    assert rank(Matrix.from_rows(rows)) == oracles.rank(rows) == 9


def test_kernel_of_all_ones_row():
    ker = kernel_basis(Matrix.from_rows([[1, 1, 1]]))
    assert len(ker) == 2
    assert ker == [(1, 0, -1), (0, 1, -1)]


def test_invertible_has_empty_kernel():
    assert kernel_basis(Matrix.from_rows([[2, 1], [1, 1]])) == []


def test_no_constant_syzygy_for_conic_tangent():
    # S_0^3 -> S_2 for f = x^2 y - x z^2
    M = graded(parse_polynomial("x^2*y - x*z^2")).macaulay(2)
    assert M.ncols() == 3
    assert int_kernel(M) == []


def test_kernel_is_rref():
    m = Matrix.from_rows([[1, 2, 3, 4], [2, 4, 7, 9]])
    ker = kernel_basis(m)
    leads = [next(i for i, v in enumerate(row) if v) for row in ker]
    assert leads == sorted(leads)
    for row, lead in zip(ker, leads):
        assert row[lead] == 1
        assert all(other[lead] == 0 for other in ker if other is not row)


def test_rank_mod_p_examples():
    assert rank_mod_p(Matrix.from_rows([[1, 0], [0, 1]]), 7) == 2
    assert rank_mod_p(Matrix.from_rows([[2, 4], [1, 2]]), 3) == 1


def test_bad_prime():
    with pytest.raises(BadPrime):
        rank_mod_p(Matrix.from_rows([[Fraction(1, 7), 1]]), 7)


def test_rational_entries():
    m = Matrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(m) == 1
    (v,) = kernel_basis(m)
    assert v == (1, Fraction(-3, 2))


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity_and_kernel_annihilates(rows):
    m = Matrix.from_rows(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    assert rank(m) == oracles.rank(rows)
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


@settings(max_examples=40, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_never_exceeds_rank(rows, p):
    m = Matrix.from_rows(rows)
    assert rank_mod_p(m, p) <= rank(m)


@pytest.mark.parametrize("text", ["x*(x*y - z^2)", "x*(x + y)*(x*y - z^2)", "(x^3 + y^3)*(x^3 + y^3 + z^3)"])
def test_one_filter_prime_matches_exact_rank(text):
    G = graded(parse_polynomial(text))
    for k in range(G.d - 1, G.T + 2):
        M = G.macaulay(k)
        rows = [[int(M[i, j]) for j in range(M.ncols())] for i in range(M.nrows())]
        exact = rank(Matrix.from_rows(rows))
        assert any(rank_mod_p(Matrix.from_rows(rows), p) == exact for p in FILTER_PRIMES)

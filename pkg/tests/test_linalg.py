from fractions import Fraction

import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from ternary_betti import linalg

small_ints = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)], r, c


def columns_of(rows, r, c):
    return [{i: rows[i][j] for i in range(r) if rows[i][j]} for j in range(c)]


@given(matrices())
def test_rank_matches_sympy(m):
    rows, r, c = m
    want = sympy.Matrix(rows).rank() if r and c else 0
    assert linalg.rank(columns_of(rows, r, c)) == want


@given(matrices())
def test_kernel_is_a_basis(m):
    rows, r, c = m
    cols = columns_of(rows, r, c)
    rk, kernel = linalg.rank_and_kernel(cols)
    assert rk + len(kernel) == c
    for vec in kernel:
        for i in range(r):
            assert sum(rows[i][j] * a for j, a in vec.items()) == 0
    if kernel:
        dense = sympy.Matrix([[vec.get(j, 0) for j in range(c)] for vec in kernel])
        assert dense.rank() == len(kernel)


@given(matrices(max_rows=4, max_cols=4))
def test_rational_rank(m):
    rows, r, c = m
    frac = [[Fraction(x, 1 + abs(x) % 3) for x in row] for row in rows]
    want = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in frac]).rank() if r and c else 0
    assert linalg.rational_rank(frac) == want


def _sympy_invariants(rows, r, c):
    if not r or not c:
        return []
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(snf[i, i])) for i in range(min(r, c)) if snf[i, i] != 0]


@given(matrices(max_rows=5, max_cols=5))
def test_smith_matches_sympy(m):
    rows, r, c = m
    diag = linalg.smith_diagonal(columns_of(rows, r, c))
    assert diag == _sympy_invariants(rows, r, c)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


def test_smith_with_torsion():
    # boundary-like matrix with a 2-torsion factor
    cols = [{0: 2}, {0: 1, 1: 1}, {1: 3}]
    assert linalg.smith_diagonal(cols) == [1, 1]
    assert linalg.smith_diagonal([{0: 2, 1: 0}, {1: 4}]) == [2, 4]
    assert linalg.smith_diagonal([{0: 6}, {1: 4}]) == [2, 12]


def test_echelon_tags_record_relations():
    ech = linalg.Echelon(track=True)
    ech.add({0: 1, 1: 1}, {0: 1})
    ech.add({1: 1, 2: 1}, {1: 1})
    rem, tag = ech.reduce({0: 1, 2: -1}, {-1: 1})
    # (1,0,-1) = e0 + e1 - (e1 + e2)... as a combination of the stored vectors
    assert rem == {}
    scale = tag[-1]
    coeffs = {j: Fraction(-tag.get(j, 0), scale) for j in (0, 1)}
    assert coeffs == {0: 1, 1: -1}


def test_content():
    assert linalg.content({0: 4, 1: 6}) == 2
    assert linalg.content({}) == 0

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oridial import _kernels_py
from oridial.linalg import (
    Matrix,
    NonComplexError,
    ShapeMismatchError,
    cohomology_dim,
    format_rational,
    in_image,
    kernel_backend,
    nullspace,
    parse_rational,
    rank,
    rref,
)

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def small_matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(rationals, min_size=r * c, max_size=r * c).map(
                lambda xs: Matrix(r, c, xs)
            )
        )
    )


def test_rank_examples():
    assert rank(Matrix.zeros(0, 0)) == 0
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_nullspace_examples():
    assert nullspace(Matrix.identity(4)) == []
    assert len(nullspace(Matrix.zeros(2, 3))) == 3
    (v,) = nullspace(Matrix.from_rows([[1, 1]]))
    assert v == [-1, 1]


def test_in_image_examples():
    eye = Matrix.identity(3)
    assert in_image(eye, [1, Fraction(2, 3), -5]) == [1, Fraction(2, 3), -5]
    assert in_image(Matrix.zeros(2, 2), [1, 0]) is None
    assert in_image(Matrix.from_rows([[1], [1]]), [2, 2]) == [2]
    with pytest.raises(ShapeMismatchError):
        in_image(eye, [1, 2])


def test_cohomology_dim_examples():
    n = 4
    d_out = Matrix.zeros(1, n)
    d_in = Matrix.zeros(n, 1)
    assert cohomology_dim(d_out, d_in) == n
    assert cohomology_dim(Matrix.identity(n), Matrix.zeros(n, 1)) == 0
    with pytest.raises(NonComplexError):
        cohomology_dim(Matrix.identity(2), Matrix.identity(2))
    with pytest.raises(ShapeMismatchError):
        cohomology_dim(Matrix.zeros(2, 3), Matrix.zeros(2, 2))


def test_cohomology_dim_invariant_under_middle_permutation():
    rng = random.Random(0)
    for _ in range(10):
        mid = 5
        d_in = Matrix(mid, 2, [rng.randint(-2, 2) for _ in range(2 * mid)])
        # build d_out annihilating the image so the pair is a complex
        basis = nullspace(Matrix.from_rows([[d_in.at(i, j) for i in range(mid)]
                                            for j in range(2)]))
        d_out = Matrix.from_rows([list(v) for v in basis]) if basis else Matrix.zeros(0, mid)
        dim = cohomology_dim(d_out, d_in)
        perm = list(range(mid))
        rng.shuffle(perm)
        p = Matrix(mid, mid, [1 if perm[i] == j else 0 for i in range(mid) for j in range(mid)])
        p_inv = p.transpose()
        assert cohomology_dim(d_out.mul(p_inv), p.mul(d_in)) == dim


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_equals_transpose_rank(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_nullspace_is_exact_and_full(m):
    basis = nullspace(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert all(x == 0 for x in m.matvec(v))


@settings(max_examples=40, deadline=None)
@given(small_matrices())
def test_rref_reproduces_row_space_shape(m):
    pivots, rows = rref(m)
    assert len(pivots) == rank(m)
    for r, pc in enumerate(pivots):
        assert rows[r][pc] == 1
        assert all(rows[i][pc] == 0 for i in range(len(rows)) if i != r)


def test_solution_verifies():
    rng = random.Random(3)
    for _ in range(20):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = Matrix(rows, cols, [Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                                for _ in range(rows * cols)])
        u = [rng.randint(-3, 3) for _ in range(cols)]
        v = m.matvec(u)
        w = in_image(m, v)
        assert w is not None
        assert m.matvec(w) == v


def test_backends_bit_identical():
    rng = random.Random(11)
    backends = [_kernels_py]
    if kernel_backend() == "cython":
        from oridial import _kernels

        backends.append(_kernels)
    for trial in range(25):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        data = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        results = []
        for kern in backends:
            copy = [list(r) for r in data]
            pivots = kern.ff_row_echelon(copy, cols)
            results.append((pivots, copy))
        assert all(r == results[0] for r in results)


def test_rational_serialization():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(-7) == Fraction(-7)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in ("1/0", "x", None, 1.5, True):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_matrix_shape_validation():
    with pytest.raises(ShapeMismatchError):
        Matrix(2, 2, [1, 2, 3])
    with pytest.raises(ShapeMismatchError):
        Matrix.from_rows([[1, 2], [3]])
    with pytest.raises(ShapeMismatchError):
        Matrix.identity(2).mul(Matrix.identity(3))

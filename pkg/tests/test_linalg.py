from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hochmorita.errors import DimensionError
from hochmorita.linalg import (GF, QQ, Matrix, Span, Subspace, kernel_from_images,
                               kernel_vectors, left_kernel_vectors, rank, solve_linear)

small = st.integers(-4, 4)


def dense_matrices(max_rows=5, max_cols=5, entries=small):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def rank_mod_p(rows, p):
    """Plain Gaussian elimination mod p, independent of the package."""
    rows = [[x % p for x in r] for r in rows]
    rk = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], -1, p)
        rows[rk] = [x * inv % p for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


class TestField:
    def test_rational_parsing(self):
        assert QQ("3/4") == Fraction(3, 4)
        assert QQ(" -2 ") == -2

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            QQ(0.5)

    def test_prime_field_denominators(self):
        F = GF(5)
        assert F("1/2") == 3
        with pytest.raises(ZeroDivisionError):
            GF(3)("1/3")

    def test_non_prime_rejected(self):
        with pytest.raises(ValueError):
            GF(6)

    def test_format_round_trip(self):
        for x in ("0", "7", "-3/8"):
            assert QQ(QQ.format(QQ(x))) == QQ(x)
        assert GF(7).format(-1) == 6


@given(dense_matrices())
def test_rank_matches_sympy(rows):
    assert rank(Matrix.from_dense(QQ, rows)) == sympy.Matrix(rows).rank()


@given(dense_matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_matches_elimination(rows, p):
    assert rank(Matrix.from_dense(GF(p), rows)) == rank_mod_p(rows, p)


@given(dense_matrices(), st.sampled_from([None, 2, 3]))
def test_rank_nullity(rows, p):
    F = QQ if p is None else GF(p)
    m = Matrix.from_dense(F, rows)
    ker = kernel_vectors(m)
    assert rank(m) + len(ker) == m.ncols
    for v in ker:
        assert not m.transpose().apply_sparse(v)
    left = left_kernel_vectors(m)
    assert rank(m) + len(left) == m.nrows
    for v in left:
        assert not m.apply_sparse(v)


@given(dense_matrices(), st.sampled_from([None, 3]))
def test_kernel_from_images_matches_kernel(rows, p):
    F = QQ if p is None else GF(p)
    m = Matrix.from_dense(F, rows)
    rels = kernel_from_images(m.rows, F)
    assert len(rels) == m.nrows - rank(m)
    for r in rels:
        assert not m.apply_sparse(r)


@given(dense_matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_linear_consistent_systems(rows, x):
    m = Matrix.from_dense(QQ, rows)
    x = [QQ(t) for t in x[:m.ncols]]
    b = m.transpose().apply(x)   # m @ x
    sol = solve_linear(m, b)
    assert sol is not None
    assert m.transpose().apply(sol) == b


def test_solve_linear_inconsistent():
    m = Matrix.from_dense(QQ, [[1, 1], [2, 2]])
    assert solve_linear(m, [1, 3]) is None
    with pytest.raises(DimensionError):
        solve_linear(m, [1])


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6))
def test_span_coordinates(vectors):
    vecs = [{i: QQ(x) for i, x in enumerate(v) if x} for v in vectors]
    span = Span(QQ, 4, vecs)
    sub = Subspace(QQ, vecs)
    assert span.dim == sub.dim == sympy.Matrix(vectors).rank()
    for v in vecs:
        assert v in span and v in sub
        assert span.element(span.coords(v)) == v


def test_subspace_complement():
    sub = Subspace(QQ, [{0: QQ(1), 1: QQ(1)}])
    comp = sub.complement_indices(3)
    assert len(comp) == 2
    full = sub.copy()
    for i in comp:
        assert full.add({i: QQ(1)})
    assert full.dim == 3


def test_matrix_shape_errors():
    a = Matrix.from_dense(QQ, [[1, 2]])
    with pytest.raises(DimensionError):
        a @ a
    with pytest.raises(DimensionError):
        Matrix.from_dense(QQ, [[1, 2], [3]])

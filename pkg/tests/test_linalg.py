from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qrt.linalg import GF, QQ, Field, Matrix, Subspace

FIELDS = [QQ, GF(2), GF(3), GF(101)]


@st.composite
def matrices(draw, field=None, max_dim=5):
    field = field or draw(st.sampled_from(FIELDS))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    entries = st.integers(-4, 4) if field.p is None else st.integers(0, field.p - 1)
    rows = [[field(draw(entries)) for _ in range(c)] for _ in range(r)]
    return Matrix(field, rows, c)


@given(matrices())
def test_rank_nullity(m):
    assert m.rank() + m.kernel().dim == m.nrows


@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in m.kernel().vectors:
        assert not any(m.vecmul(v))


@given(matrices())
def test_rank_of_transpose(m):
    assert m.rank() == m.T.rank()


@given(matrices(), st.data())
def test_solve_recovers_a_preimage(m, data):
    f = m.field
    x = [f(data.draw(st.integers(0, 6))) for _ in range(m.nrows)]
    b = m.vecmul(x)
    sol = m.solve(b)
    assert sol is not None
    assert tuple(m.vecmul(sol)) == tuple(b)


@settings(max_examples=60)
@given(matrices(max_dim=4))
def test_inverse_of_invertible(m):
    if m.nrows != m.ncols or not m.is_invertible():
        return
    assert m @ m.inverse() == Matrix.identity(m.field, m.nrows)


@given(matrices(), matrices())
def test_matmul_associative_with_identity(a, b):
    i = Matrix.identity(a.field, a.ncols)
    assert a @ i == a


@given(st.sampled_from(FIELDS), st.data())
def test_subspace_sum_and_intersection_dimensions(field, data):
    n = data.draw(st.integers(1, 5))
    entries = st.integers(0, 5)

    def vecs():
        k = data.draw(st.integers(0, 4))
        return [[field(data.draw(entries)) for _ in range(n)] for _ in range(k)]

    u = Subspace.span(field, n, vecs())
    v = Subspace.span(field, n, vecs())
    assert u.sum(v).dim + u.intersection(v).dim == u.dim + v.dim
    for w in u.vectors:
        assert u.contains(w)
        coords = u.coordinates(w)
        rebuilt = [sum(c * b[j] for c, b in zip(coords, u.vectors)) for j in range(n)]
        assert [field(x) for x in rebuilt] == list(w)


def test_prime_field_arithmetic():
    f = GF(7)
    assert f(Fraction(1, 3)) == 5
    assert f("-1") == 6
    assert f.inv(3) * 3 % 7 == 1


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        Field(9)


def test_field_json_round_trip():
    for f in FIELDS:
        assert Field.from_json(f.to_json()) == f


def test_rational_exactness():
    m = Matrix(QQ, [[QQ("1/3"), 1], [1, 3]], 2)
    assert m.rank() == 1

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from qrt.errors import InputError, NotSplit, RelationViolated
from qrt.linalg import GF, QQ, Matrix
from qrt.modules import (decompose, direct_sum, dual, hom_dim, hom_space, injective, is_isomorphic, picture,
                         projective, radical_layers, simple, socle, top, trace)

from conftest import kronecker, linear_a, rep, two_cycle

F3 = GF(3)


@st.composite
def kronecker_modules(draw, field=F3):
    a = kronecker(field)
    d1, d2 = draw(st.integers(0, 3)), draw(st.integers(0, 3))
    entry = st.integers(0, field.p - 1)
    maps = {name: [[draw(entry) for _ in range(d2)] for _ in range(d1)] for name in ("x", "y")}
    return rep(a, {"1": d1, "2": d2}, maps)


def test_projectives_of_linear_a3():
    a = linear_a(3)
    assert [projective(a, i).dims for i in range(3)] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert [injective(a, i).dims for i in range(3)] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]


def test_pictures(corpus):
    for name, m in corpus.C_modules.items():
        assert picture(m) == name


def test_relations_are_enforced(corpus):
    with pytest.raises(RelationViolated):
        rep(corpus.C, {"1": 1, "2": 1, "3": 1, "4": 1},
            {"alpha": [["1"]], "beta": [["1"]], "gamma": [["1"]]})


def test_bad_shape_rejected():
    with pytest.raises(InputError):
        rep(linear_a(2), {"1": 1, "2": 1}, {"a1": [["1", "1"]]})


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(kronecker_modules())
def test_hom_from_projective_is_vertex_space(m):
    a = m.algebra
    for i in range(2):
        assert hom_dim(projective(a, i), m) == m.dims[i]
        assert hom_dim(m, injective(a, i)) == m.dims[i]


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(kronecker_modules())
def test_decomposition_recombines(m):
    if m.dim == 0:
        return
    try:
        d = decompose(m, 1)
    except NotSplit:
        assume(False)
    pieces = [p for p, _, _ in d.pieces]
    assert sum(p.dim for p in pieces) == m.dim
    total, _, _ = direct_sum(pieces)
    assert is_isomorphic(total, m)
    for p in pieces:
        assert decompose(p, 2).total == 1


def test_non_split_brick_raises():
    # x = 1, y = a matrix with irreducible characteristic polynomial t^2 + 1 over GF(3)
    a = kronecker(F3)
    m = rep(a, {"1": 2, "2": 2}, {"x": [[1, 0], [0, 1]], "y": [[0, 1], [2, 0]]})
    with pytest.raises(NotSplit):
        decompose(m)


@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(kronecker_modules())
def test_double_dual(m):
    assert is_isomorphic(dual(dual(m)), m)


@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(kronecker_modules(), kronecker_modules())
def test_hom_maps_are_module_maps(m, n):
    for f in hom_space(m, n):
        f.check()


def test_hom_between_uniserials_of_C(corpus):
    mods = corpus.C_modules
    # maps between uniserials over a linear quiver: top of source must meet the target's image
    assert hom_dim(mods["1/2/3"], mods["1/2"]) == 1
    assert hom_dim(mods["1/2"], mods["1/2/3"]) == 0
    assert hom_dim(mods["3"], mods["1/2/3"]) == 1   # the socle
    assert hom_dim(mods["2/3"], mods["1/2/3"]) == 1
    assert hom_dim(mods["1/2/3"], mods["2/3"]) == 0
    assert hom_dim(mods["3/4"], mods["2/3/4"]) == 1


def test_top_socle_layers(corpus):
    m = corpus.C_modules["2/3/4/5"]
    assert top(m)[0].dims == (0, 1, 0, 0, 0)
    assert socle(m)[0].dims == (0, 0, 0, 0, 1)
    assert len(radical_layers(m)) == 4


def test_trace_of_simple_projective():
    a = linear_a(3)
    p3 = projective(a, 2)
    sub, inc = trace(p3, projective(a, 0))
    assert sub.dims == (0, 0, 1)
    assert inc.is_injective()


def test_isomorphism_detects_distinct_kronecker_bricks():
    a = kronecker(QQ)
    m1 = rep(a, {"1": 1, "2": 1}, {"x": [["1"]], "y": [["0"]]})
    m2 = rep(a, {"1": 1, "2": 1}, {"x": [["0"]], "y": [["1"]]})
    m3 = rep(a, {"1": 1, "2": 1}, {"x": [["2"]], "y": [["0"]]})
    assert not is_isomorphic(m1, m2)
    assert is_isomorphic(m1, m3)


def test_two_cycle_simples():
    a = two_cycle(GF(2))
    assert [simple(a, i).dims for i in range(2)] == [(1, 0), (0, 1)]
    assert projective(a, 0).dims == (1, 1)

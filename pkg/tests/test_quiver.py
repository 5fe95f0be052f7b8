import pytest

from qrt.errors import InputError
from qrt.linalg import GF, QQ
from qrt.quiver import Quiver, Relation, build_bound_quiver_basis

from conftest import bound_quiver_algebra, kronecker, linear_a, two_cycle


def _count_paths(n_vertices, arrows):
    """Number of paths (including trivial ones) in an acyclic quiver, by brute force."""
    total = n_vertices
    frontier = [[a] for a in arrows]
    while frontier:
        total += len(frontier)
        frontier = [p + [a] for p in frontier for a in arrows if a[1] == p[-1][2]]
    return total


def test_free_acyclic_basis_is_all_paths():
    arrows = [("a", "2", "1"), ("b", "3", "2"), ("c", "4", "3"), ("d", "5", "3")]
    a = bound_quiver_algebra(["1", "2", "3", "4", "5"], arrows)
    assert a.dim == _count_paths(5, arrows)


def test_linear_a_dimensions():
    assert linear_a(3).dim == 6
    # a1 a2 = 0 also kills a1 a2 a3
    assert linear_a(4, zero_paths=((1, 2),)).dim == 8


def test_kronecker_and_two_cycle():
    assert kronecker().dim == 4
    assert two_cycle(GF(2)).dim == 4


def test_commutativity_relation():
    a = bound_quiver_algebra(["1", "2", "3", "4"],
                             [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
                             [[("1", ["a", "b"]), ("-1", ["c", "d"])]])
    assert a.dim == 4 + 4 + 1


def test_corpus_C_has_dimension_13(corpus):
    assert corpus.C.dim == 13


def test_non_admissible_rejected():
    q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(Exception):
        build_bound_quiver_basis(q, [], QQ, length_cap=8)


@pytest.mark.parametrize("bad", [
    lambda: Quiver(["1", "1"], []),
    lambda: Quiver(["1"], [("a", "1", "2")]),
    lambda: Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")]),
])
def test_bad_quivers(bad):
    with pytest.raises(InputError):
        bad()


def test_relation_must_be_parallel():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    with pytest.raises(InputError):
        Relation.make(q, [("1", ["a", "b"]), ("1", ["a"])], QQ)

from qrt.algebra import ext_quiver, opposite, regular_bimodule, trivial_extension
from qrt.linalg import GF, Matrix, QQ

from conftest import kronecker, linear_a, two_cycle


def test_axioms_hold_for_small_algebras():
    for a in (linear_a(3), kronecker(GF(3)), two_cycle(GF(2))):
        a.check_axioms()


def test_opposite_is_an_involution():
    a = linear_a(3)
    assert opposite(opposite(a)) is a
    op = opposite(a)
    for i in range(a.dim):
        for j in range(a.dim):
            assert op.products[i][j] == a.products[j][i]


def test_ext_quiver_recovers_presentation(corpus):
    q = ext_quiver(corpus.C)
    assert sorted((x.source, x.target) for x in q.arrows) == \
        sorted((x.source, x.target) for x in corpus.C.presentation.quiver.arrows)


def test_kronecker_has_double_arrow():
    q = ext_quiver(kronecker())
    assert [(x.source, x.target) for x in q.arrows] == [("1", "2"), ("1", "2")]


def test_trivial_extension_by_regular_bimodule():
    a = linear_a(2)
    data = trivial_extension(a, regular_bimodule(a))
    b = data.B
    assert b.dim == 2 * a.dim
    b.check_axioms()
    # pi after sigma is the identity on A
    comp = data.sigma.matrix @ data.pi.matrix
    assert comp == Matrix.identity(QQ, a.dim)


def test_cartan_matrix_of_C(corpus):
    c = corpus.C
    n = len(c.vertices)
    cartan = [[sum(1 for b in range(c.dim) if c.left_vertex[b] == i and c.right_vertex[b] == j)
               for j in range(n)] for i in range(n)]
    assert [sum(r) for r in cartan] == [3, 4, 3, 2, 1]

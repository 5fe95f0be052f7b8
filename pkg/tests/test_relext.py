import pytest

from qrt.algebra import ext_quiver
from qrt.errors import GlobalDimensionTooLarge
from qrt.homological import cosyzygy, tau_inverse
from qrt.modules import decompose, dual_regular, hom_dim, is_isomorphic, picture, regular
from qrt.relext import (build_relation_extension, coinduct, dual_tensor_E, embed, hom_from_E, induct,
                        sigma_restriction, tensor_E, verify_ses)

from conftest import linear_a


def test_dimensions(bundle):
    assert (bundle.C.dim, bundle.E.dim, bundle.B.dim) == (13, 3, 16)
    assert bundle.E.labels == ("E[3>1]", "E[4>1]", "E[4>2]")


def test_quiver_gains_one_arrow(bundle):
    arrows_c = sorted((x.source, x.target) for x in ext_quiver(bundle.C).arrows)
    arrows_b = sorted((x.source, x.target) for x in ext_quiver(bundle.B).arrows)
    assert sorted(arrows_c + [("4", "1")]) == arrows_b


def test_E_as_right_module(bundle):
    e = bundle.E_as_right_module
    assert sorted(picture(p) for p, _ in decompose(e).summands) == ["1", "1/2"]
    assert is_isomorphic(e, tau_inverse(cosyzygy(regular(bundle.C))))


def test_independent_presentation_of_B(built):
    phi = built.to_constructed
    assert phi.matrix.is_invertible()
    phi.check()


def test_induction_of_regular_and_coinduction_of_dual(bundle):
    assert is_isomorphic(induct(bundle, regular(bundle.C)), regular(bundle.B))
    assert is_isomorphic(coinduct(bundle, dual_regular(bundle.C)), dual_regular(bundle.B))


def test_no_maps_from_E_to_C(bundle):
    assert hom_from_E(bundle, regular(bundle.C)).dim == 0


def test_induction_adjunction(built, bundle):
    """Hom_B(M (x)_C B, N) = Hom_C(M, N restricted along sigma)."""
    b_mods = [built.transport(n) for n in built.corpus.B_modules.values()]
    for m in built.corpus.C_modules.values():
        ind = induct(bundle, m)
        for n in b_mods[::3]:
            assert hom_dim(ind, n) == hom_dim(m, sigma_restriction(bundle, n))


def test_coinduction_adjunction(built, bundle):
    b_mods = [built.transport(n) for n in built.corpus.B_modules.values()]
    for m in built.corpus.C_modules.values():
        co = coinduct(bundle, m)
        for n in b_mods[1::3]:
            assert hom_dim(n, co) == hom_dim(sigma_restriction(bundle, n), m)


def test_embed_then_restrict_is_identity(bundle, corpus):
    for m in corpus.C_modules.values():
        assert is_isomorphic(sigma_restriction(bundle, embed(bundle, m)), m)


def test_exact_sequences(bundle, corpus):
    for m in corpus.C_modules.values():
        rep = verify_ses(bundle, m)
        assert rep.ok, rep


def test_induction_restricts_to_m_plus_m_tensor_E(bundle, corpus):
    for m in corpus.C_modules.values():
        lhs = sigma_restriction(bundle, induct(bundle, m))
        assert lhs.dims == tuple(x + y for x, y in zip(m.dims, tensor_E(bundle, m).dims))
        rhs = sigma_restriction(bundle, coinduct(bundle, m))
        assert rhs.dims == tuple(x + y for x, y in zip(m.dims, dual_tensor_E(bundle, m).dims))


def test_hereditary_algebra_has_trivial_extension():
    c = linear_a(3)
    bundle = build_relation_extension(c)
    assert bundle.E.dim == 0
    assert bundle.B.dim == c.dim


def test_a3_with_zero_relation_gives_three_cycle():
    c = linear_a(3, zero_paths=((1, 2),))
    bundle = build_relation_extension(c)
    assert bundle.E.dim == 1
    arrows = sorted((x.source, x.target) for x in ext_quiver(bundle.B).arrows)
    assert arrows == [("1", "2"), ("2", "3"), ("3", "1")]


def test_global_dimension_three_is_rejected():
    c = linear_a(4, zero_paths=((1, 2), (2, 3)))
    with pytest.raises(GlobalDimensionTooLarge):
        build_relation_extension(c)

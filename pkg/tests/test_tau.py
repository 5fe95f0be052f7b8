import pytest

from qrt.errors import NotPartialTilting
from qrt.modules import direct_sum, dual_regular, injective, projective, regular, simple, zero_module
from qrt.tau import (gen_contains, hom_to_gen_vanishes, in_add, is_rigid, is_tau_rigid,
                     minimal_left_add_approximation, split_check, tau_profile, tilting_sequence,
                     torsion_pair_membership)

from conftest import linear_a


def _sum(corpus, names):
    return direct_sum([corpus.C_modules[n] for n in names])[0]


def test_indecomposables_over_a3_are_rigid():
    a = linear_a(3)
    for i in range(3):
        for m in (simple(a, i), projective(a, i), injective(a, i)):
            assert is_rigid(m) and is_tau_rigid(m)


def test_regular_module_is_tilting(corpus):
    prof = tau_profile(regular(corpus.C))
    assert prof.is_tilting and prof.is_tau_tilting and prof.is_faithful
    assert prof.indecomposable_summand_count == 5


def test_injective_cogenerator_is_rigid_and_faithful(corpus):
    prof = tau_profile(dual_regular(corpus.C))
    assert prof.is_rigid and prof.is_faithful
    assert prof.indecomposable_summand_count == 5


def test_not_tau_rigid_sum(corpus):
    # 3/4 and 4/5 = tau(3/4): Hom(4/5, 4/5) != 0
    m = _sum(corpus, ["3/4", "4/5"])
    assert not is_tau_rigid(m)


def test_zero_module_profile(corpus):
    prof = tau_profile(zero_module(corpus.C))
    assert prof.is_tau_rigid and not prof.is_tilting
    assert prof.indecomposable_summand_count == 0


def test_example_one_profile(corpus):
    prof = tau_profile(corpus.example_module("example_1"))
    assert prof.is_partial_tilting and not prof.is_tilting
    assert prof.indecomposable_summand_count == 2


def test_gen_contains(corpus):
    mods = corpus.C_modules
    assert gen_contains(mods["1/2/3"], mods["1/2"])
    assert not gen_contains(mods["1/2"], mods["1/2/3"])
    assert gen_contains(mods["3/4"], zero_module(corpus.C))


def test_hom_to_gen_witness(corpus):
    mods = corpus.C_modules
    res = hom_to_gen_vanishes(mods["3"], mods["2/3"])
    assert not res
    assert res.witness is not None and not res.witness.is_zero()


def test_minimal_approximation_of_simple():
    a = linear_a(3)
    t = direct_sum([projective(a, 0), injective(a, 2)])[0]
    appr = minimal_left_add_approximation(projective(a, 1), t)
    assert in_add(appr.target, t)
    # P2 -> P1 is the only minimal one: P2 = 2/3 sits inside 1/2/3
    assert appr.target.dims == (1, 1, 1)


def test_tilting_sequences(corpus):
    t = corpus.example_module("example_4")
    seq = tilting_sequence(t)
    assert seq["exists"]
    assert tilting_sequence(regular(corpus.C))["exists"]


def test_torsion_pair(corpus):
    t = corpus.example_module("example_4")
    mods = corpus.C_modules
    mem = torsion_pair_membership(t, mods["4"])
    assert mem["in_F"] and not mem["in_T"]
    assert split_check(t, list(mods.values())).split


def test_torsion_pair_needs_partial_tilting(corpus):
    m = _sum(corpus, ["3/4", "4/5"])
    with pytest.raises(NotPartialTilting):
        torsion_pair_membership(m, m)

import json

import pytest

from qrt.checks import CHECKS, NEEDS_TILTED, ar_formula_violations, check, find_monomorphism, module_digest
from qrt.errors import AlgebraMismatch, UnknownCheck
from qrt.modules import direct_sum

REPORT_KEYS = {"check", "inputs", "hypotheses", "user_asserted", "conclusions", "consistent", "witnesses", "notes"}


def test_every_check_on_every_corpus_module(bundle, corpus):
    for m in corpus.C_modules.values():
        for name in CHECKS:
            rep = check(name, bundle, m, assert_tilted=True)
            assert rep.consistent, rep.to_json()


def test_checks_on_pairs(bundle, corpus):
    names = list(corpus.C_modules)
    for i, x in enumerate(names):
        for y in names[i::4]:
            m = direct_sum([corpus.C_modules[x], corpus.C_modules[y]])[0]
            for name in CHECKS:
                assert check(name, bundle, m, assert_tilted=True).consistent, (x, y, name)


@pytest.mark.parametrize("example", ["example_1", "example_2", "example_3", "example_4"])
def test_example_checks(bundle, corpus, example):
    ex = next(e for e in corpus.examples if e["name"] == example)
    rep = check(ex["check"], bundle, corpus.example_module(example))
    assert rep.consistent
    assert all(rep.hypotheses.values())


def test_report_shape(bundle, corpus):
    rep = check("partial_tilt_iff", bundle, corpus.example_module("example_2")).to_json()
    assert set(rep) == REPORT_KEYS
    json.dumps(rep)
    assert rep["conclusions"] == {"tau_B_rigid": True, "hom_tic_gen_vanishes": True}


def test_tilted_flag_is_recorded(bundle, corpus):
    m = corpus.C_modules["3/4"]
    for name in NEEDS_TILTED:
        assert check(name, bundle, m, assert_tilted=True).user_asserted == {"C_tilted": True}
        assert check(name, bundle, m).user_asserted == {"C_tilted": False}


def test_unknown_check(bundle, corpus):
    with pytest.raises(UnknownCheck):
        check("no_such_check", bundle, corpus.C_modules["1"])


def test_wrong_algebra(built, bundle):
    n = next(iter(built.corpus.B_modules.values()))
    with pytest.raises(AlgebraMismatch):
        check("tau_preserved", bundle, n)


def test_digest_is_stable(corpus):
    m = corpus.C_modules["2/3/4"]
    assert module_digest(m) == module_digest(direct_sum([m])[0])


def test_monomorphism_search(corpus):
    mods = corpus.C_modules
    f = find_monomorphism(mods["3/4"], mods["2/3/4"])
    assert f is not None and f.is_injective()
    assert find_monomorphism(mods["2/3/4"], mods["3/4"]) is None


def test_ar_formula_on_both_corpora(built):
    assert ar_formula_violations(list(built.corpus.C_modules.values())) == []
    b_mods = [built.transport(n) for n in built.corpus.B_modules.values()]
    assert ar_formula_violations(b_mods) == []

import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from qrt.corpus import corpus_dir
from qrt.formats import load_algebra
from qrt.linalg import GF
from qrt.tau import ext_to_gen_vanishes, hom_to_gen_vanishes

from conftest import kronecker, linear_a, two_cycle
from gen_oracle import (all_subspaces, ext_to_gen_vanishes_oracle, hom_to_gen_vanishes_oracle,
                        random_modules)

PER_ALGEBRA = 40


def _algebras():
    out = {}
    for p in (2, 3):
        f = GF(p)
        out[f"A3/F{p}"] = lambda f=f: linear_a(3, f)
        out[f"kronecker/F{p}"] = lambda f=f: kronecker(f)
        out[f"two_cycle/F{p}"] = lambda f=f: two_cycle(f)
    out["C/F2"] = lambda: load_algebra(corpus_dir() / "C.json", GF(2))
    return out


ALGEBRAS = _algebras()


def instances(name, seed=0, count=PER_ALGEBRA):
    a = ALGEBRAS[name]()
    rng = random.Random(f"{name}:{seed}")
    pool = random_modules(a, rng, 14)
    small = [m for m in pool if m.dim <= 3]
    return [(rng.choice(pool), rng.choice(small)) for _ in range(count)]


def disagreements(cases):
    bad = []
    for n, m in cases:
        if bool(hom_to_gen_vanishes(n, m)) != hom_to_gen_vanishes_oracle(n, m):
            bad.append(("hom", n.dims, m.dims))
        if ext_to_gen_vanishes(n, m) != ext_to_gen_vanishes_oracle(n, m):
            bad.append(("ext", n.dims, m.dims))
    return bad


def test_subspace_enumeration_counts():
    # Gaussian binomials: F2^3 has 1 + 7 + 7 + 1 subspaces, F3^2 has 1 + 4 + 1
    assert len(all_subspaces(GF(2), 3)) == 16
    assert len(all_subspaces(GF(3), 2)) == 6


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_gen_predicates_match_exhaustive_enumeration(name):
    assert disagreements(instances(name)) == []


def test_instance_budget():
    assert len(ALGEBRAS) * PER_ALGEBRA >= 200


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(1, 10 ** 6))
def test_gen_predicates_random_seeds(name, seed):
    assert disagreements(instances(name, seed, 5)) == []

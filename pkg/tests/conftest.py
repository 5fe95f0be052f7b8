from functools import lru_cache

import pytest

from qrt.algebra import from_bound_quiver
from qrt.corpus import build_corpus
from qrt.linalg import GF, QQ
from qrt.modules import from_representation
from qrt.quiver import Quiver, Relation, build_bound_quiver_basis


def bound_quiver_algebra(vertices, arrows, relations=(), field=QQ):
    """``relations`` is a list of term lists ``[(coeff, [arrow, ...]), ...]``."""
    q = Quiver(vertices, arrows)
    rels = [Relation.make(q, terms, field) for terms in relations]
    return from_bound_quiver(build_bound_quiver_basis(q, rels, field))


@lru_cache(maxsize=None)
def linear_a(n, field=QQ, zero_paths=()):
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    rels = [[("1", [f"a{i}" for i in path])] for path in zero_paths]
    return bound_quiver_algebra(vertices, arrows, rels, field)


@lru_cache(maxsize=None)
def kronecker(field=QQ):
    return bound_quiver_algebra(["1", "2"], [("x", "1", "2"), ("y", "1", "2")], (), field)


@lru_cache(maxsize=None)
def two_cycle(field=QQ):
    """The 2-cycle with all paths of length two set to zero."""
    return bound_quiver_algebra(["1", "2"], [("a", "1", "2"), ("b", "2", "1")],
                                [[("1", ["a", "b"])], [("1", ["b", "a"])]], field)


def rep(a, spaces, maps):
    return from_representation(a, spaces, maps)


@pytest.fixture(scope="session")
def built():
    return build_corpus(QQ, 0)


@pytest.fixture(scope="session")
def bundle(built):
    return built.bundle


@pytest.fixture(scope="session")
def corpus(built):
    return built.corpus


@pytest.fixture(scope="session")
def gf101():
    return GF(101)


# --------------------------------------------------------- acceptance summary
_CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """``criterion(n, ok)`` records and prints one acceptance verdict."""
    def record(number: int, ok: bool):
        _CRITERIA[number] = ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if _CRITERIA[number] else 'FAIL'}")

"""Exhaustive Gen-class oracle over small prime fields.

``Gen m`` is approximated by every quotient of ``m`` and ``m + m`` whose
total dimension is at most six; submodules are enumerated vertex by vertex
from all subspaces of each vertex space.
"""
import itertools
import random

from qrt.homological import ext_dim
from qrt.linalg import Subspace
from qrt.modules import direct_sum, hom_dim, projective, quotient, submodule_generated

MAX_TOTAL = 6


def all_subspaces(field, n):
    """Every subspace of ``field^n``, from reduced row echelon forms."""
    elems = list(field.elements())
    out = []
    for r in range(n + 1):
        for pivots in itertools.combinations(range(n), r):
            free = [(i, j) for i in range(r) for j in range(pivots[i] + 1, n) if j not in pivots]
            for values in itertools.product(elems, repeat=len(free)):
                rows = [[0] * n for _ in range(r)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                out.append(Subspace.span(field, n, rows))
    return out


def _closed(m, subs):
    a = m.algebra
    for g in a.generators:
        i, j = a.left_vertex[g], a.right_vertex[g]
        for u in subs[i].vectors:
            if not subs[j].contains(m.blocks[g].vecmul(u)):
                return False
    return True


def submodules(m):
    per_vertex = [all_subspaces(m.field, d) for d in m.dims]
    for choice in itertools.product(*per_vertex):
        if _closed(m, choice):
            yield list(choice)


def quotients_of_powers(m, max_power=2):
    seen = set()
    for d in range(1, max_power + 1):
        if d * m.dim > MAX_TOTAL:
            break
        power = direct_sum([m] * d)[0]
        for subs in submodules(power):
            q, _ = quotient(power, subs)
            if q.dim == 0:
                continue
            key = (q.dims, tuple(tuple(map(tuple, b.rows)) for b in q.blocks))
            if key not in seen:
                seen.add(key)
                yield q


def hom_to_gen_vanishes_oracle(n, m):
    return all(hom_dim(n, q) == 0 for q in quotients_of_powers(m))


def ext_to_gen_vanishes_oracle(y, x):
    return all(ext_dim(y, q, 1) == 0 for q in quotients_of_powers(x))


def random_modules(a, rng, count, max_dim=MAX_TOTAL):
    """Quotients of sums of one or two projectives by randomly generated submodules."""
    f = a.field
    n = len(a.vertices)
    mods = []
    while len(mods) < count:
        k = rng.choice([1, 1, 2])
        p = direct_sum([projective(a, rng.randrange(n)) for _ in range(k)])[0]
        gens = [[f(rng.randrange(f.p)) for _ in range(p.dim)] for _ in range(rng.randrange(3))]
        sub, inc = submodule_generated(p, gens) if gens else (None, None)
        if sub is None:
            q = p
        else:
            q, _ = quotient(p, inc.image_subspaces())
        if 0 < q.dim <= max_dim:
            mods.append(q)
    return mods

"""Projective covers, resolutions, Ext, the Nakayama functor and AR translates.

Maps out of a sum of indecomposable projectives ``P = P_{v_1} + ... + P_{v_r}``
are determined by where the generators ``e_{v_k}`` go, so ``Hom(P, N)`` is
identified with ``N e_{v_1} + ... + N e_{v_r}`` throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import FDAlgebra
from .errors import CapExceeded, ExactnessFailure, InvariantViolation, NotProjective
from .linalg import Matrix, Subspace, mat_comb
from .modules import (ModuleMap, RightModule, direct_sum, dual, hom_space, injective, projective,
                      projective_basis, radical_subspaces, same_algebra, zero_module)

INF = math.inf


class ProjectiveSum:
    """``P_{v_1} + ... + P_{v_r}`` with bookkeeping for generator positions."""

    def __init__(self, algebra: FDAlgebra, vertices: Sequence[int]):
        self.algebra = algebra
        self.vertices = tuple(vertices)
        nv = len(algebra.vertices)
        if self.vertices:
            self.module = direct_sum([projective(algebra, v) for v in self.vertices])[0]
        else:
            self.module = zero_module(algebra)
        self.module._cache["projective_sum"] = self
        self.local = {}
        for v in set(self.vertices):
            by_vertex = {}
            for b in projective_basis(algebra, v):
                lst = by_vertex.setdefault(algebra.right_vertex[b], [])
                lst.append(b)
            self.local[v] = by_vertex
        self.offsets = []
        running = [0] * nv
        for v in self.vertices:
            self.offsets.append(tuple(running))
            for j in range(nv):
                running[j] += len(self.local[v].get(j, ()))

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        labels = self.algebra.vertices
        return "P(" + " + ".join(labels[v] for v in self.vertices) + ")"

    def generator_index(self, k: int) -> int:
        """Index of the generator of summand ``k`` inside block ``v_k``."""
        v = self.vertices[k]
        e = self.algebra.idempotent_basis[v]
        return self.offsets[k][v] + self.local[v][v].index(e)

    def element_vector(self, k: int, x: Sequence, j: int) -> list:
        """Block-``j`` vector of the element ``x`` (in ``e_{v_k} A e_j``) of summand ``k``."""
        v = self.vertices[k]
        out = [0] * self.module.dims[j]
        for pos, b in enumerate(self.local[v].get(j, ())):
            out[self.offsets[k][j] + pos] = x[b]
        return out

    def segment_as_element(self, k: int, vec: Sequence, j: int) -> tuple:
        """Read summand ``k``'s part of a block-``j`` vector as an algebra element."""
        v = self.vertices[k]
        x = [0] * self.algebra.dim
        for pos, b in enumerate(self.local[v].get(j, ())):
            x[b] = vec[self.offsets[k][j] + pos]
        return tuple(x)


def hom_from_projective(p: ProjectiveSum, target: RightModule, images: Sequence[Sequence]) -> ModuleMap:
    """The map sending generator ``k`` to ``images[k]`` (a vector of ``target e_{v_k}``)."""
    a = p.algebra
    nv = len(a.vertices)
    f = a.field
    blocks = []
    for j in range(nv):
        rows = []
        for k, v in enumerate(p.vertices):
            y = images[k]
            for b in p.local[v].get(j, ()):
                rows.append(target.blocks[b].vecmul(y))
        blocks.append(Matrix(f, rows, target.dims[j], _trusted=True) if rows
                      else Matrix.zeros(f, 0, target.dims[j]))
    return ModuleMap(p.module, target, blocks, check=None)


def generator_images(f: ModuleMap, src: ProjectiveSum, tgt: ProjectiveSum) -> list:
    """``a[m][l]``: the component in summand ``m`` of ``f(generator l)``, as algebra elements."""
    out = [[None] * len(src) for _ in range(len(tgt))]
    for l, v in enumerate(src.vertices):
        row = f.blocks[v].rows[src.generator_index(l)]
        for m in range(len(tgt)):
            out[m][l] = tgt.segment_as_element(m, row, v)
    return out


def coboundary(coeffs: list, src: ProjectiveSum, tgt: ProjectiveSum, n: RightModule) -> Matrix:
    """Matrix of ``Hom(tgt, N) -> Hom(src, N)``, precomposition with the map whose
    generator images are ``coeffs`` (see :func:`generator_images`)."""
    f = n.field
    col_dims = [n.dims[v] for v in src.vertices]
    ncols = sum(col_dims)
    rows = []
    for m, w in enumerate(tgt.vertices):
        blocks = [n.action_between(coeffs[m][l], w, v) for l, v in enumerate(src.vertices)]
        for r in range(n.dims[w]):
            row = []
            for blk in blocks:
                row.extend(blk.rows[r])
            rows.append(tuple(row))
    return Matrix(f, rows, ncols, _trusted=True) if rows else Matrix.zeros(f, 0, ncols)


# ------------------------------------------------------------------ covers
def projective_cover(m: RightModule):
    """``(P, d0)`` with ``d0: P.module -> m`` a projective cover."""
    hit = m._cache.get("cover")
    if hit is not None:
        return hit
    a = m.algebra
    rad = radical_subspaces(m)
    vertices, images = [], []
    for i, sub in enumerate(rad):
        for c in sub.complement_indices():
            y = [0] * m.dims[i]
            y[c] = 1
            vertices.append(i)
            images.append(y)
    p = ProjectiveSum(a, vertices)
    d0 = hom_from_projective(p, m, images)
    if d0.rank() != m.dim:
        raise InvariantViolation("projective cover is not surjective")
    m._cache["cover"] = (p, d0)
    return p, d0


def injective_envelope(m: RightModule):
    """``(I, j)`` with ``j: m -> I`` an injective envelope, by duality."""
    hit = m._cache.get("envelope")
    if hit is not None:
        return hit
    p, d0 = projective_cover(dual(m))
    j = d0.dual()
    m._cache["envelope"] = (j.target, j)
    return j.target, j


def syzygy(m: RightModule) -> RightModule:
    return syzygy_with_inclusion(m)[0]


def syzygy_with_inclusion(m: RightModule):
    hit = m._cache.get("syzygy")
    if hit is None:
        _, d0 = projective_cover(m)
        hit = d0.kernel()
        m._cache["syzygy"] = hit
    return hit


def cosyzygy(m: RightModule) -> RightModule:
    hit = m._cache.get("cosyzygy")
    if hit is None:
        hit = dual(syzygy(dual(m)))
        m._cache["cosyzygy"] = hit
    return hit


@dataclass
class ResolutionStep:
    p: ProjectiveSum
    d: ModuleMap              # p.module -> previous term (or the module itself)
    kernel: tuple             # (module, inclusion) of ker d


def resolution(m: RightModule, length: int, cap: Optional[int] = None) -> list:
    """Minimal projective resolution terms ``P_0 .. P_length`` (shorter if it stops)."""
    if cap is None:
        cap = m.algebra.dim + 2
    steps = m._cache.setdefault("resolution", [])
    if not steps:
        p, d0 = projective_cover(m)
        steps.append(ResolutionStep(p, d0, d0.kernel()))
    while len(steps) <= length:
        k, inc = steps[-1].kernel
        if k.dim == 0:
            break
        if len(steps) > cap:
            raise CapExceeded(f"resolution did not stop within {cap} steps")
        p, d = projective_cover(k)
        dk = d.then(inc)
        steps.append(ResolutionStep(p, dk, d.kernel()))
        if dk.rank() != steps[-2].kernel[0].dim:
            raise ExactnessFailure("resolution is not exact")
    return steps


def resolution_term(m: RightModule, k: int) -> ProjectiveSum:
    steps = resolution(m, k)
    if k < len(steps):
        return steps[k].p
    return ProjectiveSum(m.algebra, [])


@dataclass
class MinPresentation:
    module: RightModule
    p0: ProjectiveSum
    p1: ProjectiveSum
    d1: ModuleMap
    d0: ModuleMap

    def check(self):
        if self.d0.rank() != self.module.dim:
            raise ExactnessFailure("d0 is not onto")
        if not self.d1.then(self.d0).is_zero():
            raise ExactnessFailure("d0 d1 != 0")
        if self.p0.module.dim - self.module.dim != self.d1.rank():
            raise ExactnessFailure("presentation is not exact at P0")
        return True


def min_presentation(m: RightModule) -> MinPresentation:
    steps = resolution(m, 1)
    p0, d0 = steps[0].p, steps[0].d
    if len(steps) > 1:
        p1, d1 = steps[1].p, steps[1].d
    else:
        p1 = ProjectiveSum(m.algebra, [])
        d1 = ModuleMap.zero(p1.module, p0.module)
    return MinPresentation(m, p0, p1, d1, d0)


# --------------------------------------------------------------------- Ext
@dataclass
class ExtGroup:
    degree: int
    dim: int
    cocycles: list            # representatives in Hom(P_degree, N) coordinates
    image: Subspace           # coboundaries
    reps: Subspace            # reduced representatives (echelon against the coboundaries)
    term: ProjectiveSum

    def class_of(self, v: Sequence) -> tuple:
        red = self.image.reduce(v)
        c = self.reps.coordinates(red)
        if c is None:
            raise InvariantViolation("vector is not a cocycle")
        return c


def _coboundary_step(m: RightModule, k: int, n: RightModule) -> Matrix:
    """Matrix of ``Hom(P_k, N) -> Hom(P_{k+1}, N)``."""
    steps = resolution(m, k + 1)
    pk = steps[k].p if k < len(steps) else ProjectiveSum(m.algebra, [])
    rows_dim = sum(n.dims[v] for v in pk.vertices)
    if k + 1 >= len(steps):
        return Matrix.zeros(n.field, rows_dim, 0)
    nxt = steps[k + 1]
    coeffs = generator_images(nxt.d, nxt.p, pk)
    return coboundary(coeffs, nxt.p, pk, n)


def ext_group(m: RightModule, n: RightModule, d: int) -> ExtGroup:
    same_algebra(m, n)
    if d < 0:
        raise ValueError("degree must be non-negative")
    key = ("ext", id(n), d)
    hit = m._cache.get(key)
    if hit is not None and hit[0] is n:
        return hit[1]
    f = m.field
    term = resolution_term(m, d)
    width = sum(n.dims[v] for v in term.vertices)
    delta = _coboundary_step(m, d, n)
    cocycles = delta.kernel() if delta.ncols else Subspace.full(f, width)
    if d == 0:
        image = Subspace.zero(f, width)
    else:
        prev = _coboundary_step(m, d - 1, n)
        image = prev.row_space()
    reps = Subspace.span(f, width, [image.reduce(v) for v in cocycles.vectors])
    dim = cocycles.dim - image.dim
    if reps.dim != dim:
        raise InvariantViolation("coboundaries are not cocycles")
    grp = ExtGroup(d, dim, list(reps.vectors), image, reps, term)
    m._cache[key] = (n, grp)
    return grp


def ext_dim(m: RightModule, n: RightModule, d: int = 1) -> int:
    return ext_group(m, n, d).dim


# -------------------------------------------------------- homological dims
@dataclass(frozen=True)
class HomDims:
    pd: float
    id: float
    cap: int

    def to_json(self) -> dict:
        enc = (lambda x: "inf" if x == INF else int(x))
        return {"pd": enc(self.pd), "id": enc(self.id), "cap": self.cap}


def projective_dimension(m: RightModule, cap: Optional[int] = None) -> float:
    if cap is None:
        cap = m.algebra.dim + 2
    if m.dim == 0:
        return 0
    try:
        steps = resolution(m, cap + 1, cap=cap)
    except CapExceeded:
        return INF
    if steps[-1].kernel[0].dim:
        return INF
    return len(steps) - 1


def injective_dimension(m: RightModule, cap: Optional[int] = None) -> float:
    return projective_dimension(dual(m), cap)


def hom_dims(m: RightModule, cap: Optional[int] = None) -> HomDims:
    if cap is None:
        cap = m.algebra.dim + 2
    return HomDims(projective_dimension(m, cap), injective_dimension(m, cap), cap)


def gl_dim(a: FDAlgebra, cap: Optional[int] = None) -> float:
    from .modules import simple
    return max(projective_dimension(simple(a, i), cap) for i in range(len(a.vertices)))


def is_projective(m: RightModule) -> bool:
    return projective_dimension(m) == 0


def is_injective(m: RightModule) -> bool:
    return injective_dimension(m) == 0


# ------------------------------------------------------------- Nakayama, tau
def _op_sum(p: ProjectiveSum) -> ProjectiveSum:
    key = ("op_sum", p.vertices)
    cache = p.algebra.opposite().__dict__.setdefault("_module_cache", {})
    if key not in cache:
        cache[key] = ProjectiveSum(p.algebra.opposite(), p.vertices)
    return cache[key]


def nakayama(p: ProjectiveSum) -> RightModule:
    """``nu(P) = D Hom(P, A)``: the injective with the same vertices."""
    if not isinstance(p, ProjectiveSum):
        raise NotProjective("nakayama needs a ProjectiveSum")
    return dual(_op_sum(p).module)


def nakayama_map(f: ModuleMap, src: ProjectiveSum, tgt: ProjectiveSum) -> ModuleMap:
    """``nu(f): nu(src) -> nu(tgt)`` for ``f: src -> tgt``."""
    coeffs = generator_images(f, src, tgt)
    op_src, op_tgt = _op_sum(tgt), _op_sum(src)
    # Hom(f, A): Hom(tgt, A) -> Hom(src, A) sends generator m to (a[m][l])_l
    images = []
    for m, w in enumerate(tgt.vertices):
        vec = [0] * op_tgt.module.dims[w]
        for l in range(len(src)):
            piece = op_tgt.element_vector(l, coeffs[m][l], w)
            vec = [x + y for x, y in zip(vec, piece)]
        images.append(vec)
    hom_f = hom_from_projective(op_src, op_tgt.module, images)
    return hom_f.dual()


def tau(m: RightModule) -> RightModule:
    """``tau M = ker nu(d1)`` for a minimal presentation ``P1 -> P0 -> M``."""
    hit = m._cache.get("tau")
    if hit is not None:
        return hit
    pres = min_presentation(m)
    nu_d1 = nakayama_map(pres.d1, pres.p1, pres.p0)
    t = nu_d1.kernel()[0]
    m._cache["tau"] = t
    return t


def tau_inverse(m: RightModule) -> RightModule:
    hit = m._cache.get("tau_inverse")
    if hit is None:
        hit = dual(tau(dual(m)))
        m._cache["tau_inverse"] = hit
    return hit


@dataclass
class TauComposites:
    tau_inv_cosyzygy: RightModule
    tau_syzygy: RightModule


def tau_composites(m: RightModule) -> TauComposites:
    return TauComposites(tau_inverse(cosyzygy(m)), tau(syzygy(m)))


# ------------------------------------------------------------ stable Hom
def stable_hom(m: RightModule, n: RightModule, flavor: str = "modulo_projectives") -> int:
    """Dimension of Hom modulo maps through projectives (or injectives)."""
    same_algebra(m, n)
    hs = hom_space(m, n)
    if not hs.dim:
        return 0
    if flavor == "modulo_projectives":
        p, d0 = projective_cover(n)
        through = [g.then(d0) for g in hom_space(m, p.module)]
    elif flavor == "modulo_injectives":
        i, j = injective_envelope(m)
        through = [j.then(h) for h in hom_space(i, n)]
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    span = Subspace.span(m.field, hs.dim, [hs.coordinates(h) for h in through])
    return hs.dim - span.dim


def tau_hom_vanishing_via_presentation(y: RightModule, x: RightModule) -> bool:
    """Whether ``Hom(P0, y) -> Hom(P1, y)`` is onto for a minimal presentation of ``x``.

    This holds exactly when ``Hom(y, tau x) = 0``.
    """
    same_algebra(y, x)
    pres = min_presentation(x)
    target_dim = sum(y.dims[v] for v in pres.p1.vertices)
    if target_dim == 0:
        return True
    coeffs = generator_images(pres.d1, pres.p1, pres.p0)
    mat = coboundary(coeffs, pres.p1, pres.p0, y)
    return mat.rank() == target_dim


def hom_vanishes(m: RightModule, n: RightModule) -> bool:
    return hom_space(m, n).dim == 0

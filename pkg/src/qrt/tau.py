"""tau-rigidity, tilting flags, Gen-class predicates and torsion pairs."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import InvariantViolation, NotPartialTilting
from .homological import (ext_dim, is_injective, projective_dimension, tau, tau_hom_vanishing_via_presentation,
                          tau_inverse)
from .linalg import Matrix, Subspace
from .modules import (ModuleMap, RightModule, annihilator, decompose, direct_sum, dual_regular, end_algebra,
                      hom_dim, hom_space, indecomposables_isomorphic, same_algebra, trace,
                      zero_module)


@dataclass
class TauProfile:
    module: RightModule
    is_rigid: bool
    is_tau_rigid: bool
    pd: float
    is_partial_tilting: bool
    is_tilting: bool
    is_tau_tilting: bool
    is_faithful: bool
    indecomposable_summand_count: int

    def to_json(self) -> dict:
        return {
            "dim_vector": list(self.module.dims),
            "is_rigid": self.is_rigid,
            "is_tau_rigid": self.is_tau_rigid,
            "pd": "inf" if self.pd == float("inf") else int(self.pd),
            "is_partial_tilting": self.is_partial_tilting,
            "is_tilting": self.is_tilting,
            "is_tau_tilting": self.is_tau_tilting,
            "is_faithful": self.is_faithful,
            "indecomposable_summand_count": self.indecomposable_summand_count,
        }


def is_tau_rigid(m: RightModule) -> bool:
    return m.dim == 0 or hom_dim(m, tau(m)) == 0


def is_rigid(m: RightModule) -> bool:
    return m.dim == 0 or ext_dim(m, m, 1) == 0


def is_faithful(m: RightModule) -> bool:
    return annihilator(m).dim == 0


def tau_profile(m: RightModule, seed: int = 0) -> TauProfile:
    """All rigidity and tilting flags of ``m``.

    Tilting is decided by Bongartz completeness: a partial tilting module is
    tilting exactly when it has as many non-isomorphic indecomposable
    summands as there are simples.
    """
    a = m.algebra
    n_simples = len(a.vertices)
    if m.dim == 0:
        return TauProfile(m, True, True, 0, False, False, False, a.dim == 0, 0)
    rigid = is_rigid(m)
    tau_rigid = is_tau_rigid(m)
    if tau_rigid != tau_hom_vanishing_via_presentation(m, m):
        raise InvariantViolation("tau-rigidity disagrees with the presentation criterion")
    pd = projective_dimension(m)
    count = decompose(m, seed).count
    partial = rigid and pd <= 1
    faithful = is_faithful(m)
    if faithful != gen_contains(m, dual_regular(a)):
        raise InvariantViolation("faithfulness disagrees with DA in Gen M")
    prof = TauProfile(m, rigid, tau_rigid, pd, partial, partial and count == n_simples,
                      tau_rigid and count == n_simples, faithful, count)
    _check_profile(prof)
    return prof


def _check_profile(p: TauProfile):
    if p.is_partial_tilting and not (p.is_rigid and p.pd <= 1):
        raise InvariantViolation("partial tilting without rigidity or pd <= 1")
    if p.is_tau_rigid and not p.is_rigid:
        raise InvariantViolation("tau-rigid module that is not rigid")
    if p.is_tilting and not (p.is_partial_tilting and p.is_faithful):
        raise InvariantViolation("tilting module that is not faithful")
    if p.is_partial_tilting and not p.is_tau_rigid:
        raise InvariantViolation("partial tilting module that is not tau-rigid")


# ---------------------------------------------------------------- Gen classes
def gen_contains(m: RightModule, x: RightModule) -> bool:
    """Whether ``x`` is a quotient of some ``m^d``."""
    same_algebra(m, x)
    if x.dim == 0:
        return True
    return trace(m, x)[0].dim == x.dim


@dataclass
class VanishingResult:
    vanishes: bool
    witness: Optional[ModuleMap] = None

    def __bool__(self):
        return self.vanishes


def hom_to_gen_vanishes(n: RightModule, m: RightModule) -> VanishingResult:
    """Decide ``Hom(n, Gen m) = 0``.

    Every module in ``Gen m`` embeds in a power of the injective cogenerator
    ``DA``, and the largest submodule of ``DA^d`` lying in ``Gen m`` is
    ``trace(m, DA)^d``.  So it suffices to test maps into ``trace(m, DA)``.
    """
    same_algebra(n, m)
    if n.dim == 0 or m.dim == 0:
        return VanishingResult(True)
    tr, _ = trace(m, dual_regular(m.algebra))
    if tr.dim == 0:
        return VanishingResult(True)
    hs = hom_space(n, tr)
    if hs.dim == 0:
        return VanishingResult(True)
    return VanishingResult(False, hs[0])


def ext_to_gen_vanishes(y: RightModule, x: RightModule) -> bool:
    """``Ext^1(y, Gen x) = 0``, decided as ``Hom(x, tau y) = 0``."""
    same_algebra(x, y)
    if x.dim == 0 or y.dim == 0:
        return True
    return hom_dim(x, tau(y)) == 0


# ------------------------------------------------------------ approximations
@dataclass
class Approximation:
    map: ModuleMap
    target: RightModule
    is_left_minimal: bool


def _factorizes(f: ModuleMap, t: RightModule) -> bool:
    """Whether every map ``f.source -> t`` factors through ``f``."""
    target_dim = hom_dim(f.source, t)
    if target_dim == 0:
        return True
    flats = [f.then(g).flat() for g in hom_space(f.target, t)]
    if not flats:
        return False
    return Matrix(f.source.field, flats, len(flats[0])).rank() == target_dim


def _radical_maps(x: RightModule, y: RightModule, same: bool) -> list:
    """A spanning set of ``rad(x, y)`` for indecomposable ``x`` and ``y``."""
    hs = hom_space(x, y)
    if not same:
        return list(hs)
    rad = end_algebra(x).radical
    return [hs.combination(v) for v in rad.vectors]


def minimal_left_add_approximation(u: RightModule, t: RightModule, seed: int = 0) -> Approximation:
    """Minimal left ``add t``-approximation ``u -> t'``.

    For each indecomposable summand ``X`` of ``t`` the multiplicity of ``X`` in
    ``t'`` is the dimension of ``Hom(u, X)`` modulo the maps factoring through
    a radical map ``X' -> X``; the chosen complement gives the components of ``f``.
    """
    same_algebra(u, t)
    f_ = u.field
    if u.dim == 0 or t.dim == 0 or hom_dim(u, t) == 0:
        z = zero_module(u.algebra)
        return Approximation(ModuleMap.zero(u, z), z, True)
    reps = [p for p, _ in decompose(t, seed).summands]
    chosen = []
    for i, x in enumerate(reps):
        hx = hom_space(u, x)
        if hx.dim == 0:
            continue
        spanned = []
        for j, y in enumerate(reps):
            hy = hom_space(u, y)
            if hy.dim == 0:
                continue
            for g in _radical_maps(y, x, i == j):
                for h in hy:
                    spanned.append(hx.coordinates(h.then(g)))
        w = Subspace.span(f_, hx.dim, spanned)
        for k, h in enumerate(hx):
            e = tuple(1 if j == k else 0 for j in range(hx.dim))
            if not w.contains(e):
                w = w.sum(Subspace.span(f_, hx.dim, [e]))
                chosen.append((h, x))
    target, incls, _ = direct_sum([x for _, x in chosen])
    f = None
    for (h, _), inc in zip(chosen, incls):
        part = h.then(inc)
        f = part if f is None else f + part
    if not _factorizes(f, t):
        raise InvariantViolation("approximation property fails")
    return Approximation(f, target, True)


def in_add(x: RightModule, t: RightModule, seed: int = 0) -> bool:
    """Whether every indecomposable summand of ``x`` is a summand of ``t``."""
    if x.dim == 0:
        return True
    tpieces = [p for p, _ in decompose(t, seed).summands]
    for piece, _ in decompose(x, seed).summands:
        if not any(p.dims == piece.dims and indecomposables_isomorphic(piece, p) for p in tpieces):
            return False
    return True


def tilting_sequence(t: RightModule, seed: int = 0) -> dict:
    """Search for ``0 -> A -> t' -> t'' -> 0`` with ``t', t''`` in ``add t``.

    Uses the left ``add t``-approximation of the regular module; when ``t`` is
    tilting this map is injective with cokernel in ``add t``.
    """
    from .modules import regular
    a = regular(t.algebra)
    appr = minimal_left_add_approximation(a, t, seed)
    coker, _ = appr.map.cokernel()
    found = appr.map.is_injective() and in_add(coker, t, seed)
    return {"exists": found, "middle_dims": appr.target.dims, "cokernel_dims": coker.dims}


# --------------------------------------------------------------- torsion pairs
def _require_partial_tilting(t: RightModule):
    if not (is_rigid(t) and projective_dimension(t) <= 1):
        raise NotPartialTilting("module is not partial tilting")


def torsion_pair_membership(t: RightModule, x: RightModule) -> dict:
    """Membership of ``x`` in the torsion pair induced by a partial tilting ``t``."""
    same_algebra(t, x)
    _require_partial_tilting(t)
    return {"in_T": ext_dim(t, x, 1) == 0, "in_F": hom_dim(t, x) == 0}


@dataclass
class SplitReport:
    split: bool
    checked: int
    violations: list = dc_field(default_factory=list)
    unsorted: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"split": self.split, "checked": self.checked, "violations": self.violations,
                "unsorted": self.unsorted}


def split_check(t: RightModule, corpus: list) -> SplitReport:
    """Check that ``tau^-1`` keeps corpus members of the torsion class inside it,
    and that every corpus member lies in the torsion or the torsion-free class."""
    _require_partial_tilting(t)
    violations, unsorted = [], []
    for k, x in enumerate(corpus):
        mem = torsion_pair_membership(t, x)
        if not (mem["in_T"] or mem["in_F"]):
            unsorted.append(k)
        if mem["in_T"] and not is_injective(x):
            y = tau_inverse(x)
            if y.dim and ext_dim(t, y, 1) != 0:
                violations.append(k)
    return SplitReport(not violations and not unsorted, len(corpus), violations, unsorted)


__all__ = [
    "TauProfile", "tau_profile", "is_rigid", "is_tau_rigid", "is_faithful", "gen_contains",
    "VanishingResult", "hom_to_gen_vanishes", "ext_to_gen_vanishes", "Approximation",
    "minimal_left_add_approximation", "in_add", "tilting_sequence", "torsion_pair_membership",
    "SplitReport", "split_check",
]

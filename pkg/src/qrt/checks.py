"""Named checks of the tau-rigidity transfer results between mod C and mod B.

Each check evaluates its hypotheses and conclusions independently and
reports whether the asserted implication (or equivalence) holds on the input.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import UnknownCheck
from .homological import (ext_dim, gl_dim, injective_dimension, injective_envelope, is_projective,
                          projective_cover, projective_dimension, syzygy, tau, tau_composites)
from .modules import (ModuleMap, RightModule, decompose, direct_sum, dual, dual_regular, hom_dim, hom_space,
                      is_isomorphic, radical, regular, restrict_along)
from .relext import (RelationExtensionBundle, coinduct, dual_tensor_E, embed, hom_from_E, induct, tensor_E,
                     verify_ses)
from .tau import hom_to_gen_vanishes, is_faithful, is_rigid, is_tau_rigid, tau_profile


@dataclass
class CheckReport:
    check_name: str
    inputs_digest: str
    hypotheses: dict
    conclusions: dict
    consistent: bool
    user_asserted: dict = dc_field(default_factory=dict)
    witnesses: list = dc_field(default_factory=list)
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "check": self.check_name,
            "inputs": self.inputs_digest,
            "hypotheses": dict(self.hypotheses),
            "user_asserted": dict(self.user_asserted),
            "conclusions": dict(self.conclusions),
            "consistent": self.consistent,
            "witnesses": list(self.witnesses),
            "notes": self.notes,
        }


def module_digest(m: RightModule) -> str:
    f = m.field
    data = {"dims": list(m.dims),
            "blocks": [[[f.format(x) for x in r] for r in m.blocks[g].rows] for g in (m.algebra.generators or ())]}
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()[:16]


# ------------------------------------------------------------ cached helpers
class _Ctx:
    """Quantities shared between checks, cached on the module objects."""

    def __init__(self, bundle: RelationExtensionBundle, seed: int):
        self.bundle = bundle
        self.seed = seed

    def _memo(self, m, key, build):
        k = ("checks", id(self.bundle), key)
        if k not in m._cache:
            m._cache[k] = build()
        return m._cache[k]

    @property
    def C(self):
        return self.bundle.C

    def gl_dim_two(self) -> bool:
        c = self.C
        if not hasattr(c, "_gl_dim"):
            c._gl_dim = gl_dim(c)
        return c._gl_dim == 2

    def gl_dim_at_most_two(self) -> bool:
        self.gl_dim_two()
        return self.C._gl_dim <= 2

    def pd(self, m):
        return projective_dimension(m)

    def id(self, m):
        return injective_dimension(m)

    def tau_c(self, m):
        return tau(m)

    def tic(self, m):
        """tau^-1 Omega^-1 m."""
        return tau_composites(m).tau_inv_cosyzygy

    def tso(self, m):
        """tau Omega m."""
        return tau_composites(m).tau_syzygy

    def embed(self, m):
        return embed(self.bundle, m)

    def tau_b(self, m):
        return tau(self.embed(m))

    def tau_b_rigid(self, m) -> bool:
        return self._memo(m, "tbr", lambda: is_tau_rigid(self.embed(m)))

    def tau_b_tilting(self, m) -> bool:
        def build():
            mb = self.embed(m)
            return is_tau_rigid(mb) and decompose(mb, self.seed).count == len(self.bundle.B.vertices)
        return self._memo(m, "tbt", build)

    def tau_c_rigid(self, m) -> bool:
        return is_tau_rigid(m)

    def profile(self, m):
        return self._memo(m, "profile", lambda: tau_profile(m, self.seed))

    def p0(self, m):
        return projective_cover(m)[0].module

    def i0(self, m):
        return injective_envelope(m)[0]

    def tic_c(self):
        return self._memo(regular(self.C), "tic", lambda: self.tic(regular(self.C)))

    def tso_dc(self):
        return self._memo(dual_regular(self.C), "tso", lambda: self.tso(dual_regular(self.C)))

    def iso(self, x, y) -> bool:
        return bool(is_isomorphic(x, y, self.seed))

    def gen_vanishes(self, n, m) -> bool:
        return bool(hom_to_gen_vanishes(n, m))


def _one_way(hyp: dict, concl: dict) -> bool:
    return not all(hyp.values()) or all(concl.values())


def _iff(hyp: dict, left: bool, right: bool) -> bool:
    return not all(hyp.values()) or left == right


def _standing(ctx: _Ctx) -> dict:
    return {"gl_dim_C_is_2": ctx.gl_dim_two()}


# --------------------------------------------------------------------- checks
def _tau_preserved(ctx, m):
    hyp = _standing(ctx)
    left = ctx.iso(ctx.embed(ctx.tau_c(m)), ctx.tau_b(m))
    right = ctx.pd(ctx.tau_c(m)) <= 1 and ctx.id(m) <= 1
    concl = {"tauC_iso_tauB": left, "pd_tauC_le_1_and_id_le_1": right}
    return hyp, concl, _iff(hyp, left, right)


def _id_implies_rigid(ctx, m):
    hyp = {**_standing(ctx), "tau_C_rigid": ctx.tau_c_rigid(m), "id_le_1": ctx.id(m) <= 1}
    concl = {"tau_B_rigid": ctx.tau_b_rigid(m)}
    return hyp, concl, _one_way(hyp, concl)


def _induced_rigid(ctx, m):
    hyp = {**_standing(ctx), "tau_C_rigid": ctx.tau_c_rigid(m), "pd_tauC_le_1": ctx.pd(ctx.tau_c(m)) <= 1}
    concl = {"induced_tau_B_rigid": is_tau_rigid(induct(ctx.bundle, m))}
    return hyp, concl, _one_way(hyp, concl)


def _partial_tilt_iff(ctx, m):
    prof = ctx.profile(m)
    hyp = {**_standing(ctx), "partial_tilting": prof.is_partial_tilting,
           "pd_tauC_le_1": ctx.pd(ctx.tau_c(m)) <= 1}
    left = ctx.tau_b_rigid(m)
    right = ctx.gen_vanishes(ctx.tic(m), m)
    concl = {"tau_B_rigid": left, "hom_tic_gen_vanishes": right}
    return hyp, concl, _iff(hyp, left, right)


def _indec_tau_rigid_iff(ctx, m, tilted):
    hyp = {**_standing(ctx), "indecomposable": decompose(m, ctx.seed).total == 1,
           "tau_C_rigid": ctx.tau_c_rigid(m)}
    left = ctx.tau_b_rigid(m)
    right = ctx.gen_vanishes(ctx.tic(m), m)
    concl = {"tau_B_rigid": left, "hom_tic_gen_vanishes": right}
    return hyp, concl, _iff({**hyp, "C_tilted": tilted}, left, right)


def _faithful_iff(ctx, m):
    hyp = {**_standing(ctx), "tau_C_rigid": ctx.tau_c_rigid(m), "faithful": is_faithful(m)}
    left = ctx.tau_b_rigid(m)
    right = ctx.id(m) <= 1
    return hyp, {"tau_B_rigid": left, "id_le_1": right}, _iff(hyp, left, right)


def _tilting_iff(ctx, m):
    hyp = {**_standing(ctx), "tilting": ctx.profile(m).is_tilting}
    left = ctx.tau_b_tilting(m)
    right = ctx.id(m) <= 1
    return hyp, {"tau_B_tilting": left, "id_le_1": right}, _iff(hyp, left, right)


def _tau_tilting_iff(ctx, m, tilted):
    hyp = {**_standing(ctx), "tau_C_tilting": ctx.profile(m).is_tau_tilting}
    left = ctx.tau_b_tilting(m)
    right = ctx.id(m) <= 1
    return hyp, {"tau_B_tilting": left, "id_le_1": right}, _iff({**hyp, "C_tilted": tilted}, left, right)


def _projective_rigid_iff(ctx, m):
    hyp = {**_standing(ctx), "projective": is_projective(m)}
    t = ctx.tic(m)
    pbar = projective_cover(t)[0].module if t.dim else t
    left = ctx.tau_b_rigid(m)
    right = pbar.dim == 0 or hom_dim(pbar, m) == 0
    return hyp, {"tau_B_rigid": left, "hom_Pbar_P_vanishes": right}, _iff(hyp, left, right)


def _proj_cover_gen(ctx, m):
    hyp = {**_standing(ctx), "tau_C_rigid": ctx.tau_c_rigid(m),
           "hom_tic_P0_gen_vanishes": ctx.gen_vanishes(ctx.tic(ctx.p0(m)), m)}
    concl = {"tau_B_rigid": ctx.tau_b_rigid(m)}
    return hyp, concl, _one_way(hyp, concl)


def _gen_pd_rigid(ctx, m):
    hyp = {**_standing(ctx), "tau_C_rigid": ctx.tau_c_rigid(m),
           "pd_le_1_on_gen": ctx.gen_vanishes(ctx.tic_c(), m)}
    concl = {"tau_B_rigid": ctx.tau_b_rigid(m)}
    return hyp, concl, _one_way(hyp, concl)


def _proj_cover_rigid(ctx, m):
    hyp = {**_standing(ctx), "tau_C_rigid": ctx.tau_c_rigid(m), "P0_tau_B_rigid": ctx.tau_b_rigid(ctx.p0(m))}
    concl = {"tau_B_rigid": ctx.tau_b_rigid(m)}
    return hyp, concl, _one_way(hyp, concl)


def _omega_tic_rigid(ctx, m):
    om = syzygy(ctx.tic(ctx.p0(m)))
    hyp = {**_standing(ctx), "partial_tilting": ctx.profile(m).is_partial_tilting,
           "hom_omega_tic_P0_M_vanishes": om.dim == 0 or hom_dim(om, m) == 0}
    concl = {"tau_B_rigid": ctx.tau_b_rigid(m)}
    return hyp, concl, _one_way(hyp, concl)


def _semisimple_rigid(ctx, m):
    ss = radical(m)[0].dim == 0
    rigid = ctx.tau_c_rigid(m)
    a = ss and hom_dim(ctx.tic(ctx.p0(m)), m) == 0
    b = ss and hom_dim(m, ctx.tso(ctx.i0(m))) == 0
    hyp = {**_standing(ctx), "tau_C_rigid": rigid, "semisimple": ss, "cond_a": a, "cond_b": b}
    left = ctx.tau_b_rigid(m)
    ok = not (hyp["gl_dim_C_is_2"] and rigid and ss and (a or b)) or left
    return hyp, {"tau_B_rigid": left}, ok


def _rigid_extends(ctx, m):
    rigid = is_rigid(m)
    a = hom_dim(ctx.tic(ctx.p0(m)), m) == 0
    b = hom_dim(m, ctx.tso(ctx.i0(m))) == 0
    mb = ctx.embed(m)
    b_rigid = is_rigid(mb)
    hyp = {**_standing(ctx), "rigid": rigid, "cond_a": a, "cond_b": b}
    ok = not (hyp["gl_dim_C_is_2"] and rigid and (a or b)) or b_rigid
    return hyp, {"rigid_over_B": b_rigid}, ok


def _homological_criteria(ctx, m):
    hyp = _standing(ctx)
    pd1 = ctx.pd(m) <= 1
    id1 = ctx.id(m) <= 1
    a = hom_dim(ctx.tic_c(), m) == 0
    b = hom_dim(m, ctx.tso_dc()) == 0
    tic = ctx.tic(m)
    c = tic.dim == 0 or hom_dim(tic, m) == 0
    concl = {"pd_le_1": pd1, "hom_tic_C_M_vanishes": a, "id_le_1": id1, "hom_M_tso_DC_vanishes": b,
             "hom_tic_M_M_vanishes": c}
    ok = not hyp["gl_dim_C_is_2"] or (pd1 == a and id1 == b and (not pd1 or c))
    return hyp, concl, ok


def _tensor_E_identities(ctx, m):
    hyp = {"gl_dim_C_le_2": ctx.gl_dim_at_most_two()}
    bundle = ctx.bundle
    e_mod = bundle.E_as_right_module
    de = dual(bundle.opposite().E_as_right_module)
    concl = {
        "E_iso_tic_C": ctx.iso(e_mod, ctx.tic_c()),
        "DE_iso_tso_DC": ctx.iso(de, ctx.tso_dc()),
        "M_tensor_E_iso_tic_M": ctx.iso(tensor_E(bundle, m), ctx.tic(m)),
        "D_E_tensor_DM_iso_tso_M": ctx.iso(dual_tensor_E(bundle, m), ctx.tso(m)),
    }
    return hyp, concl, _one_way(hyp, concl)


def _induction_identities(ctx, m):
    hyp = {"gl_dim_C_le_2": ctx.gl_dim_at_most_two()}
    id1 = ctx.id(m) <= 1
    pd1 = ctx.pd(m) <= 1
    ind = ctx.iso(induct(ctx.bundle, m), ctx.embed(m))
    coind = ctx.iso(coinduct(ctx.bundle, m), ctx.embed(m))
    concl = {"id_le_1": id1, "induced_iso_M": ind, "pd_le_1": pd1, "coinduced_iso_M": coind}
    ok = not all(hyp.values()) or (id1 == ind and pd1 == coind)
    return hyp, concl, ok


def _split_sequences(ctx, m):
    rep = verify_ses(ctx.bundle, m, ctx.seed)
    concl = {"first_exact": rep.first_exact, "second_exact": rep.second_exact,
             "kernel_is_M_tensor_E": rep.kernel_matches, "cokernel_is_D_E_tensor_DM": rep.cokernel_matches}
    return {}, concl, rep.ok


def _tau_agreement(ctx, m):
    hyp = {"indecomposable": decompose(m, ctx.seed).total == 1, "non_projective": not is_projective(m)}
    tc = ctx.tau_c(m)
    left = ctx.iso(ctx.embed(tc), ctx.tau_b(m))
    right = hom_from_E(ctx.bundle, tc).dim == 0 and tensor_E(ctx.bundle, m).dim == 0
    return hyp, {"tauC_iso_tauB": left, "hom_E_tauC_and_M_tensor_E_vanish": right}, _iff(hyp, left, right)


def _tau_of_induced(ctx, m):
    bundle = ctx.bundle
    lhs = restrict_along(bundle.ext.sigma, tau(induct(bundle, m)))
    tc = ctx.tau_c(m)
    rhs = direct_sum([tc, hom_from_E(bundle, tc)])[0]
    ok = ctx.iso(lhs, rhs)
    return {}, {"restricted_tau_B_induced_iso": ok}, ok


def find_monomorphism(x: RightModule, y: RightModule, seed: int = 0, tries: int = 40) -> Optional[ModuleMap]:
    """Search for an injective map ``x -> y`` among random combinations of a Hom basis."""
    if x.dim == 0:
        return ModuleMap.zero(x, y)
    if any(a > b for a, b in zip(x.dims, y.dims)):
        return None
    hs = hom_space(x, y)
    if hs.dim == 0:
        return None
    for h in hs:
        if h.is_injective():
            return h
    rng = random.Random(seed)
    f = x.field
    for _ in range(tries):
        g = hs.combination([f.random(rng, 1000) for _ in range(hs.dim)])
        if g.is_injective():
            return g
    return None


def _tau_embeddings(ctx, m):
    tb = ctx.tau_b(m)
    a = find_monomorphism(ctx.embed(ctx.tau_c(m)), tb, ctx.seed) is not None
    b = find_monomorphism(tau(induct(ctx.bundle, m)), tb, ctx.seed) is not None
    concl = {"tauC_embeds_in_tauB": a, "tauB_induced_embeds_in_tauB": b}
    return {}, concl, a and b


CHECKS: dict = {
    "tau_preserved": _tau_preserved,
    "id_implies_rigid": _id_implies_rigid,
    "induced_rigid": _induced_rigid,
    "partial_tilt_iff": _partial_tilt_iff,
    "indec_tau_rigid_iff": _indec_tau_rigid_iff,
    "faithful_iff": _faithful_iff,
    "tilting_iff": _tilting_iff,
    "tau_tilting_iff": _tau_tilting_iff,
    "projective_rigid_iff": _projective_rigid_iff,
    "proj_cover_gen": _proj_cover_gen,
    "gen_pd_rigid": _gen_pd_rigid,
    "proj_cover_rigid": _proj_cover_rigid,
    "omega_tic_rigid": _omega_tic_rigid,
    "semisimple_rigid": _semisimple_rigid,
    "rigid_extends": _rigid_extends,
    "homological_criteria": _homological_criteria,
    "tensor_E_identities": _tensor_E_identities,
    "induction_identities": _induction_identities,
    "split_sequences": _split_sequences,
    "tau_agreement": _tau_agreement,
    "tau_of_induced": _tau_of_induced,
    "tau_embeddings": _tau_embeddings,
}
NEEDS_TILTED = {"indec_tau_rigid_iff", "tau_tilting_iff"}


def check(name: str, bundle: RelationExtensionBundle, m: RightModule, seed: int = 0,
          assert_tilted: bool = False) -> CheckReport:
    """Run one named check on ``m`` (a module over ``bundle.C``)."""
    fn = CHECKS.get(name)
    if fn is None:
        raise UnknownCheck(f"unknown check {name!r}; known: {', '.join(sorted(CHECKS))}")
    if m.algebra is not bundle.C:
        from .errors import AlgebraMismatch
        raise AlgebraMismatch("module is not over the bundle's C")
    ctx = _ctx_for(bundle, seed)
    if name in NEEDS_TILTED:
        hyp, concl, ok = fn(ctx, m, assert_tilted)
        asserted = {"C_tilted": assert_tilted}
    else:
        hyp, concl, ok = fn(ctx, m)
        asserted = {}
    return CheckReport(name, module_digest(m), hyp, concl, bool(ok), asserted)


_CTX: dict = {}


def _ctx_for(bundle, seed) -> _Ctx:
    key = (id(bundle), seed)
    ctx = _CTX.get(key)
    if ctx is None or ctx.bundle is not bundle:
        ctx = _CTX[key] = _Ctx(bundle, seed)
    return ctx


# ------------------------------------------------------------ AR formula
def ar_formula_violations(mods: list) -> list:
    """Pairs violating ``dim Ext^1(x, y) = dim Hom(y, tau x) mod injectives
    = dim Hom(tau^-1 y, x) mod projectives``."""
    from .homological import stable_hom, tau_inverse
    bad = []
    for i, x in enumerate(mods):
        tx = tau(x)
        for j, y in enumerate(mods):
            e = ext_dim(x, y, 1)
            s1 = stable_hom(y, tx, "modulo_injectives") if tx.dim else 0
            ty = tau_inverse(y)
            s2 = stable_hom(ty, x, "modulo_projectives") if ty.dim else 0
            if not (e == s1 == s2):
                bad.append((i, j, e, s1, s2))
    return bad


# ------------------------------------------------------------------ suite
def _pictures(m: RightModule, seed: int) -> list:
    from .modules import picture
    if m.dim == 0:
        return []
    return sorted(picture(p) for p, _ in decompose(m, seed).summands)


def _example_verdict(built, ex: dict, seed: int) -> dict:
    from .modules import picture
    bundle = built.bundle
    m = built.corpus.example_module(ex["name"])
    ctx = _ctx_for(bundle, seed)
    tb = ctx.tau_b(m)
    actual = {}
    for key in ex["expected"]:
        if key == "partial_tilting":
            actual[key] = ctx.profile(m).is_partial_tilting
        elif key == "tilting":
            actual[key] = ctx.profile(m).is_tilting
        elif key == "pd_tau":
            actual[key] = int(ctx.pd(ctx.tau_c(m)))
        elif key == "id":
            actual[key] = int(ctx.id(m))
        elif key == "tic":
            actual[key] = _pictures(ctx.tic(m), seed)
        elif key == "tau_C":
            actual[key] = _pictures(ctx.tau_c(m), seed)
        elif key == "hom_tic_gen_vanishes":
            actual[key] = ctx.gen_vanishes(ctx.tic(m), m)
        elif key == "tau_B_rigid":
            actual[key] = ctx.tau_b_rigid(m)
        elif key == "tau_B_dim_vectors":
            actual[key] = sorted(list(p.dims) for p, _ in decompose(tb, seed).summands) if tb.dim else []
    expected = {k: (sorted(v) if isinstance(v, list) else v) for k, v in ex["expected"].items()}
    return {"example": ex["name"], "expected": expected, "actual": actual, "match": expected == actual,
            "tau_B_pictures": sorted(picture(built.to_presented_module(p)) for p, _ in decompose(tb, seed).summands)
            if tb.dim else []}


def _construction_report(built, seed: int) -> dict:
    from .algebra import ext_quiver
    bundle = built.bundle
    c, b = bundle.C, bundle.B
    q_c, q_b = ext_quiver(c), ext_quiver(b)
    arrows_c = sorted((a.source, a.target) for a in q_c.arrows)
    arrows_b = sorted((a.source, a.target) for a in q_b.arrows)
    extra = list(arrows_b)
    for a in arrows_c:
        if a in extra:
            extra.remove(a)
    ctx = _ctx_for(bundle, seed)
    return {
        "dim_C": c.dim, "dim_E": bundle.E.dim, "dim_B": b.dim,
        "gl_dim_C": int(gl_dim(c)),
        "extra_arrows": [list(a) for a in extra],
        "quiver_C_contained": len(arrows_b) - len(extra) == len(arrows_c),
        "E_pictures": _pictures(bundle.E_as_right_module, seed),
        "tic_C_pictures": _pictures(ctx.tic_c(), seed),
        "tso_DC_pictures": _pictures(ctx.tso_dc(), seed),
        "B_matches_presentation": built.to_constructed.matrix.is_invertible(),
        "B_projective_dim_vectors": [list(regular_piece.dims) for regular_piece in _projectives(b)],
    }


def _projectives(b):
    from .modules import projective
    return [projective(b, i) for i in range(len(b.vertices))]


def run_suite(field=None, seed: int = 0, assert_tilted: bool = True, pairs: bool = True) -> dict:
    """Every named check over the bundled corpus, the example verdicts and the AR-formula identities.

    ``assert_tilted`` records the (not machine-checked) fact that the bundled C
    is tilted, which the two tilted-only checks need.
    """
    from .corpus import build_corpus
    from .linalg import QQ
    built = build_corpus(field or QQ, seed)
    corpus = built.corpus
    bundle = built.bundle
    names = list(corpus.C_modules)
    inputs = [(n, corpus.C_modules[n]) for n in names]
    if pairs:
        for i, x in enumerate(names):
            for y in names[i:]:
                inputs.append((f"{x} + {y}", direct_sum([corpus.C_modules[x], corpus.C_modules[y]])[0]))
    for ex in corpus.examples:
        inputs.append((ex["name"], corpus.example_module(ex["name"])))
    reports = []
    for label, m in inputs:
        for name in CHECKS:
            rep = check(name, bundle, m, seed, assert_tilted=assert_tilted)
            reports.append({"module": label, **rep.to_json()})
    examples = [_example_verdict(built, ex, seed) for ex in corpus.examples]
    construction = _construction_report(built, seed)
    c_mods = list(corpus.C_modules.values())
    b_mods = [built.transport(m) for m in corpus.B_modules.values()]
    ar = {"C": len(ar_formula_violations(c_mods)), "B": len(ar_formula_violations(b_mods))}
    construction_ok = (construction["extra_arrows"] == [["4", "1"]] and construction["quiver_C_contained"]
                       and construction["B_matches_presentation"]
                       and construction["dim_B"] == construction["dim_C"] + construction["dim_E"])
    inconsistent = sum(1 for r in reports if not r["consistent"])
    mismatched = sum(1 for e in examples if not e["match"])
    total = inconsistent + mismatched + ar["C"] + ar["B"] + (0 if construction_ok else 1)
    return {
        "field": (field or QQ).to_json(),
        "seed": seed,
        "user_asserted": {"C_tilted": assert_tilted},
        "construction": construction,
        "examples": examples,
        "checks": reports,
        "ar_formula_violations": ar,
        "summary": {"reports": len(reports), "inconsistent_reports": inconsistent,
                    "example_mismatches": mismatched, "construction_ok": construction_ok,
                    "inconsistencies": total},
    }

__all__ = ["CheckReport", "CHECKS", "check", "module_digest", "find_monomorphism", "ar_formula_violations",
           "run_suite"]

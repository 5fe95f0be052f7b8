"""Command-line front end: ``qrt <command> ...``.

File formats
------------
Algebra file::

    {"field": {"kind": "rational"} | {"kind": "prime", "p": N},
     "quiver": {"vertices": [...], "arrows": [{"name", "source", "target"}]},
     "relations": [{"terms": [{"coeff": "1", "path": ["a", "b"]}]}]}

Paths are arrow-name lists read left to right.

Module file::

    {"algebra": "<path>", "spaces": {"<vertex>": dim},
     "arrow_maps": {"<arrow>": [["row-major", "string scalars"]]}}

Matrices act on row vectors from the right.

Check reports carry the stable keys ``check``, ``inputs``, ``hypotheses``,
``user_asserted``, ``conclusions``, ``consistent``, ``witnesses`` and
``notes``.

Exit codes: 0 ok, 1 inconsistency, 2 input error, 3 internal failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import InputError, QrtError
from .formats import algebra_document, dumps, load_algebra, load_module, module_document, structure_dump
from .linalg import GF, QQ, Field

EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _default_seed() -> int:
    raw = os.environ.get("QRT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"QRT_SEED must be an integer, got {raw!r}") from None


def parse_field(text: str) -> Field:
    if text in ("q", "Q"):
        return QQ
    if text.startswith("p:"):
        try:
            return GF(int(text[2:]))
        except ValueError:
            pass
    raise InputError(f"field must be 'q' or 'p:<prime>', got {text!r}")


def _emit(args, payload: dict, text: str):
    if args.json:
        print(dumps(payload))
    else:
        print(text)


def _matrix_rows(field, mat) -> list:
    return [[field.format(x) for x in row] for row in mat.rows]


# ------------------------------------------------------------------ commands
def cmd_algebra_info(args) -> int:
    from .homological import gl_dim
    a = load_algebra(args.algebra)
    radical = a.radical.dim if a.radical else 0
    loewy = 0
    if a.radical is not None:
        loewy = 1
        while a.radical_power(loewy).dim:
            loewy += 1
    gd = gl_dim(a)
    info = {
        "dim": a.dim,
        "basis": list(a.labels),
        "idempotents": [a.labels[i] for i in a.idempotent_basis],
        "radical_dim": radical,
        "gl_dim": "inf" if gd == float("inf") else int(gd),
        "nilpotency_degree": loewy,
    }
    text = "\n".join(f"{k}: {v if not isinstance(v, list) else ' '.join(v)}" for k, v in info.items())
    _emit(args, info, text)
    return EXIT_OK


def _load_pair(args):
    a = load_algebra(args.algebra)
    return a, load_module(a, args.module)


def cmd_module_info(args) -> int:
    from .homological import injective_dimension, projective_dimension
    from .modules import decompose, picture, socle, top
    a, m = _load_pair(args)

    def num(x):
        return "inf" if x == float("inf") else int(x)

    pieces = []
    if m.dim:
        for piece, mult in decompose(m, args.seed).summands:
            pieces.append({"dim_vector": list(piece.dims), "picture": picture(piece), "multiplicity": mult})
    info = {
        "dim_vector": list(m.dims),
        "top": list(top(m)[0].dims),
        "socle": list(socle(m)[0].dims),
        "pd": num(projective_dimension(m)),
        "id": num(injective_dimension(m)),
        "summands": pieces,
    }
    lines = [f"dim vector: {info['dim_vector']}", f"top: {info['top']}", f"socle: {info['socle']}",
             f"pd: {info['pd']}", f"id: {info['id']}", "summands:"]
    lines += [f"  {p['picture']} x{p['multiplicity']}" for p in pieces]
    _emit(args, info, "\n".join(lines))
    return EXIT_OK


def cmd_transform(args) -> int:
    from .homological import cosyzygy, syzygy, tau, tau_inverse
    from .modules import decompose, picture
    op = {"tau": tau, "tau-inv": tau_inverse, "syzygy": syzygy, "cosyzygy": cosyzygy}[args.command]
    a, m = _load_pair(args)
    result = op(m)
    doc = module_document(result, str(args.algebra))
    if args.out:
        Path(args.out).write_text(dumps(doc) + "\n", encoding="utf-8")
    pics = [picture(p) for p, k in decompose(result, args.seed).summands for _ in range(k)] if result.dim else ["0"]
    if args.json:
        print(dumps({"module": doc, "summands": pics}))
    else:
        print(" + ".join(pics))
        if not args.out:
            print(dumps(doc))
    return EXIT_OK


def cmd_hom_ext(args) -> int:
    from .homological import ext_group
    from .modules import hom_space
    a = load_algebra(args.algebra)
    m, n = load_module(a, args.m), load_module(a, args.n)
    f = a.field
    if args.command == "hom" or args.degree == 0:
        hs = hom_space(m, n)
        dim = hs.dim
        basis = [[_matrix_rows(f, blk) for blk in h.blocks] for h in hs] if args.basis else None
    else:
        grp = ext_group(m, n, args.degree)
        dim = grp.dim
        basis = [[f.format(x) for x in v] for v in grp.cocycles] if args.basis else None
    payload = {"dim": dim}
    if basis is not None:
        payload["basis"] = basis
    _emit(args, payload, str(dim) if basis is None else dumps(payload))
    return EXIT_OK


def _bimodule_dump(bim) -> dict:
    f = bim.field
    return {
        "dim": bim.dim,
        "labels": list(bim.labels),
        "left_vertex": list(bim.left_vertex) if bim.left_vertex else None,
        "right_vertex": list(bim.right_vertex) if bim.right_vertex else None,
        "left_action": [_matrix_rows(f, x) for x in bim.left_action],
        "right_action": [_matrix_rows(f, x) for x in bim.right_action],
    }


def cmd_relation_extension(args) -> int:
    from .relext import build_relation_extension
    c = load_algebra(args.algebra)
    bundle = build_relation_extension(c, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "B.json").write_text(dumps(structure_dump(bundle.B)) + "\n", encoding="utf-8")
    (out / "E.json").write_text(dumps(_bimodule_dump(bundle.E)) + "\n", encoding="utf-8")
    manifest = {"C": algebra_document(c), "B": "B.json", "E": "E.json", "seed": args.seed,
                "dims": {"C": c.dim, "E": bundle.E.dim, "B": bundle.B.dim}}
    (out / "manifest.json").write_text(dumps(manifest) + "\n", encoding="utf-8")
    _emit(args, manifest["dims"], f"dim C = {c.dim}, dim E = {bundle.E.dim}, dim B = {bundle.B.dim}; wrote {out}")
    return EXIT_OK


def load_bundle(path, seed: int = 0):
    """Rebuild the bundle stored by ``relation-extension --out``."""
    from .relext import build_relation_extension
    manifest = Path(path) / "manifest.json"
    if not manifest.is_file():
        raise InputError(f"no bundle manifest in {path}")
    with open(manifest, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad manifest: {exc}") from None
    if "C" not in doc:
        raise InputError("bundle manifest lacks the algebra C")
    return build_relation_extension(load_algebra(doc["C"]), seed)


def cmd_profile(args) -> int:
    from .tau import tau_profile
    a, m = _load_pair(args)
    prof = tau_profile(m, args.seed).to_json()
    if args.command == "tau-rigid":
        payload = {"is_tau_rigid": prof["is_tau_rigid"], "profile": prof}
        text = "tau-rigid" if prof["is_tau_rigid"] else "not tau-rigid"
    else:
        payload = prof
        text = "\n".join(f"{k}: {v}" for k, v in prof.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check(args) -> int:
    from .checks import check
    bundle = load_bundle(args.bundle, args.seed)
    m = load_module(bundle.C, args.module)
    rep = check(args.name, bundle, m, args.seed, assert_tilted=args.assert_tilted).to_json()
    print(dumps(rep) if args.json else f"{rep['check']}: {'consistent' if rep['consistent'] else 'INCONSISTENT'}")
    return EXIT_OK if rep["consistent"] else EXIT_INCONSISTENT


def cmd_corpus_suite(args) -> int:
    from .checks import run_suite
    report = run_suite(parse_field(args.field), args.seed)
    summary = report["summary"]
    if args.json:
        print(dumps(report))
    else:
        c = report["construction"]
        print(f"dim C = {c['dim_C']}, dim E = {c['dim_E']}, dim B = {c['dim_B']}")
        for ex in report["examples"]:
            print(f"{ex['example']}: {'ok' if ex['match'] else 'MISMATCH'}  tau_B = {' + '.join(ex['tau_B_pictures'])}")
        print(f"reports: {summary['reports']}, inconsistencies: {summary['inconsistencies']}")
    # 2 and 3 are reserved for input and internal failures
    return min(summary["inconsistencies"], EXIT_INCONSISTENT)


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="randomization seed (default: $QRT_SEED or 0)")

    parser = argparse.ArgumentParser(prog="qrt", description="Exact computations over bound quiver algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra commands")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    p = alg_sub.add_parser("info", parents=[common])
    p.add_argument("algebra")
    p.set_defaults(func=cmd_algebra_info)

    mod = sub.add_parser("module", help="module commands")
    mod_sub = mod.add_subparsers(dest="action", required=True)
    p = mod_sub.add_parser("info", parents=[common])
    p.add_argument("algebra")
    p.add_argument("module")
    p.set_defaults(func=cmd_module_info)

    for name in ("tau", "tau-inv", "syzygy", "cosyzygy"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("algebra")
        p.add_argument("module")
        p.add_argument("--out", help="write the resulting module file here")
        p.set_defaults(func=cmd_transform)

    for name in ("hom", "ext"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("algebra")
        p.add_argument("m")
        p.add_argument("n")
        p.add_argument("--degree", type=int, default=1 if name == "ext" else 0)
        p.add_argument("--basis", action="store_true", help="dump a basis")
        p.set_defaults(func=cmd_hom_ext)

    p = sub.add_parser("relation-extension", parents=[common])
    p.add_argument("algebra")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_relation_extension)

    for name in ("tau-rigid", "profile"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("algebra")
        p.add_argument("module")
        p.set_defaults(func=cmd_profile)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("name")
    p.add_argument("--bundle", required=True)
    p.add_argument("--module", required=True)
    p.add_argument("--assert-tilted", action="store_true", help="declare C tilted (not verified)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus-suite", aliases=["paper-suite"], parents=[common],
                       help="every check over the bundled corpus")
    p.add_argument("--field", default="q", help="'q' or 'p:<prime>'")
    p.set_defaults(func=cmd_corpus_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.command in ("hom", "ext") and args.degree < 0:
            raise InputError("degree must be non-negative")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QrtError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""The bundled worked-example corpus: algebras A, C, B and their module lists."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .algebra import AlgebraMorphism, FDAlgebra
from .formats import load_algebra, load_module
from .linalg import QQ, Field
from .modules import RightModule, direct_sum, restrict_along
from .relext import B_isomorphism, RelationExtensionBundle, build_relation_extension, e_element, inverse_morphism


def corpus_dir() -> Path:
    return Path(str(resources.files("qrt") / "corpus"))


def _read(name: str, root: Optional[Path] = None) -> dict:
    with open((root or corpus_dir()) / name, encoding="utf-8") as fh:
        return json.load(fh)


@dataclass
class Corpus:
    field: Field
    A: FDAlgebra
    C: FDAlgebra
    B_presented: FDAlgebra
    C_modules: dict          # name -> module over C
    B_modules: dict          # name -> module over B_presented
    examples: list           # dicts: name, summands, check, expected

    def example_module(self, name: str) -> RightModule:
        ex = next(e for e in self.examples if e["name"] == name)
        return direct_sum([self.C_modules[s] for s in ex["summands"]])[0]


def load_corpus(field: Field = QQ, root: Optional[Path] = None) -> Corpus:
    """Load every corpus document over ``field`` (the files' own field is overridden)."""
    root = Path(root) if root else corpus_dir()
    manifest = _read("manifest.json", root)
    algs = {k: load_algebra(root / manifest[k], field) for k in ("A", "C", "B_presented")}

    def modules(key, alg):
        doc = _read(manifest[key], root)
        return {entry["name"]: load_module(alg, entry) for entry in doc["modules"]}

    return Corpus(field, algs["A"], algs["C"], algs["B_presented"], modules("C_modules", algs["C"]),
                  modules("B_modules", algs["B_presented"]), _read(manifest["examples"], root)["examples"])


@dataclass
class BuiltCorpus:
    corpus: Corpus
    bundle: RelationExtensionBundle
    to_constructed: AlgebraMorphism      # B_presented -> constructed B
    to_presented: AlgebraMorphism            # constructed B -> B_presented

    def transport(self, m: RightModule) -> RightModule:
        """A B_presented-module as a module over the constructed B."""
        return restrict_along(self.to_presented, m)

    def to_presented_module(self, m: RightModule) -> RightModule:
        return restrict_along(self.to_constructed, m)


def build_corpus(field: Field = QQ, seed: int = 0) -> BuiltCorpus:
    """Load the corpus, build B from C and match it against the independent presentation."""
    corpus = load_corpus(field)
    bundle = build_relation_extension(corpus.C, seed)
    phi = presented_B_isomorphism(bundle, corpus.B_presented)
    return BuiltCorpus(corpus, bundle, phi, inverse_morphism(phi))


def presented_B_isomorphism(bundle: RelationExtensionBundle, b_presented: FDAlgebra) -> AlgebraMorphism:
    """Arrows of C go to their images under ``sigma``; the extra arrow ``4 -> 1``
    goes to the basis element of ``e_4 E e_1``."""
    c = bundle.C
    images = {}
    for arr in b_presented.presentation.quiver.arrows:
        if arr.name in c.labels:
            images[arr.name] = bundle.ext.sigma(c.basis_vector(c.labels.index(arr.name)))
        else:
            images[arr.name] = e_element(bundle, arr.source, arr.target)
    return B_isomorphism(bundle, b_presented, images)

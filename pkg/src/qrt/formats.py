"""JSON formats for algebras (bound quivers) and modules (representations)."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .algebra import FDAlgebra, ext_quiver, from_bound_quiver
from .errors import InputError
from .linalg import Field
from .modules import RightModule, from_representation, to_representation
from .quiver import Quiver, Relation, build_bound_quiver_basis

Source = Union[str, Path, dict]


def _read(src: Source) -> dict:
    if isinstance(src, dict):
        return src
    try:
        with open(src, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {src}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{src} is not valid JSON: {exc}") from None


def load_algebra(src: Source, field: Optional[Field] = None) -> FDAlgebra:
    """Bound quiver algebra from an algebra document; ``field`` overrides the file's field."""
    data = _read(src)
    try:
        fld = field or Field.from_json(data.get("field", {"kind": "rational"}))
        q = Quiver(data["quiver"]["vertices"], data["quiver"]["arrows"])
        rels = []
        for r in data.get("relations", []):
            terms = [(t.get("coeff", "1"), t["path"]) for t in r["terms"]]
            rels.append(Relation.make(q, terms, fld))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed algebra document: {exc}") from None
    alg = from_bound_quiver(build_bound_quiver_basis(q, rels, fld))
    alg.name = data.get("name", "")
    return alg


def algebra_document(a: FDAlgebra) -> dict:
    """The bound-quiver document of an algebra built by :func:`load_algebra`."""
    pres = getattr(a, "presentation", None)
    if pres is None:
        raise InputError("algebra has no quiver presentation")
    doc = {"field": a.field.to_json(), "quiver": pres.quiver.to_json(),
           "relations": [r.to_json(a.field) for r in pres.relations]}
    if getattr(a, "name", ""):
        doc["name"] = a.name
    return doc


def structure_dump(a: FDAlgebra) -> dict:
    """Structure constants plus the quiver read off from rad / rad^2."""
    doc = a.to_json()
    if a.is_graded:
        doc["ext_quiver"] = ext_quiver(a).to_json()
    return doc


def load_module(a: FDAlgebra, src: Source) -> RightModule:
    data = _read(src)
    try:
        spaces = {str(k): int(v) for k, v in data.get("spaces", {}).items()}
        maps = {str(k): [[a.field(x) for x in row] for row in v] for k, v in data.get("arrow_maps", {}).items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed module document: {exc}") from None
    return from_representation(a, spaces, maps)


def module_document(m: RightModule, algebra_path: Optional[str] = None) -> dict:
    rep = to_representation(m)
    doc = {"spaces": {str(k): int(v) for k, v in rep["spaces"].items()}, "arrow_maps": rep["arrow_maps"]}
    if algebra_path:
        doc = {"algebra": str(algebra_path), **doc}
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)

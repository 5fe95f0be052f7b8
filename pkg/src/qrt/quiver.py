"""Quivers, paths, relations and bases of bound quiver algebras kQ/I.

Paths compose left to right: ``alpha * beta`` means "first alpha, then beta",
so ``alpha: 1 -> 2`` and ``beta: 2 -> 3`` give a path ``1 -> 3``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .errors import InputError, MalformedRelation, NotAdmissible
from .linalg import Field, QQ, _rref_inplace

PATH_BUDGET = 200_000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite quiver with string vertex labels and named arrows."""

    def __init__(self, vertices: Iterable, arrows: Iterable):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex label")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arr = a
            elif isinstance(a, dict):
                arr = Arrow(str(a["name"]), str(a["source"]), str(a["target"]))
            else:
                name, s, t = a
                arr = Arrow(str(name), str(s), str(t))
            if arr.source not in self.index or arr.target not in self.index:
                raise InputError(f"arrow {arr.name} has an undeclared endpoint")
            arrs.append(arr)
        self.arrows = tuple(arrs)
        self.arrow_index = {a.name: k for k, a in enumerate(self.arrows)}
        if len(self.arrow_index) != len(self.arrows):
            raise InputError("duplicate arrow name")
        self._out = {v: [a for a in self.arrows if a.source == v] for v in self.vertices}

    def __eq__(self, other):
        return isinstance(other, Quiver) and (self.vertices, self.arrows) == (other.vertices, other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arrows = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arrows})"

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self.arrow_index[name]]
        except KeyError:
            raise InputError(f"unknown arrow {name!r}") from None

    def path(self, spec) -> "PathExpr":
        """Build a path from a vertex label or a sequence of arrow names."""
        if isinstance(spec, PathExpr):
            return spec
        if isinstance(spec, (str, int)) and str(spec) in self.index:
            v = str(spec)
            return PathExpr(v, v, ())
        names = tuple(str(s) for s in spec)
        if not names:
            raise InputError("an empty arrow list needs a base vertex")
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise InputError(f"arrows {a.name} and {b.name} do not compose")
        return PathExpr(arrows[0].source, arrows[-1].target, names)

    def trivial(self, v) -> "PathExpr":
        v = str(v)
        return PathExpr(v, v, ())

    def paths_of_length(self, n: int) -> list:
        """All paths of length n in canonical order (source index, arrow indices)."""
        if n == 0:
            return [self.trivial(v) for v in self.vertices]
        out = []
        frontier = [PathExpr(a.source, a.target, (a.name,)) for a in self.arrows]
        for _ in range(n - 1):
            nxt = []
            for p in frontier:
                for a in self._out[p.target]:
                    nxt.append(PathExpr(p.source, a.target, p.arrows + (a.name,)))
                    if len(nxt) > PATH_BUDGET:
                        raise NotAdmissible("path enumeration exceeded the budget")
            frontier = nxt
        out = frontier
        out.sort(key=self.sort_key)
        return out

    def sort_key(self, p: "PathExpr"):
        return (len(p.arrows), self.index[p.source], tuple(self.arrow_index[a] for a in p.arrows))

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows]}


@dataclass(frozen=True)
class PathExpr:
    """A path from ``source`` to ``target``; ``arrows`` empty means a trivial path."""

    source: str
    target: str
    arrows: tuple = ()

    @property
    def base_vertex(self) -> str:
        return self.source

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"


def compose(p: PathExpr, q: PathExpr) -> Optional[PathExpr]:
    """Concatenate ``p`` then ``q``; None when ``p`` does not end where ``q`` starts."""
    if p.target != q.source:
        return None
    return PathExpr(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class Relation:
    terms: tuple  # of (coefficient, PathExpr)

    @classmethod
    def make(cls, quiver: Quiver, terms: Sequence, field: Field = QQ) -> "Relation":
        built = []
        for coeff, spec in terms:
            built.append((field(coeff), quiver.path(spec)))
        rel = cls(tuple(built))
        rel.validate()
        return rel

    @property
    def source(self):
        return self.terms[0][1].source

    @property
    def target(self):
        return self.terms[0][1].target

    def validate(self):
        if not self.terms or not any(c for c, _ in self.terms):
            raise MalformedRelation("relation has no nonzero coefficient")
        s, t = self.terms[0][1].source, self.terms[0][1].target
        for c, p in self.terms:
            if (p.source, p.target) != (s, t):
                raise MalformedRelation(f"relation terms are not parallel: {self}")
            if len(p) < 2:
                raise MalformedRelation(f"relation term {p} has length < 2")

    def __str__(self):
        return " + ".join(f"{c}*{p}" for c, p in self.terms)

    def to_json(self, field: Field) -> dict:
        return {"terms": [{"coeff": field.format(c), "path": list(p.arrows)} for c, p in self.terms]}


@dataclass
class BoundQuiverBasis:
    """A basis of kQ/I by coset representatives, with the reduction map."""

    quiver: Quiver
    relations: tuple
    field: Field
    basis_paths: tuple
    nilpotency_degree: int
    _reduction: dict = dc_field(repr=False, default_factory=dict)

    def __post_init__(self):
        self.basis_index = {p: k for k, p in enumerate(self.basis_paths)}

    @property
    def dim(self) -> int:
        return len(self.basis_paths)

    def reduce(self, p: PathExpr) -> tuple:
        """Coordinates of the coset of ``p`` in the basis."""
        if len(p) >= self.nilpotency_degree:
            return (0,) * self.dim
        if p in self.basis_index:
            v = [0] * self.dim
            v[self.basis_index[p]] = 1
            return tuple(v)
        try:
            return self._reduction[p]
        except KeyError:
            raise InputError(f"{p} is not a path of this quiver") from None

    def reduce_element(self, terms: Iterable) -> tuple:
        acc = [0] * self.dim
        for c, p in terms:
            for j, x in enumerate(self.reduce(p)):
                if x:
                    acc[j] += c * x
        return tuple(self.field(x) for x in acc)


def _path_products(quiver: Quiver, rel: Relation, max_len: int, by_length: list):
    """All ``p * rel * q`` of total length ``<= max_len`` as term lists."""
    rmin = min(len(p) for _, p in rel.terms)
    out = []
    for lp in range(0, max_len - rmin + 1):
        for p in by_length[lp]:
            if p.target != rel.source:
                continue
            for lq in range(0, max_len - rmin - lp + 1):
                for q in by_length[lq]:
                    if q.source != rel.target:
                        continue
                    terms = []
                    for c, r in rel.terms:
                        path = PathExpr(p.source, q.target, p.arrows + r.arrows + q.arrows)
                        if len(path) <= max_len:
                            terms.append((c, path))
                    if terms:
                        out.append(terms)
    return out


def build_bound_quiver_basis(quiver: Quiver, relations: Sequence, field: Field = QQ,
                             length_cap: int = 64) -> BoundQuiverBasis:
    """Basis of kQ/I computed degree by degree.

    At truncation length L the ideal ``I + J^(L+1)`` is spanned by the
    products ``p * r * q`` cut off above length L.  The first L for which every
    path of length L lies in that span is the nilpotency degree.  This is exact
    for admissible ideals (those containing a power of the arrow ideal).
    """
    if length_cap < 1:
        raise ValueError("length_cap must be positive")
    rels = []
    for r in relations:
        if not isinstance(r, Relation):
            r = Relation.make(quiver, r, field)
        r.validate()
        rels.append(r)
    by_length = [quiver.paths_of_length(0)]
    for L in range(1, length_cap + 1):
        by_length.append(quiver.paths_of_length(L))
        all_paths = [p for ps in by_length for p in ps]
        if len(all_paths) > PATH_BUDGET:
            raise NotAdmissible("path space too large; the ideal is probably not admissible")
        spans = []
        for r in rels:
            spans.extend(_path_products(quiver, r, L, by_length))
        # columns ordered longest/largest first so that pivots land on long paths
        cols = sorted(all_paths, key=quiver.sort_key, reverse=True)
        col_index = {p: j for j, p in enumerate(cols)}
        rows = []
        for terms in spans:
            row = [0] * len(cols)
            for c, p in terms:
                row[col_index[p]] = field(row[col_index[p]] + c)
            if any(row):
                rows.append(row)
        pivots = _rref_inplace(rows, len(cols), field.p)
        pivset = set(pivots)
        if all(col_index[p] in pivset for p in by_length[L]):
            return _finish(quiver, rels, field, by_length[:L], rows[: len(pivots)], L,
                           cols=cols, pivots=pivots)
    raise NotAdmissible(f"no power of the arrow ideal up to length {length_cap} lies in the ideal")


def _finish(quiver, rels, field, by_length, rows, L, cols=None, pivots=()):
    all_paths = [p for ps in by_length for p in ps]
    if cols is None:
        cols = sorted(all_paths, key=quiver.sort_key, reverse=True)
    col_index = {p: j for j, p in enumerate(cols)}
    pivset = set(pivots)
    basis = sorted((p for p in all_paths if col_index[p] not in pivset), key=quiver.sort_key)
    bidx = {p: k for k, p in enumerate(basis)}
    neg = (lambda x: -x) if field.p is None else (lambda x: (-x) % field.p)
    reduction = {}
    for row, c in zip(rows, pivots):
        p = cols[c]
        if len(p) >= L:
            continue
        v = [0] * len(basis)
        for j, x in enumerate(row):
            if x and j != c:
                v[bidx[cols[j]]] = neg(x)
        reduction[p] = tuple(v)
    return BoundQuiverBasis(quiver, tuple(rels), field, tuple(basis), L, reduction)


def validate_admissible(b: BoundQuiverBasis) -> dict:
    """Report on admissibility of the presentation behind ``b``."""
    short = [str(r) for r in b.relations if any(len(p) < 2 for _, p in r.terms)]
    return {
        "admissible": not short,
        "nilpotency_degree": b.nilpotency_degree,
        "relations_in_square_of_arrow_ideal": not short,
        "dim": b.dim,
    }

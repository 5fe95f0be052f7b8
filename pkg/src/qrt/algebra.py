"""Finite-dimensional algebras given by structure constants.

Most of the package works with *graded basic* algebras: every basis element
``b`` satisfies ``b = e_l b e_r`` for a pair of vertices ``(l, r)``, the
primitive idempotents are themselves basis elements, and a list of basis
elements spanning ``rad / rad^2`` (the generators) is known.  Bound quiver
algebras, their opposites and trivial extensions by graded bimodules are all of
this kind.  Endomorphism algebras of modules are built as raw algebras.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import AlgebraMismatch, BimoduleMismatch, InvariantViolation, NotBasic, RelationViolated
from .linalg import Field, Matrix, Subspace, vec_comb
from .quiver import BoundQuiverBasis, Quiver


class FDAlgebra:
    """An associative unital algebra with basis ``labels``.

    ``products[i][j]`` is the coordinate vector of ``b_i * b_j``.
    """

    def __init__(self, field: Field, labels: Sequence[str], products, unit, idempotents,
                 radical: Optional[Subspace], provenance: str = "raw", *, vertices=None,
                 left_vertex=None, right_vertex=None, generators=None, check: bool = True):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.products = tuple(tuple(tuple(v) for v in row) for row in products)
        self.unit = tuple(unit)
        self.idempotents = tuple(tuple(e) for e in idempotents)
        self.radical = radical
        self.provenance = provenance
        self.vertices = tuple(vertices) if vertices is not None else None
        self.left_vertex = tuple(left_vertex) if left_vertex is not None else None
        self.right_vertex = tuple(right_vertex) if right_vertex is not None else None
        self.generators = tuple(generators) if generators is not None else None
        self._opposite = None
        self._right_mult = {}
        if self.is_graded:
            self.idempotent_basis = tuple(e.index(1) for e in self.idempotents)
            self.basis_in = [[b for b in range(self.dim) if self.left_vertex[b] == i]
                             for i in range(len(self.vertices))]
        if check:
            self.check_axioms()

    # ---------------------------------------------------------------- basics
    @property
    def is_graded(self) -> bool:
        return self.vertices is not None

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, vertices={self.num_vertices}, {self.provenance}, {self.field!r})"

    def basis_vector(self, i: int) -> tuple:
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("coordinate length mismatch")
        coeffs, vecs = [], []
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    coeffs.append(a * b)
                    vecs.append(self.products[i][j])
        return vec_comb(self.field, coeffs, vecs, self.dim)

    def right_mult_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``v -> v * x``."""
        key = tuple(x)
        m = self._right_mult.get(key)
        if m is None:
            rows = [self.multiply(self.basis_vector(i), x) for i in range(self.dim)]
            m = Matrix(self.field, rows, self.dim, _trusted=True)
            self._right_mult[key] = m
        return m

    def left_mult_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``v -> x * v``."""
        rows = [self.multiply(x, self.basis_vector(i)) for i in range(self.dim)]
        return Matrix(self.field, rows, self.dim, _trusted=True)

    def combination(self, coeffs: dict) -> tuple:
        v = [0] * self.dim
        for i, c in coeffs.items():
            v[i] = self.field(c)
        return tuple(v)

    # ---------------------------------------------------------------- checks
    def check_axioms(self):
        f = self.field
        n = self.dim
        ident = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            if self.multiply(self.unit, ident[i]) != ident[i] or self.multiply(ident[i], self.unit) != ident[i]:
                raise InvariantViolation("unit is not a two-sided identity")
        for i in range(n):
            for j in range(n):
                bij = self.products[i][j]
                for k in range(n):
                    left = self.multiply(bij, ident[k])
                    right = self.multiply(ident[i], self.products[j][k])
                    if left != right:
                        raise InvariantViolation(f"multiplication not associative on ({i},{j},{k})")
        total = [0] * n
        for a, e in enumerate(self.idempotents):
            if self.multiply(e, e) != e:
                raise InvariantViolation("idempotent is not idempotent")
            for b, e2 in enumerate(self.idempotents):
                if a != b and any(self.multiply(e, e2)):
                    raise InvariantViolation("idempotents are not orthogonal")
            total = [f(x + y) for x, y in zip(total, e)]
        if tuple(total) != self.unit:
            raise InvariantViolation("idempotents do not sum to the unit")
        if self.radical is not None:
            self._check_radical()
        if self.is_graded:
            self._check_grading()

    def _check_radical(self):
        rad = self.radical
        for v in rad.vectors:
            for i in range(self.dim):
                b = self.basis_vector(i)
                if not rad.contains(self.multiply(v, b)) or not rad.contains(self.multiply(b, v)):
                    raise InvariantViolation("radical is not a two-sided ideal")
        power = rad
        for _ in range(self.dim + 1):
            if power.dim == 0:
                break
            power = Subspace.span(self.field, self.dim,
                                  [self.multiply(x, y) for x in power.vectors for y in rad.vectors])
        if power.dim:
            raise InvariantViolation("radical is not nilpotent")
        for e in self.idempotents:
            if rad.contains(e):
                raise InvariantViolation("radical contains an idempotent")

    def _check_grading(self):
        idem = self.idempotent_basis
        for b in range(self.dim):
            l, r = self.left_vertex[b], self.right_vertex[b]
            if self.products[idem[l]][b] != self.basis_vector(b) or self.products[b][idem[r]] != self.basis_vector(b):
                raise InvariantViolation(f"basis element {self.labels[b]} is not homogeneous")

    # ------------------------------------------------------------- structure
    def radical_power(self, k: int) -> Subspace:
        power = self.radical
        for _ in range(k - 1):
            power = Subspace.span(self.field, self.dim,
                                  [self.multiply(x, y) for x in power.vectors for y in self.radical.vectors])
        return power

    def opposite(self) -> "FDAlgebra":
        if self._opposite is None:
            n = self.dim
            prods = [[self.products[j][i] for j in range(n)] for i in range(n)]
            op = FDAlgebra(self.field, self.labels, prods, self.unit, self.idempotents, self.radical,
                           "opposite", vertices=self.vertices, left_vertex=self.right_vertex,
                           right_vertex=self.left_vertex, generators=self.generators, check=False)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_json(self) -> dict:
        f = self.field
        return {
            "field": f.to_json(),
            "labels": list(self.labels),
            "vertices": list(self.vertices) if self.vertices else None,
            "unit": [f.format(x) for x in self.unit],
            "idempotents": [[f.format(x) for x in e] for e in self.idempotents],
            "products": {f"{i},{j}": [f.format(x) for x in self.products[i][j]]
                         for i in range(self.dim) for j in range(self.dim) if any(self.products[i][j])},
            "radical": [[f.format(x) for x in v] for v in self.radical.vectors] if self.radical else None,
            "provenance": self.provenance,
        }


def from_bound_quiver(b: BoundQuiverBasis) -> FDAlgebra:
    q = b.quiver
    n = b.dim
    prods = []
    for p in b.basis_paths:
        row = []
        for r in b.basis_paths:
            if p.target != r.source:
                row.append((0,) * n)
            else:
                row.append(b.reduce(type(p)(p.source, r.target, p.arrows + r.arrows)))
        prods.append(row)
    idem = [b.reduce(q.trivial(v)) for v in q.vertices]
    unit = tuple(sum(col) for col in zip(*idem))
    rad = Subspace.span(b.field, n, [b.reduce(p) for p in b.basis_paths if len(p)])
    labels = [str(p) for p in b.basis_paths]
    gens = [b.basis_index[q.path([a.name])] for a in q.arrows]
    alg = FDAlgebra(b.field, labels, prods, unit, idem, rad, "bound_quiver",
                    vertices=q.vertices,
                    left_vertex=[q.index[p.source] for p in b.basis_paths],
                    right_vertex=[q.index[p.target] for p in b.basis_paths],
                    generators=gens)
    alg.presentation = b
    return alg


def multiply(a: FDAlgebra, x, y) -> tuple:
    return a.multiply(x, y)


def opposite(a: FDAlgebra) -> FDAlgebra:
    return a.opposite()


def ext_quiver(a: FDAlgebra) -> Quiver:
    """Vertices = idempotents, arrows i -> j counted by ``e_i (rad/rad^2) e_j``."""
    if not a.is_graded:
        raise NotBasic("ext_quiver needs a graded basic algebra")
    idem = set(a.idempotent_basis)
    expected = Subspace.span(a.field, a.dim, [a.basis_vector(b) for b in range(a.dim) if b not in idem])
    if expected != a.radical:
        raise NotBasic("radical is not spanned by the non-idempotent basis elements")
    arrows = []
    for g in a.generators:
        arrows.append((a.labels[g], a.vertices[a.left_vertex[g]], a.vertices[a.right_vertex[g]]))
    return Quiver(a.vertices, arrows)


def arrow_counts(q: Quiver) -> dict:
    counts = {}
    for arr in q.arrows:
        counts[(arr.source, arr.target)] = counts.get((arr.source, arr.target), 0) + 1
    return counts


def greedy_generators(a: FDAlgebra) -> list:
    """Radical basis elements forming a basis of ``rad / rad^2``."""
    rad2 = a.radical_power(2)
    idem = set(a.idempotent_basis)
    span = rad2
    gens = []
    for b in range(a.dim):
        if b in idem:
            continue
        v = a.basis_vector(b)
        if not span.contains(v):
            gens.append(b)
            span = span.sum(Subspace.span(a.field, a.dim, [v]))
    return gens


class AlgebraMorphism:
    """A unital algebra map given by the images of the source basis (rows)."""

    def __init__(self, source: FDAlgebra, target: FDAlgebra, matrix: Matrix, check: bool = True):
        if matrix.shape != (source.dim, target.dim):
            raise ValueError("morphism matrix has the wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self.check()

    def __call__(self, x) -> tuple:
        return self.matrix.vecmul(x)

    def check(self):
        s, t = self.source, self.target
        if self(s.unit) != t.unit:
            raise InvariantViolation("morphism does not preserve the unit")
        for i in range(s.dim):
            for j in range(s.dim):
                if self(s.products[i][j]) != t.multiply(self.matrix.rows[i], self.matrix.rows[j]):
                    raise InvariantViolation("morphism is not multiplicative")

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self`` then ``other``."""
        return AlgebraMorphism(self.source, other.target, self.matrix @ other.matrix, check=False)

    def is_identity(self) -> bool:
        return self.source is self.target and self.matrix == Matrix.identity(self.source.field, self.source.dim)

    def opposite(self) -> "AlgebraMorphism":
        return AlgebraMorphism(self.source.opposite(), self.target.opposite(), self.matrix, check=False)


def morphism_from_arrow_images(source: FDAlgebra, target: FDAlgebra, images: dict,
                               vertex_images: Optional[dict] = None) -> AlgebraMorphism:
    """Algebra map out of a bound quiver algebra determined by arrow images.

    Vertices go to the target idempotent with the same label unless
    ``vertex_images`` says otherwise.  Relations are checked to map to zero.
    """
    pres = getattr(source, "presentation", None)
    if pres is None:
        raise AlgebraMismatch("source must come from a bound quiver")
    q = pres.quiver
    vimg = {}
    for v in q.vertices:
        w = (vertex_images or {}).get(v, v)
        vimg[v] = target.idempotents[target.vertices.index(w)]
    aimg = {name: tuple(target.field(x) for x in vec) for name, vec in images.items()}

    def image_of_path(p):
        x = vimg[p.source]
        for name in p.arrows:
            x = target.multiply(x, aimg[name])
        return x

    for rel in pres.relations:
        acc = [0] * target.dim
        for c, p in rel.terms:
            for j, y in enumerate(image_of_path(p)):
                acc[j] += c * y
        if any(target.field(x) for x in acc):
            raise RelationViolated(str(rel))
    rows = [image_of_path(p) for p in pres.basis_paths]
    return AlgebraMorphism(source, target, Matrix(target.field, rows, target.dim))


class Bimodule:
    """A (left_algebra, right_algebra)-bimodule.

    ``left_action[c]`` is the matrix of ``x -> c . x`` and ``right_action[d]``
    the matrix of ``x -> x . d``, both acting on row vectors from the right.
    ``left_vertex`` / ``right_vertex`` record a homogeneous basis when known.
    """

    def __init__(self, left_algebra: FDAlgebra, right_algebra: FDAlgebra, dim: int,
                 left_action: Sequence[Matrix], right_action: Sequence[Matrix],
                 left_vertex=None, right_vertex=None, labels=None, check: bool = True):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)
        self.left_vertex = tuple(left_vertex) if left_vertex is not None else None
        self.right_vertex = tuple(right_vertex) if right_vertex is not None else None
        self.labels = tuple(labels) if labels else tuple(f"x{k}" for k in range(dim))
        if check:
            self.check()

    @property
    def field(self):
        return self.left_algebra.field

    def left_matrix(self, c: Sequence) -> Matrix:
        return _combine(self.field, c, self.left_action, self.dim)

    def right_matrix(self, d: Sequence) -> Matrix:
        return _combine(self.field, d, self.right_action, self.dim)

    def check(self):
        la, ra = self.left_algebra, self.right_algebra
        ident = Matrix.identity(self.field, self.dim)
        if self.left_matrix(la.unit) != ident or self.right_matrix(ra.unit) != ident:
            raise InvariantViolation("bimodule actions are not unital")
        for i in range(la.dim):
            for j in range(la.dim):
                # (c_i c_j) . x = c_i . (c_j . x)
                if self.left_matrix(la.products[i][j]) != self.left_action[j] @ self.left_action[i]:
                    raise InvariantViolation("left action is not associative")
        for i in range(ra.dim):
            for j in range(ra.dim):
                if self.right_matrix(ra.products[i][j]) != self.right_action[i] @ self.right_action[j]:
                    raise InvariantViolation("right action is not associative")
        for lm in self.left_action:
            for rm in self.right_action:
                if lm @ rm != rm @ lm:
                    raise InvariantViolation("left and right actions do not commute")

    def opposite(self) -> "Bimodule":
        """The same space as a (right^op, left^op)-bimodule."""
        return Bimodule(self.right_algebra.opposite(), self.left_algebra.opposite(), self.dim,
                        self.right_action, self.left_action, self.right_vertex, self.left_vertex,
                        self.labels, check=False)


def _combine(field, coeffs, mats, n) -> Matrix:
    from .linalg import mat_comb
    return mat_comb(field, coeffs, mats, n, n)


def regular_bimodule(a: FDAlgebra) -> Bimodule:
    left = [a.left_mult_matrix(a.basis_vector(i)) for i in range(a.dim)]
    right = [a.right_mult_matrix(a.basis_vector(i)) for i in range(a.dim)]
    return Bimodule(a, a, a.dim, left, right, a.left_vertex, a.right_vertex, a.labels, check=False)


def restricted_bimodule(sigma: AlgebraMorphism, right: Optional[AlgebraMorphism] = None) -> Bimodule:
    """The target of ``sigma`` as a (source, target)-bimodule (or (source, source) with ``right``)."""
    b = sigma.target
    left = [b.left_mult_matrix(sigma.matrix.rows[i]) for i in range(sigma.source.dim)]
    if right is None:
        rgt = [b.right_mult_matrix(b.basis_vector(i)) for i in range(b.dim)]
        ralg = b
    else:
        rgt = [b.right_mult_matrix(right.matrix.rows[i]) for i in range(right.source.dim)]
        ralg = right.source
    return Bimodule(sigma.source, ralg, b.dim, left, rgt, None, b.right_vertex if right is None else None,
                    b.labels, check=False)


class SplitExtensionData:
    """``B`` with ``sigma: C -> B``, ``pi: B -> C``, ``pi o sigma = 1`` and ``ker pi = E``."""

    def __init__(self, C: FDAlgebra, B: FDAlgebra, sigma: AlgebraMorphism, pi: AlgebraMorphism,
                 E: Bimodule, E_embedding: Matrix, check: bool = True):
        self.C, self.B, self.sigma, self.pi, self.E, self.E_embedding = C, B, sigma, pi, E, E_embedding
        self._opposite = None
        if check:
            self.check()

    def check(self):
        C, B = self.C, self.B
        if self.sigma.matrix @ self.pi.matrix != Matrix.identity(C.field, C.dim):
            raise InvariantViolation("pi o sigma is not the identity")
        ker = self.pi.matrix.kernel()
        if ker != self.E_embedding.row_space() or self.E_embedding.rank() != self.E.dim:
            raise InvariantViolation("E is not the kernel of pi")
        for x in self.E_embedding.rows:
            for y in self.E_embedding.rows:
                if any(B.multiply(x, y)):
                    raise InvariantViolation("E squared is not zero")
        if B.dim != C.dim + self.E.dim:
            raise InvariantViolation("dimension is not additive")

    def opposite(self) -> "SplitExtensionData":
        if self._opposite is None:
            op = SplitExtensionData(self.C.opposite(), self.B.opposite(), self.sigma.opposite(),
                                    self.pi.opposite(), self.E.opposite(), self.E_embedding, check=False)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def E_element(self, k: int) -> tuple:
        return self.E_embedding.rows[k]


def trivial_extension(c: FDAlgebra, e: Bimodule, e_labels: Optional[Sequence[str]] = None) -> SplitExtensionData:
    """``B = C x E`` with ``(c, e)(c', e') = (cc', ce' + ec')``."""
    if e.left_algebra is not c or e.right_algebra is not c:
        raise BimoduleMismatch("E must be a C-C-bimodule over the given C")
    if e.dim and (e.left_vertex is None or e.right_vertex is None):
        raise BimoduleMismatch("E needs a homogeneous basis")
    f = c.field
    n, m = c.dim, e.dim
    N = n + m
    zero = (0,) * N

    def pad_c(v):
        return tuple(v) + (0,) * m

    def pad_e(v):
        return (0,) * n + tuple(v)

    unit_vecs = [tuple(1 if j == k else 0 for j in range(m)) for k in range(m)]
    prods = []
    for i in range(N):
        row = []
        for j in range(N):
            if i < n and j < n:
                row.append(pad_c(c.products[i][j]))
            elif i < n:
                row.append(pad_e(e.left_action[i].vecmul(unit_vecs[j - n])))
            elif j < n:
                row.append(pad_e(e.right_action[j].vecmul(unit_vecs[i - n])))
            else:
                row.append(zero)
        prods.append(row)
    labels = list(c.labels) + list(e_labels or e.labels)
    rad = Subspace.span(f, N, [pad_c(v) for v in c.radical.vectors] + [pad_e(u) for u in unit_vecs])
    B = FDAlgebra(f, labels, prods, pad_c(c.unit), [pad_c(x) for x in c.idempotents], rad,
                  "trivial_extension", vertices=c.vertices,
                  left_vertex=list(c.left_vertex) + list(e.left_vertex or ()),
                  right_vertex=list(c.right_vertex) + list(e.right_vertex or ()),
                  generators=[])
    B.generators = tuple(greedy_generators(B))
    sigma = AlgebraMorphism(c, B, Matrix(f, [pad_c(r) for r in Matrix.identity(f, n).rows], N))
    pi_rows = [r[:n] for r in Matrix.identity(f, N).rows[:n]] + [(0,) * n] * m
    pi = AlgebraMorphism(B, c, Matrix(f, pi_rows, n))
    emb = Matrix(f, [pad_e(u) for u in unit_vecs], N) if m else Matrix.zeros(f, 0, N)
    return SplitExtensionData(c, B, sigma, pi, e, emb)

"""Exact dense linear algebra over the rationals and prime fields.

Vectors are row vectors and matrices act on the right (``v @ A``), so a
linear map ``V -> W`` with ``dim V = n`` and ``dim W = m`` is an ``n x m``
matrix.  Rational entries are ``int`` or ``fractions.Fraction``; entries over
a prime field are ints in ``range(p)``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence


class Field:
    """The scalar field: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            p = int(p)
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                x = Fraction(x.strip())
            elif not isinstance(x, (int, Fraction)):
                x = Fraction(x)
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / x
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(self(x))

    def random(self, rng: random.Random, bound: int = 1000):
        if self.p is None:
            return rng.randint(-bound, bound)
        return rng.randrange(self.p)

    def elements(self):
        if self.p is None:
            raise ValueError("QQ is infinite")
        return range(self.p)

    def to_json(self) -> dict:
        return {"kind": "rational"} if self.p is None else {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, data) -> "Field":
        if isinstance(data, str):
            data = {"kind": data}
        kind = data.get("kind", "rational")
        if kind in ("rational", "rationals", "q", "Q"):
            return QQ
        if kind == "prime":
            return GF(data["p"])
        raise ValueError(f"unknown field kind {kind!r}")


QQ = Field()


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


def _rref_inplace(rows: list, ncols: int, p: Optional[int]) -> list:
    """Reduce ``rows`` (list of lists, mutated) to RREF; return pivot columns."""
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            if p is None:
                inv = Fraction(1) / lead
                prow = [x * inv if x else 0 for x in prow]
            else:
                inv = pow(lead, -1, p)
                prow = [x * inv % p for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            if p is None:
                for j in nz:
                    row[j] -= f * prow[j]
            else:
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    if p is None:
        # normalise integral Fractions so that equal matrices compare/hash equal
        for row in rows[:r]:
            for j, x in enumerate(row):
                if isinstance(x, Fraction) and x.denominator == 1:
                    row[j] = x.numerator
    return pivots


class Matrix:
    """Immutable exact matrix.  ``rows`` is a tuple of tuples."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: Optional[int] = None, _trusted=False):
        self.field = field
        if _trusted:
            rows = tuple(rows)
        else:
            rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [(0,) * ncols for _ in range(nrows)], ncols, _trusted=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)], n, _trusted=True)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(field, [tuple(c[i] for c in cols) for i in range(nrows)], len(cols), _trusted=True)

    @classmethod
    def _raw(cls, field, rows, ncols):
        return cls(field, [tuple(r) for r in rows], ncols, _trusted=True)

    # basic protocol -----------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field!r}>[{body}]"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def to_strings(self):
        return [[self.field.format(x) for x in r] for r in self.rows]

    # arithmetic -----------------------------------------------------------
    def _reduce_row(self, row):
        p = self.field.p
        if p is None:
            return tuple(row)
        return tuple(x % p for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = [self._reduce_row([a + b for a, b in zip(r, s)]) for r, s in zip(self.rows, other.rows)]
        return Matrix(self.field, rows, self.ncols, _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = [self._reduce_row([a - b for a, b in zip(r, s)]) for r, s in zip(self.rows, other.rows)]
        return Matrix(self.field, rows, self.ncols, _trusted=True)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        rows = [self._reduce_row([c * a for a in r]) for r in self.rows]
        return Matrix(self.field, rows, self.ncols, _trusted=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        n = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(n):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            if p is not None:
                acc = [x % p for x in acc]
            out.append(tuple(acc))
        return Matrix(self.field, out, n, _trusted=True)

    def vecmul(self, v: Sequence) -> tuple:
        """Row vector times matrix."""
        p = self.field.p
        acc = [0] * self.ncols
        for a, row in zip(v, self.rows):
            if a:
                for j, b in enumerate(row):
                    if b:
                        acc[j] += a * b
        if p is not None:
            return tuple(x % p for x in acc)
        return tuple(acc)

    @property
    def T(self) -> "Matrix":
        rows = self.rows
        return Matrix(self.field, [tuple(r[j] for r in rows) for j in range(self.ncols)], self.nrows,
                      _trusted=True)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [tuple(self.rows[i][j] for j in cols) for i in rows], len(cols), _trusted=True)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols, _trusted=True)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row mismatch")
        return Matrix(self.field, [a + b for a, b in zip(self.rows, other.rows)], self.ncols + other.ncols,
                      _trusted=True)

    def trace(self):
        s = sum(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))
        return self.field(s)

    def flatten(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    # elimination ----------------------------------------------------------
    def rref(self) -> tuple["Matrix", list]:
        rows = [list(r) for r in self.rows]
        pivots = _rref_inplace(rows, self.ncols, self.field.p)
        return Matrix(self.field, [tuple(r) for r in rows], self.ncols, _trusted=True), pivots

    def rank(self) -> int:
        rows = [list(r) for r in self.rows]
        return len(_rref_inplace(rows, self.ncols, self.field.p))

    def row_space(self) -> "Subspace":
        return Subspace.span(self.field, self.ncols, self.rows)

    def kernel(self) -> "Subspace":
        """Left kernel ``{v : v @ self == 0}``."""
        basis = nullspace(self.field, self.T.rows, self.nrows)
        return Subspace.span(self.field, self.nrows, basis)

    def right_kernel(self) -> list:
        return nullspace(self.field, self.rows, self.ncols)

    def solve(self, b: Sequence) -> Optional[tuple]:
        """Some ``x`` with ``x @ self == b``, or None."""
        if len(b) != self.ncols:
            raise ValueError("length mismatch")
        return solve_left(self, b)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        ident = Matrix.identity(self.field, n)
        aug = [list(r) + list(i) for r, i in zip(self.rows, ident.rows)]
        piv = _rref_inplace(aug, 2 * n, self.field.p)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(self.field, [tuple(r[n:]) for r in aug], n, _trusted=True)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def _prepared_rows(field: Field, rows: Iterable[Sequence]) -> list:
    p = field.p
    if p is None:
        return [list(r) for r in rows if any(r)]
    out = []
    for r in rows:
        r = [x % p for x in r]
        if any(r):
            out.append(r)
    return out


def nullspace(field: Field, eq_rows: Sequence[Sequence], nvars: int) -> list:
    """Basis of ``{x : sum_j row[j] * x[j] == 0 for every row}``."""
    return nullspace_with_free(field, eq_rows, nvars)[0]


def nullspace_with_free(field: Field, eq_rows: Sequence[Sequence], nvars: int) -> tuple:
    """Nullspace basis plus the free variables: basis vector k is 1 at ``free[k]``
    and 0 at every other free variable, so coordinates are read off directly."""
    rows = _prepared_rows(field, eq_rows)
    pivots = _rref_inplace(rows, nvars, field.p)
    pivset = set(pivots)
    free = [j for j in range(nvars) if j not in pivset]
    basis = []
    neg = (lambda x: -x) if field.p is None else (lambda x: (-x) % field.p)
    for f in free:
        v = [0] * nvars
        v[f] = 1
        for r, c in enumerate(pivots):
            a = rows[r][f]
            if a:
                v[c] = neg(a)
        basis.append(tuple(v))
    return basis, free


def solve_left(a: Matrix, b: Sequence) -> Optional[tuple]:
    """Solve ``x @ a == b``: columns of ``a`` give the equations."""
    n = a.nrows
    p = a.field.p
    if n == 0:
        return () if not any(b) else None
    # one equation per column j: sum_i x_i a[i][j] = b[j]
    rows = [[a.rows[i][j] for i in range(n)] + [b[j]] for j in range(a.ncols)]
    if p is not None:
        rows = [[x % p for x in r] for r in rows]
    pivots = _rref_inplace(rows, n + 1, p)
    if pivots and pivots[-1] == n:
        return None
    x = [0] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return tuple(x)


class Subspace:
    """A subspace of ``field^ambient_dim`` with RREF basis rows."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: Matrix, pivots: list):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = _prepared_rows(field, vectors)
        pivots = _rref_inplace(rows, ambient_dim, field.p)
        rows = rows[: len(pivots)]
        return cls(field, ambient_dim, Matrix(field, [tuple(r) for r in rows], ambient_dim, _trusted=True), pivots)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.zeros(field, 0, n), [])

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n), list(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> tuple:
        return self.basis.rows

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: Sequence) -> list:
        """``v`` minus its projection along the pivots (zero iff v in self)."""
        p = self.field.p
        v = list(v)
        for row, c in zip(self.basis.rows, self.pivots):
            f = v[c]
            if f:
                for j, x in enumerate(row):
                    if x:
                        v[j] = v[j] - f * x if p is None else (v[j] - f * x) % p
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def coordinates(self, v: Sequence) -> Optional[tuple]:
        """Coordinates of ``v`` in the RREF basis, or None if ``v`` is outside."""
        if any(self.reduce(v)):
            return None
        return tuple(v[c] for c in self.pivots)

    def complement_indices(self) -> list:
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, self.vectors + other.vectors)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.dim or not other.dim:
            return Subspace.zero(self.field, self.ambient_dim)
        stacked = self.basis.vstack(other.basis)
        ker = stacked.kernel()
        k = self.dim
        vecs = [self.basis.vecmul(v[:k]) for v in ker.vectors]
        return Subspace.span(self.field, self.ambient_dim, vecs)

    def quotient_projection(self) -> Matrix:
        """Matrix ``ambient -> ambient/self`` in the complement coordinates."""
        comp = self.complement_indices()
        rows = []
        for i in range(self.ambient_dim):
            e = [0] * self.ambient_dim
            e[i] = 1
            r = self.reduce(e)
            rows.append(tuple(r[j] for j in comp))
        return Matrix(self.field, rows, len(comp), _trusted=True)


def subspace_ops(u: Subspace, v: Subspace) -> dict:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return {
        "sum": u.sum(v),
        "intersection": u.intersection(v),
        "contains": u.contains_space(v),
        "quotient_projection": u.quotient_projection(),
    }


def rref(m: Matrix):
    return m.rref()


def kernel(m: Matrix) -> Subspace:
    return m.kernel()


def solve(a: Matrix, b: Sequence):
    return a.solve(b)


def vec_add(field: Field, u: Sequence, v: Sequence) -> tuple:
    if field.p is None:
        return tuple(a + b for a, b in zip(u, v))
    return tuple((a + b) % field.p for a, b in zip(u, v))


def vec_scale(field: Field, c, v: Sequence) -> tuple:
    if field.p is None:
        return tuple(c * a for a in v)
    return tuple(c * a % field.p for a in v)


def vec_comb(field: Field, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> tuple:
    """``sum(c * v)`` over paired coefficients and vectors of length ``n``."""
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    acc[j] += c * x
    if field.p is not None:
        return tuple(x % field.p for x in acc)
    return tuple(acc)


def mat_comb(field: Field, coeffs: Sequence, mats: Sequence[Matrix], nrows: int, ncols: int) -> Matrix:
    """Linear combination of equally shaped matrices."""
    acc = [[0] * ncols for _ in range(nrows)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(m.rows):
            ai = acc[i]
            for j, x in enumerate(r):
                if x:
                    ai[j] += c * x
    if field.p is not None:
        acc = [[x % field.p for x in r] for r in acc]
    return Matrix(field, [tuple(r) for r in acc], ncols, _trusted=True)


def block_diagonal(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append((0,) * off + r + (0,) * (nc - off - b.ncols))
        off += b.ncols
    return Matrix(field, rows, nc, _trusted=True)

"""Exact linear algebra over Q and prime fields.

Vectors are plain lists/tuples of scalars; every container knows its field.
Subspaces are stored through their reduced row echelon basis, so structural
equality of ``Subspace`` values is equality of subspaces.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, FieldMismatch
from .fields import Field


def vec_zero(field, n):
    z = field.zero()
    return [z] * n


def vec_add(field, u, v):
    return [field.add(a, b) for a, b in zip(u, v)]


def vec_sub(field, u, v):
    return [field.sub(a, b) for a, b in zip(u, v)]


def vec_scale(field, c, u):
    return [field.mul(c, a) for a in u]


def vec_is_zero(field, u):
    return all(field.is_zero(a) for a in u)


def vec_eq(field, u, v):
    return len(u) == len(v) and all(field.is_zero(field.sub(a, b)) for a, b in zip(u, v))


def unit_vector(field, n, i):
    v = vec_zero(field, n)
    v[i] = field.one()
    return v


class Matrix:
    """Immutable dense matrix; entries[i][j] is row i, column j."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence], rows=None, cols=None):
        self.field = field
        ents = tuple(tuple(row) for row in entries)
        if rows is None:
            rows = len(ents)
        if cols is None:
            cols = len(ents[0]) if ents else 0
        for row in ents:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.cols = cols
        self.entries = ents

    @classmethod
    def zero(cls, field, rows, cols):
        z = field.zero()
        return cls(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, rows, len(rows), cols)

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def to_lists(self):
        return [list(r) for r in self.entries]

    def is_zero(self):
        f = self.field
        return all(f.is_zero(a) for row in self.entries for a in row)

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def add(self, other):
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix add shape mismatch")
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)],
                      self.rows, self.cols)

    def sub(self, other):
        self._check_field(other)
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)],
                      self.rows, self.cols)

    def neg(self):
        f = self.field
        return Matrix(f, [[f.neg(a) for a in r] for r in self.entries], self.rows, self.cols)

    def scale(self, c):
        f = self.field
        return Matrix(f, [[f.mul(c, a) for a in r] for r in self.entries], self.rows, self.cols)

    def mul(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        z = f.zero()
        out = []
        ot = other.entries
        for i in range(self.rows):
            ri = self.entries[i]
            row = [z] * other.cols
            for k in range(self.cols):
                a = ri[k]
                if f.is_zero(a):
                    continue
                rk = ot[k]
                for j in range(other.cols):
                    b = rk[j]
                    if not f.is_zero(b):
                        row[j] = f.add(row[j], f.mul(a, b))
            out.append(row)
        return Matrix(f, out, self.rows, other.cols)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch("matrix-vector shape mismatch")
        f = self.field
        z = f.zero()
        out = [z] * self.rows
        for j, c in enumerate(v):
            if f.is_zero(c):
                continue
            for i in range(self.rows):
                a = self.entries[i][j]
                if not f.is_zero(a):
                    out[i] = f.add(out[i], f.mul(a, c))
        return out

    def transpose(self):
        return Matrix(self.field, [[self.entries[i][j] for i in range(self.rows)]
                                   for j in range(self.cols)], self.cols, self.rows)

    def vstack(self, other):
        self._check_field(other)
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.field, list(self.entries) + list(other.entries),
                      self.rows + other.rows, self.cols)

    def hstack(self, other):
        self._check_field(other)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.field, [list(r1) + list(r2) for r1, r2
                                   in zip(self.entries, other.entries)],
                      self.rows, self.cols + other.cols)

    def rank(self):
        return rref(self)[1]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            return False
        f = self.field
        return all(f.is_zero(f.sub(a, b))
                   for r1, r2 in zip(self.entries, other.entries)
                   for a, b in zip(r1, r2))

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(a) for a in row) for row in self.entries)
        return f"Matrix({self.field}, {self.rows}x{self.cols}: [{body}])"


def rref(m: Matrix):
    """Reduced row echelon form; returns (matrix, rank)."""
    f = m.field
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        sel = None
        for r in range(pivot_row, nrows):
            if not f.is_zero(rows[r][col]):
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = f.inv(rows[pivot_row][col])
        rows[pivot_row] = [f.mul(inv, a) for a in rows[pivot_row]]
        for r in range(nrows):
            if r == pivot_row:
                continue
            c = rows[r][col]
            if f.is_zero(c):
                continue
            prow = rows[pivot_row]
            rows[r] = [f.sub(a, f.mul(c, b)) for a, b in zip(rows[r], prow)]
        pivot_row += 1
    return Matrix(f, rows, nrows, ncols), pivot_row


def _rref_rows(field, vectors, ambient_dim):
    """RREF of a list of vectors; returns (nonzero rows, pivot columns)."""
    if not vectors:
        return [], []
    m, rank = rref(Matrix.from_rows(field, vectors, ambient_dim))
    rows = [list(m.entries[i]) for i in range(rank)]
    pivots = []
    for r in rows:
        for j, a in enumerate(r):
            if not field.is_zero(a):
                pivots.append(j)
                break
    return rows, pivots


class Subspace:
    """Subspace of field^n held by its canonical (RREF) basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length != ambient dimension")
        rows, pivots = _rref_rows(field, vectors, ambient_dim)
        return cls(field, ambient_dim, rows, pivots)

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(field, ambient_dim, [], [])

    @classmethod
    def full(cls, field, ambient_dim):
        rows = [unit_vector(field, ambient_dim, i) for i in range(ambient_dim)]
        return cls(field, ambient_dim, rows, list(range(ambient_dim)))

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Residual of v after eliminating along the basis."""
        f = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if f.is_zero(c):
                continue
            v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return vec_is_zero(self.field, self.reduce(v))

    def coords(self, v) -> Optional[list]:
        """Coefficients of v in the canonical basis, or None if outside."""
        if not self.contains(v):
            return None
        return [v[p] for p in self.pivots]

    def from_coords(self, coeffs):
        f = self.field
        out = vec_zero(f, self.ambient_dim)
        for c, row in zip(coeffs, self.basis):
            if not f.is_zero(c):
                out = vec_add(f, out, vec_scale(f, c, row))
        return out

    def add(self, other: "Subspace") -> "Subspace":
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspace sum in different ambients")
        return Subspace.span(self.field, list(self.basis) + list(other.basis),
                             self.ambient_dim)

    __add__ = add

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus-free route: x in both iff x = A^T a = B^T b; solve stacked kernel.
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        f = self.field
        a = Matrix.from_rows(f, self.basis, self.ambient_dim).transpose()
        b = Matrix.from_rows(f, other.basis, self.ambient_dim).transpose()
        stacked = a.hstack(b.neg())
        ker = kernel(stacked)
        vecs = []
        for row in ker.basis:
            coeffs = row[:self.dim]
            vecs.append(self.from_coords(coeffs))
        return Subspace.span(f, vecs, self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots
                and all(vec_eq(self.field, a, b) for a, b in zip(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.pivots, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field}^{self.ambient_dim})"


def span(field, vectors, ambient_dim) -> Subspace:
    return Subspace.span(field, vectors, ambient_dim)


def member(s: Subspace, v) -> bool:
    return s.contains(v)


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    return a.add(b)


def kernel(m: Matrix) -> Subspace:
    """Right null space of m."""
    f = m.field
    r, rank = rref(m)
    pivots = []
    row_idx = 0
    pivot_of_col = {}
    for i in range(rank):
        for j in range(m.cols):
            if not f.is_zero(r.entries[i][j]):
                pivots.append(j)
                pivot_of_col[j] = i
                break
    free_cols = [j for j in range(m.cols) if j not in pivot_of_col]
    vecs = []
    for fc in free_cols:
        v = vec_zero(f, m.cols)
        v[fc] = f.one()
        for pc, prow in pivot_of_col.items():
            v[pc] = f.neg(r.entries[prow][fc])
        vecs.append(v)
    return Subspace.span(f, vecs, m.cols)


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.field, [m.col(j) for j in range(m.cols)], m.rows)


def solve(m: Matrix, b) -> Optional[list]:
    """One solution x of m x = b, or None."""
    f = m.field
    aug = m.hstack(Matrix.from_cols(f, [list(b)], m.rows))
    r, rank = rref(aug)
    # inconsistent iff a pivot lands in the last column
    for i in range(rank):
        lead = None
        for j in range(aug.cols):
            if not f.is_zero(r.entries[i][j]):
                lead = j
                break
        if lead == m.cols:
            return None
    x = vec_zero(f, m.cols)
    row_i = 0
    for i in range(rank):
        lead = None
        for j in range(m.cols):
            if not f.is_zero(r.entries[i][j]):
                lead = j
                break
        if lead is None:
            continue
        x[lead] = r.entries[i][m.cols]
        row_i += 1
    return x


def inverse(m: Matrix) -> Optional[Matrix]:
    if m.rows != m.cols:
        return None
    f = m.field
    aug = m.hstack(Matrix.identity(f, m.rows))
    r, rank = rref(aug)
    if rank < m.rows:
        return None
    left = [row[:m.cols] for row in r.entries[:m.rows]]
    if Matrix(f, left) != Matrix.identity(f, m.rows):
        return None
    return Matrix(f, [row[m.cols:] for row in r.entries[:m.rows]])


class QuotientMap:
    """Coordinates for field^n / S.

    ``section_cols`` are the non-pivot standard basis indices; their classes
    form the quotient basis.  ``project`` is the (n-dim(S)) x n matrix of the
    canonical projection; ``section`` embeds quotient coordinates back as the
    corresponding standard basis vectors.  project . section = identity and
    the kernel of project is exactly S.
    """

    __slots__ = ("field", "ambient_dim", "sub", "section_cols", "section", "project")

    def __init__(self, ambient_dim: int, sub: Subspace):
        if sub.ambient_dim != ambient_dim:
            raise DimensionMismatch("subspace not in the requested ambient")
        f = sub.field
        self.field = f
        self.ambient_dim = ambient_dim
        self.sub = sub
        piv = set(sub.pivots)
        self.section_cols = [j for j in range(ambient_dim) if j not in piv]
        qdim = len(self.section_cols)
        z, o = f.zero(), f.one()
        proj_rows = []
        for c in self.section_cols:
            row = [z] * ambient_dim
            row[c] = o
            for prow, p in zip(sub.basis, sub.pivots):
                if not f.is_zero(prow[c]):
                    row[p] = f.neg(prow[c])
            proj_rows.append(row)
        self.project = Matrix(f, proj_rows, qdim, ambient_dim)
        sec_cols = [unit_vector(f, ambient_dim, c) for c in self.section_cols]
        self.section = Matrix.from_cols(f, sec_cols, ambient_dim)

    @property
    def dim(self):
        return len(self.section_cols)


def quotient_basis(ambient_dim: int, sub: Subspace) -> QuotientMap:
    return QuotientMap(ambient_dim, sub)

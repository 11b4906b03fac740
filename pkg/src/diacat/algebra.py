"""Finite-dimensional algebras given by structure constants.

Four flavors are supported:

* ``dias`` -- diassociative algebras (dialgebras): two products ``-|`` (left)
  and ``|-`` (right) subject to five axioms,
* ``lb``   -- (right) Leibniz algebras: one bracket and the derivation-style
  identity ``[x,[y,z]] = [[x,y],z] - [[x,z],y]``,
* ``as``   -- associative algebras,
* ``lie``  -- Lie algebras: alternating bracket plus the same identity.

Structure tensors are stored sparsely (basis products as dicts), because at
desk scale they are overwhelmingly zero.  Constructors check the axioms and
attach the report as a certificate; pass ``check=False`` only when the caller
re-certifies immediately afterwards.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from . import linalg
from .config import guard_dim
from .errors import (DimensionMismatch, FieldMismatch, InvalidAlgebra,
                     NotAnIdeal, NotClosed)
from .fields import Field
from .linalg import Matrix, Subspace, vec_eq, vec_is_zero, vec_zero

# ---------------------------------------------------------------------------
# sparse vectors


def sp_add_into(field, acc: dict, other: dict, scale=None):
    for k, c in other.items():
        if scale is not None:
            c = field.mul(scale, c)
        if k in acc:
            s = field.add(acc[k], c)
            if field.is_zero(s):
                del acc[k]
            else:
                acc[k] = s
        elif not field.is_zero(c):
            acc[k] = c


def sp_sub(field, a: dict, b: dict) -> dict:
    out = dict(a)
    sp_add_into(field, out, b, field.neg(field.one()))
    return out


def sp_eq(a: dict, b: dict) -> bool:
    return a == b


def sp_from_dense(field, v) -> dict:
    return {i: c for i, c in enumerate(v) if not field.is_zero(c)}


def sp_to_dense(field, d: dict, n) -> list:
    out = vec_zero(field, n)
    for k, c in d.items():
        out[k] = c
    return out


# ---------------------------------------------------------------------------
# bilinear maps


class BilinearMap:
    """Bilinear map field^l x field^r -> field^o via sparse basis products."""

    __slots__ = ("field", "left_dim", "right_dim", "out_dim", "table")

    def __init__(self, field: Field, left_dim: int, right_dim: int, out_dim: int,
                 table=None):
        self.field = field
        self.left_dim = left_dim
        self.right_dim = right_dim
        self.out_dim = out_dim
        if table is None:
            table = tuple(tuple({} for _ in range(right_dim)) for _ in range(left_dim))
        self.table = table

    @classmethod
    def zero(cls, field, left_dim, right_dim=None, out_dim=None):
        if right_dim is None:
            right_dim = left_dim
        if out_dim is None:
            out_dim = left_dim
        return cls(field, left_dim, right_dim, out_dim)

    @classmethod
    def from_triples(cls, field, left_dim, right_dim, out_dim, triples):
        """triples: iterable of (i, j, k, coeff); unlisted entries are zero."""
        table = [[{} for _ in range(right_dim)] for _ in range(left_dim)]
        for (i, j, k, c) in triples:
            if not (0 <= i < left_dim and 0 <= j < right_dim and 0 <= k < out_dim):
                raise DimensionMismatch(f"triple index ({i},{j},{k}) out of range")
            c = field.of(c) if isinstance(c, int) else c
            cell = table[i][j]
            prev = cell.get(k, field.zero())
            s = field.add(prev, c)
            if field.is_zero(s):
                cell.pop(k, None)
            else:
                cell[k] = s
        return cls(field, left_dim, right_dim, out_dim,
                   tuple(tuple(row) for row in table))

    @classmethod
    def from_function(cls, field, left_dim, right_dim, out_dim, fn):
        """fn(i, j) -> sparse dict for the product of basis elements."""
        table = tuple(tuple({k: c for k, c in fn(i, j).items() if not field.is_zero(c)}
                            for j in range(right_dim))
                      for i in range(left_dim))
        return cls(field, left_dim, right_dim, out_dim, table)

    def pair(self, i, j) -> dict:
        """Sparse product of basis elements (do not mutate the result)."""
        return self.table[i][j]

    def apply_sparse(self, u: dict, v: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, a in u.items():
            row = self.table[i]
            for j, b in v.items():
                cell = row[j]
                if cell:
                    sp_add_into(f, out, cell, f.mul(a, b))
        return out

    def apply(self, u, v) -> list:
        out = self.apply_sparse(sp_from_dense(self.field, u),
                                sp_from_dense(self.field, v))
        return sp_to_dense(self.field, out, self.out_dim)

    def triples(self):
        for i in range(self.left_dim):
            for j in range(self.right_dim):
                for k in sorted(self.table[i][j]):
                    yield (i, j, k, self.table[i][j][k])

    def is_zero(self):
        return all(not cell for row in self.table for cell in row)

    def transpose_args(self) -> "BilinearMap":
        """Swap the two arguments: (u,v) -> product(v,u)."""
        table = tuple(tuple(self.table[i][j] for i in range(self.left_dim))
                      for j in range(self.right_dim))
        return BilinearMap(self.field, self.right_dim, self.left_dim, self.out_dim, table)

    def negate(self) -> "BilinearMap":
        f = self.field
        table = tuple(tuple({k: f.neg(c) for k, c in cell.items()} for cell in row)
                      for row in self.table)
        return BilinearMap(f, self.left_dim, self.right_dim, self.out_dim, table)

    def subtract(self, other: "BilinearMap") -> "BilinearMap":
        f = self.field
        table = []
        for i in range(self.left_dim):
            row = []
            for j in range(self.right_dim):
                row.append(sp_sub(f, self.table[i][j], other.table[i][j]))
            table.append(tuple(row))
        return BilinearMap(f, self.left_dim, self.right_dim, self.out_dim, tuple(table))

    def __eq__(self, other):
        if not isinstance(other, BilinearMap):
            return NotImplemented
        return (self.field == other.field
                and (self.left_dim, self.right_dim, self.out_dim)
                == (other.left_dim, other.right_dim, other.out_dim)
                and self.table == other.table)

    def __hash__(self):
        return hash((self.field, self.left_dim, self.right_dim, self.out_dim,
                     tuple(tuple(tuple(sorted(cell.items())) for cell in row)
                           for row in self.table)))

    def __repr__(self):
        return (f"BilinearMap({self.field}, {self.left_dim}x{self.right_dim}"
                f"->{self.out_dim}, {sum(len(c) for r in self.table for c in r)} nz)")


def sp_mul_right(prod: BilinearMap, w: dict, k: int) -> dict:
    """Product w * b_k for sparse w."""
    f = prod.field
    out: dict = {}
    for m, c in w.items():
        cell = prod.table[m][k]
        if cell:
            sp_add_into(f, out, cell, c)
    return out


def sp_mul_left(prod: BilinearMap, i: int, w: dict) -> dict:
    """Product b_i * w for sparse w."""
    f = prod.field
    row = prod.table[i]
    out: dict = {}
    for m, c in w.items():
        cell = row[m]
        if cell:
            sp_add_into(f, out, cell, c)
    return out


# ---------------------------------------------------------------------------
# axiom reports


class CheckItem:
    __slots__ = ("name", "passed", "where", "detail")

    def __init__(self, name, passed, where=None, detail=None):
        self.name = name
        self.passed = passed
        self.where = where
        self.detail = detail

    def as_dict(self):
        d = {"name": self.name, "passed": self.passed}
        if self.where is not None:
            d["where"] = list(self.where)
        if self.detail:
            d["detail"] = self.detail
        return d

    def __repr__(self):
        tag = "PASS" if self.passed else f"FAIL at {self.where}"
        return f"<{self.name}: {tag}>"


class AxiomReport:
    def __init__(self, subject: str, items=None):
        self.subject = subject
        self.items: list[CheckItem] = list(items or [])

    def add(self, name, passed, where=None, detail=None):
        self.items.append(CheckItem(name, passed, where, detail))

    def extend(self, sub: "AxiomReport", prefix=""):
        for it in sub.items:
            self.items.append(CheckItem(prefix + it.name, it.passed, it.where, it.detail))

    @property
    def passed(self):
        return all(it.passed for it in self.items)

    def first_failure(self) -> Optional[CheckItem]:
        for it in self.items:
            if not it.passed:
                return it
        return None

    def as_dict(self):
        return {"subject": self.subject, "passed": self.passed,
                "checks": [it.as_dict() for it in self.items]}

    def summary(self):
        if self.passed:
            return f"{self.subject}: PASS ({len(self.items)} checks)"
        bad = self.first_failure()
        return f"{self.subject}: FAIL [{bad.name} at {bad.where}]"

    def __repr__(self):
        return f"<AxiomReport {self.summary()}>"


# ---------------------------------------------------------------------------
# axiom templates
#
# A template maps a "mul" callback (prod_index, x, y) -> element to a pair of
# elements that the axiom equates.  The same templates drive the plain algebra
# checkers and the mixed two-sorted action checkers.

DIAS_AXIOMS = (
    ("d1: (x-|y)-|z = x-|(y|-z)",
     lambda m, x, y, z: (m(0, m(0, x, y), z), m(0, x, m(1, y, z)))),
    ("d2: (x-|y)-|z = x-|(y-|z)",
     lambda m, x, y, z: (m(0, m(0, x, y), z), m(0, x, m(0, y, z)))),
    ("d3: (x|-y)-|z = x|-(y-|z)",
     lambda m, x, y, z: (m(0, m(1, x, y), z), m(1, x, m(0, y, z)))),
    ("d4: (x-|y)|-z = x|-(y|-z)",
     lambda m, x, y, z: (m(1, m(0, x, y), z), m(1, x, m(1, y, z)))),
    ("d5: (x|-y)|-z = x|-(y|-z)",
     lambda m, x, y, z: (m(1, m(1, x, y), z), m(1, x, m(1, y, z)))),
)


def _leibniz_template(sub):
    """``sub`` subtracts two elements of whatever element type ``m`` returns."""
    def both(m, x, y, z):
        lhs = m(0, x, m(0, y, z))
        rhs = sub(m(0, m(0, x, y), z), m(0, m(0, x, z), y))
        return lhs, rhs
    return ("leibniz: [x,[y,z]] = [[x,y],z] - [[x,z],y]", both)


def _sp_subtract(field):
    return lambda a, b: sp_sub(field, a, b)


ASSOC_AXIOM = ("assoc: (xy)z = x(yz)",
               lambda m, x, y, z: (m(0, m(0, x, y), z), m(0, x, m(0, y, z))))


# ---------------------------------------------------------------------------
# flavor checkers (single sort)


def _check_templates(report, products, templates, dims):
    """Run (name, fn) templates over all basis triples, with early exit."""
    def mul(pidx, a, b):
        prod = products[pidx]
        if isinstance(a, int):
            if isinstance(b, int):
                return dict(prod.pair(a, b))
            return sp_mul_left(prod, a, b)
        if isinstance(b, int):
            return sp_mul_right(prod, a, b)
        return prod.apply_sparse(a, b)

    n = dims
    for name, fn in templates:
        violation = None
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs, rhs = fn(mul, i, j, k)
                    if lhs != rhs:
                        violation = (i, j, k)
                        break
                if violation:
                    break
            if violation:
                break
        report.add(name, violation is None, violation)
    return report


def check_dialgebra(left: BilinearMap, right: BilinearMap) -> AxiomReport:
    """Check the five diassociative axioms on all basis triples."""
    if left.field != right.field:
        raise FieldMismatch("left/right products over different fields")
    if not (left.left_dim == left.right_dim == left.out_dim
            == right.left_dim == right.right_dim == right.out_dim):
        raise DimensionMismatch("dialgebra products must be square and equal-dim")
    report = AxiomReport("dialgebra")
    return _check_templates(report, [left, right], DIAS_AXIOMS, left.left_dim)


def check_leibniz(bracket: BilinearMap) -> AxiomReport:
    report = AxiomReport("leibniz")
    return _check_templates(report, [bracket],
                            [_leibniz_template(_sp_subtract(bracket.field))],
                            bracket.left_dim)


def check_associative(product: BilinearMap) -> AxiomReport:
    report = AxiomReport("associative")
    return _check_templates(report, [product], [ASSOC_AXIOM], product.left_dim)


def check_lie(bracket: BilinearMap) -> AxiomReport:
    """Alternating (including the char-2 diagonal) plus the Leibniz identity."""
    f = bracket.field
    report = AxiomReport("lie")
    n = bracket.left_dim
    bad = None
    for i in range(n):
        if bracket.pair(i, i):
            bad = (i, i)
            break
    report.add("alternating: [x,x] = 0", bad is None, bad)
    bad = None
    for i in range(n):
        for j in range(i + 1, n):
            s = dict(bracket.pair(i, j))
            sp_add_into(f, s, bracket.pair(j, i))
            if s:
                bad = (i, j)
                break
        if bad:
            break
    report.add("antisymmetry: [x,y] + [y,x] = 0", bad is None, bad)
    return _check_templates(report, [bracket], [_leibniz_template(_sp_subtract(f))], n)


# ---------------------------------------------------------------------------
# algebra classes


class Algebra:
    """Base: structure constants plus a validity certificate."""

    flavor = "?"

    def __init__(self, field: Field, dim: int, labels=None):
        guard_dim(field, dim)
        self.field = field
        self.dim = dim
        if labels is None:
            labels = [f"e{i}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionMismatch("label count != dim")
        self.labels = list(labels)
        self.certificate: Optional[AxiomReport] = None

    def products(self) -> list[BilinearMap]:
        raise NotImplementedError

    def check(self) -> AxiomReport:
        raise NotImplementedError

    def certify(self):
        report = self.check()
        self.certificate = report
        if not report.passed:
            raise InvalidAlgebra(report.summary(), report)
        return report

    def zero_vector(self):
        return vec_zero(self.field, self.dim)

    def basis_vector(self, i):
        return linalg.unit_vector(self.field, self.dim, i)

    def same_structure(self, other: "Algebra") -> bool:
        """Tensor-level equality: field, flavor, dim and structure constants."""
        return (self.flavor == other.flavor and self.field == other.field
                and self.dim == other.dim
                and all(p == q for p, q in zip(self.products(), other.products())))

    def __repr__(self):
        return f"<{type(self).__name__} dim {self.dim} over {self.field}>"


class Dialgebra(Algebra):
    flavor = "dias"

    def __init__(self, field, left: BilinearMap, right: BilinearMap,
                 labels=None, check=True):
        super().__init__(field, left.left_dim, labels)
        self.left = left
        self.right = right
        if check:
            self.certify()

    def products(self):
        return [self.left, self.right]

    def check(self):
        return check_dialgebra(self.left, self.right)

    @classmethod
    def zero_algebra(cls, field, dim, labels=None):
        z = BilinearMap.zero(field, dim)
        return cls(field, z, BilinearMap.zero(field, dim), labels)


class LeibnizAlgebra(Algebra):
    flavor = "lb"

    def __init__(self, field, bracket: BilinearMap, labels=None, check=True):
        super().__init__(field, bracket.left_dim, labels)
        self.bracket = bracket
        if check:
            self.certify()

    def products(self):
        return [self.bracket]

    def check(self):
        return check_leibniz(self.bracket)

    @classmethod
    def zero_algebra(cls, field, dim, labels=None):
        return cls(field, BilinearMap.zero(field, dim), labels)


class AssociativeAlgebra(Algebra):
    flavor = "as"

    def __init__(self, field, product: BilinearMap, labels=None, check=True):
        super().__init__(field, product.left_dim, labels)
        self.product = product
        if check:
            self.certify()

    def products(self):
        return [self.product]

    def check(self):
        return check_associative(self.product)


class LieAlgebra(Algebra):
    flavor = "lie"

    def __init__(self, field, bracket: BilinearMap, labels=None, check=True):
        super().__init__(field, bracket.left_dim, labels)
        self.bracket = bracket
        if check:
            self.certify()

    def products(self):
        return [self.bracket]

    def check(self):
        return check_lie(self.bracket)


FLAVOR_CLASSES = {"dias": Dialgebra, "lb": LeibnizAlgebra,
                  "as": AssociativeAlgebra, "lie": LieAlgebra}


def make_algebra(flavor, field, products, labels=None, check=True) -> Algebra:
    cls = FLAVOR_CLASSES[flavor]
    if flavor == "dias":
        return cls(field, products[0], products[1], labels, check=check)
    return cls(field, products[0], labels, check=check)


def product_arity(flavor) -> int:
    return 2 if flavor == "dias" else 1


def abelian_algebra(flavor, field, dim, labels=None) -> Algebra:
    z = BilinearMap.zero(field, dim)
    return make_algebra(flavor, field, [z] * product_arity(flavor), labels,
                        check=False)


# ---------------------------------------------------------------------------
# morphisms


class AlgebraMorphism:
    """Linear map between same-flavor algebras; matrix is target_dim x source_dim."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix):
        if source.flavor != target.flavor:
            raise InvalidAlgebra(f"morphism between flavors {source.flavor}/{target.flavor}")
        if source.field != target.field:
            raise FieldMismatch("morphism between different fields")
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise DimensionMismatch(
                f"morphism matrix must be {target.dim}x{source.dim}, "
                f"got {matrix.rows}x{matrix.cols}")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, alg):
        return cls(alg, alg, Matrix.identity(alg.field, alg.dim))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Matrix.zero(source.field, target.dim, source.dim))

    def apply(self, v):
        return self.matrix.mul_vec(v)

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """self . other (apply other first)."""
        if other.target is not self.source and not other.target.same_structure(self.source):
            raise DimensionMismatch("composition through mismatched middle algebra")
        return AlgebraMorphism(other.source, self.target, self.matrix.mul(other.matrix))

    def check(self) -> AxiomReport:
        report = AxiomReport("morphism")
        f = self.source.field
        src_prods = self.source.products()
        tgt_prods = self.target.products()
        names = _product_names(self.source.flavor)
        cols = [self.matrix.col(j) for j in range(self.source.dim)]
        for name, sp, tp in zip(names, src_prods, tgt_prods):
            bad = None
            for i in range(self.source.dim):
                for j in range(self.source.dim):
                    lhs = self.apply(sp_to_dense(f, sp.pair(i, j), self.source.dim))
                    rhs = tp.apply(cols[i], cols[j])
                    if not vec_eq(f, lhs, rhs):
                        bad = (i, j)
                        break
                if bad:
                    break
            report.add(f"preserves {name}", bad is None, bad)
        return report

    def is_morphism(self) -> bool:
        return self.check().passed

    def is_injective(self):
        return self.matrix.rank() == self.source.dim

    def is_surjective(self):
        return self.matrix.rank() == self.target.dim

    def is_bijective(self):
        return self.source.dim == self.target.dim and self.matrix.rank() == self.source.dim

    def __repr__(self):
        return (f"<AlgebraMorphism {self.source.flavor} "
                f"{self.source.dim}->{self.target.dim}>")


def _product_names(flavor):
    if flavor == "dias":
        return ["-|", "|-"]
    if flavor == "as":
        return ["product"]
    return ["bracket"]


def check_morphism(f: AlgebraMorphism) -> AxiomReport:
    return f.check()


def kernel_of(f: AlgebraMorphism) -> Subspace:
    return linalg.kernel(f.matrix)


def image_of(f: AlgebraMorphism) -> Subspace:
    return linalg.image(f.matrix)


# ---------------------------------------------------------------------------
# annihilator, ideals, quotients


def annihilator(alg: Algebra) -> Subspace:
    """Largest subspace acting as zero under every product on both sides."""
    f = alg.field
    n = alg.dim
    if n == 0:
        return Subspace.zero(f, 0)
    rows = []
    for prod in alg.products():
        for j in range(n):
            # x * b_j = 0 and b_j * x = 0, coordinatewise rows in x
            for k in range(n):
                rows.append([prod.pair(i, j).get(k, f.zero()) for i in range(n)])
                rows.append([prod.pair(j, i).get(k, f.zero()) for i in range(n)])
    return linalg.kernel(Matrix.from_rows(f, rows, n))


def multiply_subspaces(alg: Algebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of all basis products a*b under every product of the flavor."""
    f = alg.field
    vecs = []
    for prod in alg.products():
        for u in a.basis:
            su = sp_from_dense(f, u)
            for v in b.basis:
                sv = sp_from_dense(f, v)
                w = prod.apply_sparse(su, sv)
                if w:
                    vecs.append(sp_to_dense(f, w, alg.dim))
    return Subspace.span(f, vecs, alg.dim)


def ideal_closure(alg: Algebra, seed: Subspace) -> Subspace:
    """Smallest two-sided ideal containing the seed (fixpoint of one-step span)."""
    f = alg.field
    if seed.ambient_dim != alg.dim:
        raise DimensionMismatch("seed not in the algebra's ambient space")
    current = seed
    while True:
        vecs = list(current.basis)
        for prod in alg.products():
            for r in current.basis:
                sr = sp_from_dense(f, r)
                for j in range(alg.dim):
                    w = sp_mul_right(prod, sr, j)
                    if w:
                        vecs.append(sp_to_dense(f, w, alg.dim))
                    w = sp_mul_left(prod, j, sr)
                    if w:
                        vecs.append(sp_to_dense(f, w, alg.dim))
        nxt = Subspace.span(f, vecs, alg.dim)
        if nxt.dim == current.dim:
            return nxt
        current = nxt


def is_ideal(alg: Algebra, s: Subspace) -> bool:
    f = alg.field
    for prod in alg.products():
        for r in s.basis:
            sr = sp_from_dense(f, r)
            for j in range(alg.dim):
                if not s.contains(sp_to_dense(f, sp_mul_right(prod, sr, j), alg.dim)):
                    return False
                if not s.contains(sp_to_dense(f, sp_mul_left(prod, j, sr), alg.dim)):
                    return False
    return True


def quotient_algebra(alg: Algebra, ideal: Subspace, labels=None):
    """Quotient by a two-sided ideal; returns (algebra, projection morphism).

    Quotient coordinates are the classes of the non-pivot standard basis
    vectors, so quotienting by the zero ideal reproduces the original
    structure constants on the nose.
    """
    if not is_ideal(alg, ideal):
        raise NotAnIdeal(f"subspace of dim {ideal.dim} is not an ideal")
    f = alg.field
    qm = linalg.quotient_basis(alg.dim, ideal)
    qdim = qm.dim
    sec = qm.section_cols

    def induced(prod):
        def fn(a, b):
            w = prod.pair(sec[a], sec[b])
            out = qm.project.mul_vec(sp_to_dense(f, w, alg.dim))
            return sp_from_dense(f, out)
        return BilinearMap.from_function(f, qdim, qdim, qdim, fn)

    prods = [induced(p) for p in alg.products()]
    if labels is None:
        labels = [alg.labels[c] for c in sec]
    quot = make_algebra(alg.flavor, f, prods, labels)
    proj = AlgebraMorphism(alg, quot, qm.project)
    return quot, proj


def induced_subalgebra(alg: Algebra, sub: Subspace, labels=None):
    """Structure induced on a product-closed subspace; returns (algebra, inclusion)."""
    f = alg.field
    k = sub.dim

    def fn_for(prod):
        def fn(a, b):
            u = sp_from_dense(f, sub.basis[a])
            v = sp_from_dense(f, sub.basis[b])
            w = sp_to_dense(f, prod.apply_sparse(u, v), alg.dim)
            coords = sub.coords(w)
            if coords is None:
                raise NotClosed(
                    f"subspace not closed: product of basis {a},{b} escapes")
            return sp_from_dense(f, coords)
        return fn

    prods = [BilinearMap.from_function(f, k, k, k, fn_for(p)) for p in alg.products()]
    subalg = make_algebra(alg.flavor, f, prods, labels)
    incl = AlgebraMorphism(subalg, alg,
                           Matrix.from_cols(f, [list(r) for r in sub.basis], alg.dim))
    return subalg, incl


def direct_sum(a: Algebra, b: Algebra, check=False) -> Algebra:
    """Componentwise products on the sum of the underlying spaces.

    Validity is inherited from the summands, so the default skips the
    re-check; pass ``check=True`` when in doubt.
    """
    if a.flavor != b.flavor:
        raise InvalidAlgebra(f"direct sum of flavors {a.flavor}/{b.flavor}")
    if a.field != b.field:
        raise FieldMismatch("direct sum over different fields")
    n1 = a.dim
    n = a.dim + b.dim
    prods = []
    for pa, pb in zip(a.products(), b.products()):
        def fn(i, j, pa=pa, pb=pb):
            if i < n1 and j < n1:
                return dict(pa.pair(i, j))
            if i >= n1 and j >= n1:
                return {k + n1: c for k, c in pb.pair(i - n1, j - n1).items()}
            return {}
        prods.append(BilinearMap.from_function(a.field, n, n, n, fn))
    labels = ([f"fst.{x}" for x in a.labels] + [f"snd.{x}" for x in b.labels])
    return make_algebra(a.flavor, a.field, prods, labels, check=check)


def derived_tower_nilpotent(alg: Algebra, bound: int) -> bool:
    """True iff every (bound+1)-fold product vanishes (any bracketing)."""
    f = alg.field
    full = Subspace.full(f, alg.dim)
    # layer[k] = span of all k-fold products; computed by bilinear convolution
    layers = {1: full}
    for k in range(2, bound + 2):
        vecs = []
        for i in range(1, k):
            j = k - i
            if i in layers and j in layers and layers[i].dim and layers[j].dim:
                s = multiply_subspaces(alg, layers[i], layers[j])
                vecs.extend(s.basis)
        layers[k] = Subspace.span(f, vecs, alg.dim)
        if layers[k].dim == 0:
            return True
    return layers[bound + 1].dim == 0


# ---------------------------------------------------------------------------
# flavor-changing constructions on plain algebras


def leibnization(d: Dialgebra, check=True) -> LeibnizAlgebra:
    """Bracket [x,y] = x -| y - y |- x on the same space."""
    f = d.field
    swapped = d.right.transpose_args()
    return LeibnizAlgebra(f, d.left.subtract(swapped), list(d.labels), check=check)


def dialgebra_of_associative(a: AssociativeAlgebra) -> Dialgebra:
    """View an associative algebra as a dialgebra with both products equal."""
    return Dialgebra(a.field, a.product, a.product, list(a.labels))


def commutator_lie(a: AssociativeAlgebra) -> LieAlgebra:
    """Commutator bracket [x,y] = xy - yx."""
    br = a.product.subtract(a.product.transpose_args())
    return LieAlgebra(a.field, br, list(a.labels))


def leibniz_of_lie(p: LieAlgebra) -> LeibnizAlgebra:
    """A Lie algebra is in particular a Leibniz algebra."""
    return LeibnizAlgebra(p.field, p.bracket, list(p.labels))


def associative_quotient(d: Dialgebra):
    """Universal associative quotient: divide by the ideal forcing -| = |-.

    Returns (associative algebra, projection as a dialgebra morphism onto the
    quotient viewed as a dialgebra).
    """
    f = d.field
    seeds = []
    for i in range(d.dim):
        for j in range(d.dim):
            w = sp_sub(f, d.left.pair(i, j), d.right.pair(i, j))
            if w:
                seeds.append(sp_to_dense(f, w, d.dim))
    ideal = ideal_closure(d, Subspace.span(f, seeds, d.dim))
    quot_dias, proj = quotient_algebra(d, ideal)
    if quot_dias.left != quot_dias.right:
        raise InvalidAlgebra("associative quotient failed to merge the products")
    asq = AssociativeAlgebra(f, quot_dias.left, list(quot_dias.labels))
    return asq, proj


def lie_quotient(g: LeibnizAlgebra):
    """Universal Lie quotient: divide by the ideal generated by squares.

    The generating set is polarized ([x,x] together with [x,y]+[y,x]) so the
    construction is correct in characteristic 2 as well.  Returns
    (lie algebra, projection as a Leibniz morphism onto the quotient).
    """
    f = g.field
    seeds = []
    for i in range(g.dim):
        w = g.bracket.pair(i, i)
        if w:
            seeds.append(sp_to_dense(f, w, g.dim))
        for j in range(i + 1, g.dim):
            s = dict(g.bracket.pair(i, j))
            sp_add_into(f, s, g.bracket.pair(j, i))
            if s:
                seeds.append(sp_to_dense(f, s, g.dim))
    ideal = ideal_closure(g, Subspace.span(f, seeds, g.dim))
    quot_lb, proj = quotient_algebra(g, ideal)
    lie = LieAlgebra(f, quot_lb.bracket, list(quot_lb.labels))
    return lie, proj

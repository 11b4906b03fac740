"""cat-1 structures, internal categories, and their crossed-module avatars.

A cat-1 structure is an algebra E with a distinguished subalgebra and two
retractions s, t onto it whose kernels multiply to zero in every order.  Such
data is equivalent to a crossed module: one direction restricts t to Ker s
with the ambient action, the other rebuilds E as a semidirect product with
s(l,x) = x and t(l,x) = mu(l) + x.  Internal categories refine the picture
with a unit section and a composition morphism on the pullback; both
directions are implemented here along with full axiom checkers and canonical
round-trip isomorphisms.
"""

from __future__ import annotations

from .actions import (CrossedModule, XmodMorphism, _fmt_product,
                      action_by_ambient_products, semidirect)
from .algebra import (Algebra, AlgebraMorphism, AxiomReport, direct_sum,
                      induced_subalgebra, kernel_of, multiply_subspaces,
                      product_arity)
from .errors import (DimensionMismatch, InvalidCat1, InvalidCrossedModule,
                     InvalidInternalCategory)
from .linalg import (Matrix, Subspace, kernel, unit_vector, vec_add, vec_eq,
                     vec_sub)


class Cat1:
    """An algebra with a retraction pair onto a subalgebra.

    ``base`` carries the induced structure of ``d_sub`` in its canonical
    coordinates and ``incl`` embeds it back; ``s`` and ``t`` are expressed in
    those coordinates.
    """

    def __init__(self, E: Algebra, d_sub: Subspace, s_matrix: Matrix,
                 t_matrix: Matrix, check=True):
        self.E = E
        self.d_sub = d_sub
        self.base, self.incl = induced_subalgebra(E, d_sub)
        self.s = AlgebraMorphism(E, self.base, s_matrix)
        self.t = AlgebraMorphism(E, self.base, t_matrix)
        self.certificate = None
        if check:
            self.certify()

    @property
    def flavor(self):
        return self.E.flavor

    def check(self) -> AxiomReport:
        return check_cat1(self)

    def certify(self) -> AxiomReport:
        report = self.check()
        if not report.passed:
            bad = report.first_failure()
            raise InvalidCat1(
                f"cat-1 axioms fail: {bad.name} at {bad.where}", report)
        self.certificate = report
        return report

    def __repr__(self):
        return f"<Cat1 {self.flavor} dim {self.E.dim} over base {self.base.dim}>"


def check_cat1(c: Cat1) -> AxiomReport:
    """Subalgebra closure, both retraction identities, and the vanishing of
    all kernel cross products."""
    report = AxiomReport(f"{c.flavor} cat-1 structure")
    prod_span = multiply_subspaces(c.E, c.d_sub, c.d_sub)
    report.add("base subspace is closed under products",
               prod_span.is_subspace_of(c.d_sub), None)
    report.extend(c.incl.check(), "incl ")
    report.extend(c.s.check(), "s ")
    report.extend(c.t.check(), "t ")
    ident = Matrix.identity(c.E.field, c.base.dim)
    report.add("s restricts to the identity on the base",
               c.s.matrix.mul(c.incl.matrix) == ident, None)
    report.add("t restricts to the identity on the base",
               c.t.matrix.mul(c.incl.matrix) == ident, None)

    kers = kernel_of(c.s)
    kert = kernel_of(c.t)
    f = c.E.field
    for pidx in range(product_arity(c.flavor)):
        prod = c.E.products()[pidx]
        for a, b, aname, bname in ((kers, kert, "Ker s", "Ker t"),
                                   (kert, kers, "Ker t", "Ker s")):
            bad = None
            for i, u in enumerate(a.basis):
                for j, v in enumerate(b.basis):
                    if any(not f.is_zero(x) for x in prod.apply(list(u), list(v))):
                        bad = (i, j)
                        break
                if bad:
                    break
            report.add(f"{_fmt_product(c.flavor, pidx, aname, bname)} = 0",
                       bad is None, bad)
    return report


def check_cat1_dias(c: Cat1) -> AxiomReport:
    _expect_cat1_flavor(c, "dias", "check_cat1_dias")
    return check_cat1(c)


def check_cat1_lb(c: Cat1) -> AxiomReport:
    _expect_cat1_flavor(c, "lb", "check_cat1_lb")
    return check_cat1(c)


def _expect_cat1_flavor(c, flavor, what):
    if c.flavor != flavor:
        raise InvalidCat1(f"{what} expects flavor {flavor!r}, got {c.flavor!r}")


def identity_cat1(alg: Algebra) -> Cat1:
    """E = base with s = t = id; both kernels vanish."""
    ident = Matrix.identity(alg.field, alg.dim)
    return Cat1(alg, Subspace.full(alg.field, alg.dim), ident, ident)


# ---------------------------------------------------------------------------
# crossed module <-> cat-1


def cat1_of_xmod(xm: CrossedModule, check=True) -> Cat1:
    """Semidirect model: E = actee x actor, s(l,x) = x, t(l,x) = mu(l)+x."""
    E, _inj, proj, _split = semidirect(xm.action, check=check)
    f = E.field
    nl, nd = xm.actee.dim, xm.actor.dim
    d_sub = Subspace.span(
        f, [unit_vector(f, nl + nd, nl + i) for i in range(nd)], nl + nd)
    s_matrix = proj.matrix
    t_matrix = xm.mu.matrix.hstack(Matrix.identity(f, nd))
    return Cat1(E, d_sub, s_matrix, t_matrix, check=check)


def xmod_of_cat1(c: Cat1, check=True) -> CrossedModule:
    """Restrict t to Ker s; the base acts by the ambient products."""
    kers = kernel_of(c.s)
    _L_alg, l_incl = induced_subalgebra(c.E, kers)
    mu = c.t.compose(l_incl)
    act = action_by_ambient_products(c.incl, l_incl, check=check)
    return CrossedModule(mu, act, check=check)


def xdias_to_cat1(xm: CrossedModule, check=True) -> Cat1:
    if xm.flavor != "dias":
        raise InvalidCrossedModule("xdias_to_cat1 expects a dialgebra crossed module")
    return cat1_of_xmod(xm, check=check)


def phi(c: Cat1, check=True) -> CrossedModule:
    _expect_cat1_flavor(c, "dias", "phi")
    return xmod_of_cat1(c, check=check)


def cat1lb_of_xlb(xm: CrossedModule, check=True) -> Cat1:
    if xm.flavor != "lb":
        raise InvalidCrossedModule("cat1lb_of_xlb expects a Leibniz crossed module")
    return cat1_of_xmod(xm, check=check)


def xlb_of_cat1lb(c: Cat1, check=True) -> CrossedModule:
    _expect_cat1_flavor(c, "lb", "xlb_of_cat1lb")
    return xmod_of_cat1(c, check=check)


# ---------------------------------------------------------------------------
# round-trip witnesses


def cat1_decomposition_iso(c: Cat1, target: Cat1) -> AlgebraMorphism:
    """The splitting e = (e - incl(s(e))) + incl(s(e)) maps E isomorphically
    onto the semidirect model rebuilt from its crossed module."""
    kers = kernel_of(c.s)
    f = c.E.field
    cols = []
    for j in range(c.E.dim):
        e = unit_vector(f, c.E.dim, j)
        sval = c.s.matrix.col(j)
        resid = vec_sub(f, e, c.incl.matrix.mul_vec(sval))
        kc = kers.coords(resid)
        if kc is None:
            raise InvalidCat1("element does not split along Ker s")
        cols.append(list(kc) + list(sval))
    return AlgebraMorphism(c.E, target.E,
                           Matrix.from_cols(f, cols, target.E.dim))


def cat1_isomorphism_report(c1: Cat1, c2: Cat1, h: AlgebraMorphism) -> AxiomReport:
    """Verify h: E1 -> E2 as an isomorphism of cat-1 structures.

    The bases must be structurally equal; h has to fix them and to intertwine
    both retractions.
    """
    report = AxiomReport("cat-1 isomorphism")
    report.add("bases structurally equal", c1.base.same_structure(c2.base), None)
    report.extend(h.check(), "h ")
    report.add("h is bijective", h.is_bijective(), None)
    report.add("h fixes the base",
               h.matrix.mul(c1.incl.matrix) == c2.incl.matrix, None)
    report.add("s' . h = s", c2.s.matrix.mul(h.matrix) == c1.s.matrix, None)
    report.add("t' . h = t", c2.t.matrix.mul(h.matrix) == c1.t.matrix, None)
    return report


def xmod_isomorphism_report(xm1: CrossedModule, xm2: CrossedModule,
                            alpha: AlgebraMorphism, beta: AlgebraMorphism) -> AxiomReport:
    """Verify (alpha, beta) as an isomorphism of crossed modules."""
    report = XmodMorphism(xm1, xm2, alpha, beta).check()
    report.add("alpha is bijective", alpha.is_bijective(), None)
    report.add("beta is bijective", beta.is_bijective(), None)
    return report


# ---------------------------------------------------------------------------
# internal categories


class InternalCategory:
    """A cat-1 structure with a unit section and a composition morphism.

    The object of composable pairs is the subalgebra of E (+) E where t of
    the first component equals s of the second; ``gamma`` is expressed in its
    canonical coordinates.
    """

    def __init__(self, cat1: Cat1, sigma: AlgebraMorphism,
                 gamma_on_sum: Matrix, check=True):
        self.cat1 = cat1
        E = cat1.E
        if sigma.matrix.rows != E.dim or sigma.matrix.cols != cat1.base.dim:
            raise DimensionMismatch("sigma must map the base into E")
        self.sigma = sigma
        self.EE = direct_sum(E, E)
        pairing = cat1.t.matrix.hstack(cat1.s.matrix.neg())
        self.pullback = kernel(pairing)
        self.pb_alg, self.pb_incl = induced_subalgebra(self.EE, self.pullback)
        if gamma_on_sum.cols != 2 * E.dim or gamma_on_sum.rows != E.dim:
            raise DimensionMismatch("gamma must be given on E (+) E")
        self.gamma = AlgebraMorphism(self.pb_alg, E,
                                     gamma_on_sum.mul(self.pb_incl.matrix))
        self.certificate = None
        if check:
            self.certify()

    @property
    def flavor(self):
        return self.cat1.flavor

    def check(self) -> AxiomReport:
        return check_internal_category(self)

    def certify(self) -> AxiomReport:
        report = self.check()
        if not report.passed:
            bad = report.first_failure()
            raise InvalidInternalCategory(
                f"internal-category axioms fail: {bad.name} at {bad.where}",
                report)
        self.certificate = report
        return report


def _pullback_coords(ic: InternalCategory, u, v):
    w = list(u) + list(v)
    return ic.pullback.coords(w)


def check_internal_category(ic: InternalCategory) -> AxiomReport:
    report = AxiomReport(f"{ic.flavor} internal category")
    c = ic.cat1
    E = c.E
    f = E.field
    report.extend(check_cat1(c), "cat1 ")
    report.extend(ic.sigma.check(), "sigma ")
    ident = Matrix.identity(f, c.base.dim)
    report.add("s . sigma = id", c.s.matrix.mul(ic.sigma.matrix) == ident, None)
    report.add("t . sigma = id", c.t.matrix.mul(ic.sigma.matrix) == ident, None)

    closure = multiply_subspaces(ic.EE, ic.pullback, ic.pullback)
    report.add("pullback is closed under products",
               closure.is_subspace_of(ic.pullback), None)
    report.extend(ic.gamma.check(), "gamma ")

    pr1 = Matrix.identity(f, E.dim).hstack(Matrix.zero(f, E.dim, E.dim))
    pr2 = Matrix.zero(f, E.dim, E.dim).hstack(Matrix.identity(f, E.dim))
    pr1r = pr1.mul(ic.pb_incl.matrix)
    pr2r = pr2.mul(ic.pb_incl.matrix)
    report.add("s . gamma = s . pr1",
               c.s.matrix.mul(ic.gamma.matrix) == c.s.matrix.mul(pr1r), None)
    report.add("t . gamma = t . pr2",
               c.t.matrix.mul(ic.gamma.matrix) == c.t.matrix.mul(pr2r), None)

    # unit laws, one basis vector of E at a time
    bad_right = bad_left = None
    for j in range(E.dim):
        e = unit_vector(f, E.dim, j)
        ue = ic.sigma.matrix.mul_vec(c.t.matrix.col(j))
        cj = _pullback_coords(ic, e, ue)
        if cj is None or not vec_eq(f, ic.gamma.matrix.mul_vec(cj), e):
            bad_right = (j,)
            break
    for j in range(E.dim):
        e = unit_vector(f, E.dim, j)
        ue = ic.sigma.matrix.mul_vec(c.s.matrix.col(j))
        cj = _pullback_coords(ic, ue, e)
        if cj is None or not vec_eq(f, ic.gamma.matrix.mul_vec(cj), e):
            bad_left = (j,)
            break
    report.add("gamma(x, sigma t(x)) = x", bad_right is None, bad_right)
    report.add("gamma(sigma s(x), x) = x", bad_left is None, bad_left)

    # associativity over the object of composable triples
    n = E.dim
    zero_block = Matrix.zero(f, c.base.dim, n)
    top = c.t.matrix.hstack(c.s.matrix.neg()).hstack(zero_block)
    bottom = zero_block.hstack(c.t.matrix).hstack(c.s.matrix.neg())
    triple = kernel(top.vstack(bottom))
    bad = None
    for bi, w in enumerate(triple.basis):
        u, v, z = list(w[:n]), list(w[n:2 * n]), list(w[2 * n:])
        cuv = _pullback_coords(ic, u, v)
        cvz = _pullback_coords(ic, v, z)
        if cuv is None or cvz is None:
            bad = (bi,)
            break
        guv = ic.gamma.matrix.mul_vec(cuv)
        gvz = ic.gamma.matrix.mul_vec(cvz)
        left = _pullback_coords(ic, guv, z)
        right = _pullback_coords(ic, u, gvz)
        if left is None or right is None:
            bad = (bi,)
            break
        if not vec_eq(f, ic.gamma.matrix.mul_vec(left),
                      ic.gamma.matrix.mul_vec(right)):
            bad = (bi,)
            break
    report.add("gamma is associative on composable triples", bad is None, bad)

    # composition of kernel elements reduces to addition
    kers = kernel_of(c.s)
    bad = None
    for i, l in enumerate(kers.basis):
        unit_of_l = ic.sigma.matrix.mul_vec(c.t.matrix.mul_vec(list(l)))
        for j, lp in enumerate(kers.basis):
            cj = _pullback_coords(ic, list(l), vec_add(f, unit_of_l, list(lp)))
            want = vec_add(f, list(l), list(lp))
            if cj is None or not vec_eq(f, ic.gamma.matrix.mul_vec(cj), want):
                bad = (i, j)
                break
        if bad:
            break
    report.add("gamma(l, sigma t(l) + l') = l + l'", bad is None, bad)
    return report


def xdias_to_internal(xm: CrossedModule, check=True) -> InternalCategory:
    """Augment the semidirect cat-1 model with its unit section and the
    componentwise composition gamma((l,x),(l',x+mu(l))) = (l+l', x)."""
    if xm.flavor != "dias":
        raise InvalidCrossedModule("xdias_to_internal expects a dialgebra crossed module")
    c = cat1_of_xmod(xm, check=check)
    f = c.E.field
    nl, nd = xm.actee.dim, xm.actor.dim
    sigma = AlgebraMorphism(c.base, c.E, c.incl.matrix)
    il = Matrix.identity(f, nl)
    idd = Matrix.identity(f, nd)
    top = il.hstack(Matrix.zero(f, nl, nd)).hstack(il).hstack(Matrix.zero(f, nl, nd))
    bottom = (Matrix.zero(f, nd, nl).hstack(idd)
              .hstack(Matrix.zero(f, nd, nl + nd)))
    return InternalCategory(c, sigma, top.vstack(bottom), check=check)


def psi(ic: InternalCategory, check=True) -> CrossedModule:
    """Extract mu = t restricted to Ker s, acting through the unit section."""
    c = ic.cat1
    kers = kernel_of(c.s)
    _L_alg, l_incl = induced_subalgebra(c.E, kers)
    mu = c.t.compose(l_incl)
    act = action_by_ambient_products(ic.sigma, l_incl, check=check)
    return CrossedModule(mu, act, check=check)

"""Actions, semidirect products, and crossed modules, in all four flavors.

An action of an algebra D on an algebra L of the same flavor is a family of
cross products D (x) L -> L and L (x) D -> L satisfying every mixed-variable
instance of the flavor's axioms.  Those instances are generated mechanically
from the same axiom templates that certify the algebras: each template is
evaluated on basis elements tagged with a sort (D for the actor, L for the
actee), and a dispatcher picks the internal or cross tensor from the sorts of
the operands.  Hand-listing the 30 dialgebra instances would invite a
transcription slip; generating them cannot.

A crossed module bundles a morphism mu: L -> D with an action of D on L,
subject to equivariance of mu and Peiffer-style identities.  The checker
reports every equation separately, and ``semidirect_homomorphism_checks``
confirms the equivalent characterization through maps between semidirect
products.
"""

from __future__ import annotations

from itertools import product as iter_product

from . import audit
from .algebra import (ASSOC_AXIOM, DIAS_AXIOMS, Algebra, AlgebraMorphism,
                      AxiomReport, BilinearMap, _leibniz_template,
                      abelian_algebra, annihilator, image_of, induced_subalgebra,
                      is_ideal, kernel_of, make_algebra, product_arity,
                      quotient_algebra, sp_from_dense, sp_sub, sp_to_dense)
from .errors import (DimensionMismatch, FieldMismatch, InvalidAction,
                     InvalidCrossedModule, LemmaViolation, NotAnIdeal)
from .fields import GF
from .linalg import (Matrix, QuotientMap, Subspace, solve, unit_vector,
                     vec_add, vec_eq, vec_is_zero)

ACTOR = "D"
ACTEE = "L"

# tensor slot names per product index: (actor-on-actee, actee-on-actor);
# the Lie actee-on-actor product is determined by antisymmetry, hence None
_SLOT_BY_PIDX = {
    "dias": (("dl_left", "ld_left"), ("dl_right", "ld_right")),
    "lb": (("gq", "qg"),),
    "as": (("ar", "ra"),),
    "lie": (("pm", None),),
}


# ---------------------------------------------------------------------------
# action classes


class Action:
    """Cross products of one algebra on another of the same flavor.

    ``cross(pidx, side)`` returns the tensor for product ``pidx`` with the
    actor on the left (side "DL") or on the right (side "LD").
    """

    flavor: str = ""
    slot_names: tuple = ()
    slot_sides: dict = {}

    def __init__(self, actor: Algebra, actee: Algebra, tensors, check=True):
        if actor.flavor != self.flavor or actee.flavor != self.flavor:
            raise InvalidAction(
                f"{type(self).__name__} needs two {self.flavor} algebras, "
                f"got {actor.flavor}/{actee.flavor}")
        if actor.field != actee.field:
            raise FieldMismatch("actor and actee over different fields")
        self.actor = actor
        self.actee = actee
        self.tensors = {}
        for name in self.slot_names:
            t = tensors.get(name)
            if t is None:
                raise DimensionMismatch(f"missing action tensor {name!r}")
            side = self.slot_sides[name]
            want = ((actor.dim, actee.dim) if side == "DL"
                    else (actee.dim, actor.dim))
            if (t.left_dim, t.right_dim, t.out_dim) != (*want, actee.dim):
                raise DimensionMismatch(
                    f"tensor {name!r} has shape "
                    f"{(t.left_dim, t.right_dim, t.out_dim)}, "
                    f"expected {(*want, actee.dim)}")
            if t.field != actor.field:
                raise FieldMismatch(f"tensor {name!r} over the wrong field")
            self.tensors[name] = t
        self._cross = self._build_cross()
        self.certificate = None
        if check:
            self.certify()

    @property
    def field(self):
        return self.actor.field

    def _build_cross(self):
        raise NotImplementedError

    def cross(self, pidx, side) -> BilinearMap:
        return self._cross[side][pidx]

    def check(self) -> AxiomReport:
        return ACTION_CHECKERS[self.flavor](self)

    def certify(self) -> AxiomReport:
        report = self.check()
        if not report.passed:
            bad = report.first_failure()
            raise InvalidAction(
                f"not a {self.flavor} action: {bad.name} fails at {bad.where}",
                report)
        self.certificate = report
        return report

    def same_tensors(self, other: "Action") -> bool:
        return (self.flavor == other.flavor
                and all(self.tensors[n] == other.tensors[n]
                        for n in self.slot_names))

    def __getattr__(self, name):
        tensors = self.__dict__.get("tensors")
        if tensors is not None and name in tensors:
            return tensors[name]
        raise AttributeError(name)

    def __repr__(self):
        return (f"<{type(self).__name__} {self.actor.dim}-dim actor on "
                f"{self.actee.dim}-dim actee>")


class DialgebraAction(Action):
    flavor = "dias"
    slot_names = ("dl_left", "ld_left", "dl_right", "ld_right")
    slot_sides = {"dl_left": "DL", "ld_left": "LD",
                  "dl_right": "DL", "ld_right": "LD"}

    def _build_cross(self):
        t = self.tensors
        return {"DL": [t["dl_left"], t["dl_right"]],
                "LD": [t["ld_left"], t["ld_right"]]}


class LeibnizAction(Action):
    flavor = "lb"
    slot_names = ("gq", "qg")
    slot_sides = {"gq": "DL", "qg": "LD"}

    def _build_cross(self):
        return {"DL": [self.tensors["gq"]], "LD": [self.tensors["qg"]]}


class AssociativeAction(Action):
    flavor = "as"
    slot_names = ("ar", "ra")
    slot_sides = {"ar": "DL", "ra": "LD"}

    def _build_cross(self):
        return {"DL": [self.tensors["ar"]], "LD": [self.tensors["ra"]]}


class LieAction(Action):
    """One tensor [p,m]; the reverse product is its negated transpose."""

    flavor = "lie"
    slot_names = ("pm",)
    slot_sides = {"pm": "DL"}

    def _build_cross(self):
        pm = self.tensors["pm"]
        return {"DL": [pm], "LD": [pm.transpose_args().negate()]}


ACTION_CLASSES = {"dias": DialgebraAction, "lb": LeibnizAction,
                  "lie": LieAction, "as": AssociativeAction}


def make_action(flavor, actor, actee, tensors, check=True) -> Action:
    return ACTION_CLASSES[flavor](actor, actee, tensors, check=check)


def trivial_action(actor: Algebra, actee: Algebra, check=True) -> Action:
    f = actor.field
    cls = ACTION_CLASSES[actor.flavor]
    tensors = {}
    for name in cls.slot_names:
        if cls.slot_sides[name] == "DL":
            tensors[name] = BilinearMap.zero(f, actor.dim, actee.dim, actee.dim)
        else:
            tensors[name] = BilinearMap.zero(f, actee.dim, actor.dim, actee.dim)
    return cls(actor, actee, tensors, check=check)


def self_action(alg: Algebra, check=True) -> Action:
    """An algebra acting on itself by its own products."""
    prods = alg.products()
    tensors = {}
    for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[alg.flavor]):
        tensors[dl_name] = prods[pidx]
        if ld_name:
            tensors[ld_name] = prods[pidx]
    return make_action(alg.flavor, alg, alg, tensors, check=check)


# ---------------------------------------------------------------------------
# mixed axiom instances

_MIXED_PATTERNS = tuple(p for p in iter_product((ACTOR, ACTEE), repeat=3)
                        if len(set(p)) == 2)


def _tagged_sub(field):
    def sub(a, b):
        assert a[0] == b[0]
        return (a[0], sp_sub(field, a[1], b[1]))
    return sub


def _mixed_templates(flavor, field):
    if flavor == "dias":
        return DIAS_AXIOMS
    if flavor == "as":
        return (ASSOC_AXIOM,)
    if flavor == "lb":
        return (_leibniz_template(_tagged_sub(field)),)
    raise ValueError(f"no mixed template set for flavor {flavor!r}")


def mixed_instances(flavor, field):
    """All axiom instances with variables of both sorts, as (name, fn, sorts)."""
    out = []
    for name, fn in _mixed_templates(flavor, field):
        tag = name.split(":")[0]
        for pat in _MIXED_PATTERNS:
            out.append((f"{tag} @ ({pat[0]},{pat[1]},{pat[2]})", fn, pat))
    return tuple(out)


# placement enumeration must reproduce the axiom counts of the definitions
_PROBE = GF(2)
assert len(_MIXED_PATTERNS) == 6
assert len(mixed_instances("dias", _PROBE)) == 30
assert len(mixed_instances("lb", _PROBE)) == 6
assert len(mixed_instances("as", _PROBE)) == 6


def _mixed_mul(act: Action):
    actor_prods = act.actor.products()
    actee_prods = act.actee.products()

    def mul(pidx, a, b):
        sa, va = a
        sb, vb = b
        if sa == sb:
            prods = actor_prods if sa == ACTOR else actee_prods
            return (sa, prods[pidx].apply_sparse(va, vb))
        side = "DL" if sa == ACTOR else "LD"
        return (ACTEE, act.cross(pidx, side).apply_sparse(va, vb))

    return mul


def _check_mixed(report: AxiomReport, act: Action, instances) -> AxiomReport:
    mul = _mixed_mul(act)
    one = act.field.one()
    dims = {ACTOR: act.actor.dim, ACTEE: act.actee.dim}
    for name, fn, pat in instances:
        violation = None
        for i in range(dims[pat[0]]):
            x = (pat[0], {i: one})
            for j in range(dims[pat[1]]):
                y = (pat[1], {j: one})
                for k in range(dims[pat[2]]):
                    lhs, rhs = fn(mul, x, y, (pat[2], {k: one}))
                    if lhs[1] != rhs[1]:
                        violation = (i, j, k)
                        break
                if violation:
                    break
            if violation:
                break
        report.add(name, violation is None, violation)
    return report


def check_dialgebra_action(act: Action) -> AxiomReport:
    report = AxiomReport("dialgebra action")
    return _check_mixed(report, act, mixed_instances("dias", act.field))


def check_leibniz_action(act: Action) -> AxiomReport:
    report = AxiomReport("leibniz action")
    return _check_mixed(report, act, mixed_instances("lb", act.field))


def check_assoc_action(act: Action) -> AxiomReport:
    report = AxiomReport("associative action")
    return _check_mixed(report, act, mixed_instances("as", act.field))


def check_lie_action(act: Action) -> AxiomReport:
    """The two displayed equations, on all basis triples."""
    report = AxiomReport("lie action")
    f = act.field
    P, M = act.actor, act.actee
    pm = act.tensors["pm"]
    pbr = P.products()[0]
    mbr = M.products()[0]
    one = f.one()

    bad = None
    for i in range(P.dim):
        for j in range(P.dim):
            pij = pbr.pair(i, j)
            for k in range(M.dim):
                m = {k: one}
                lhs = pm.apply_sparse(pij, m)
                rhs = sp_sub(f, pm.apply_sparse({i: one}, pm.apply_sparse({j: one}, m)),
                             pm.apply_sparse({j: one}, pm.apply_sparse({i: one}, m)))
                if lhs != rhs:
                    bad = (i, j, k)
                    break
            if bad:
                break
        if bad:
            break
    report.add("[[p,p'],m] = [p,[p',m]] - [p',[p,m]]", bad is None, bad)

    bad = None
    for i in range(P.dim):
        p = {i: one}
        for k in range(M.dim):
            for l in range(M.dim):
                lhs = pm.apply_sparse(p, mbr.pair(k, l))
                rhs = dict(mbr.apply_sparse(pm.apply_sparse(p, {k: one}), {l: one}))
                for key, c in mbr.apply_sparse({k: one}, pm.apply_sparse(p, {l: one})).items():
                    s = f.add(rhs.get(key, f.zero()), c)
                    if f.is_zero(s):
                        rhs.pop(key, None)
                    else:
                        rhs[key] = s
                if lhs != rhs:
                    bad = (i, k, l)
                    break
            if bad:
                break
        if bad:
            break
    report.add("[p,[m,m']] = [[p,m],m'] + [m,[p,m']]", bad is None, bad)
    return report


ACTION_CHECKERS = {"dias": check_dialgebra_action, "lb": check_leibniz_action,
                   "lie": check_lie_action, "as": check_assoc_action}


def induced_bimodule(act: Action) -> Action:
    """Forget the actee's own products; the cross tensors alone form a
    bimodule over the actor (an action on the abelianized actee)."""
    actee = abelian_algebra(act.flavor, act.field, act.actee.dim,
                            act.actee.labels)
    return make_action(act.flavor, act.actor, actee, dict(act.tensors))


# ---------------------------------------------------------------------------
# semidirect products


def _semidirect_products(act: Action) -> list:
    """Product tensors on actee (+) actor; no validity assumption."""
    nl, nd = act.actee.dim, act.actor.dim
    f = act.field
    prods = []
    for pidx in range(product_arity(act.flavor)):
        al = act.actee.products()[pidx]
        ad = act.actor.products()[pidx]
        dl = act.cross(pidx, "DL")
        ld = act.cross(pidx, "LD")

        def fn(i, j, al=al, ad=ad, dl=dl, ld=ld):
            if i < nl and j < nl:
                return dict(al.pair(i, j))
            if i < nl:
                return dict(ld.pair(i, j - nl))
            if j < nl:
                return dict(dl.pair(i - nl, j))
            return {k + nl: c for k, c in ad.pair(i - nl, j - nl).items()}

        prods.append(BilinearMap.from_function(f, nl + nd, nl + nd, nl + nd, fn))
    return prods


def semidirect(act: Action, check=True, labels=None):
    """Semidirect product on actee (+) actor.

    Returns ``(E, inj, proj, split)`` for the split exact sequence
    actee -> E -> actor with section ``split``; with ``check`` the three maps
    are verified as morphisms and the action extracted back from the
    splitting is compared with the input.
    """
    nl, nd = act.actee.dim, act.actor.dim
    f = act.field
    if labels is None:
        labels = ([f"l.{x}" for x in act.actee.labels]
                  + [f"d.{x}" for x in act.actor.labels])
    E = make_algebra(act.flavor, f, _semidirect_products(act), labels,
                     check=check)
    inj = AlgebraMorphism(act.actee, E,
                          Matrix.identity(f, nl).vstack(Matrix.zero(f, nd, nl)))
    proj = AlgebraMorphism(E, act.actor,
                           Matrix.zero(f, nd, nl).hstack(Matrix.identity(f, nd)))
    split = AlgebraMorphism(act.actor, E,
                            Matrix.zero(f, nl, nd).vstack(Matrix.identity(f, nd)))
    if check:
        for m, tag in ((inj, "inclusion"), (proj, "projection"),
                       (split, "splitting")):
            rep = m.check()
            if not rep.passed:
                raise InvalidAction(
                    f"semidirect {tag} is not a morphism: "
                    f"{rep.first_failure().name}", rep)
        recovered = action_from_splitting(E, act.actee, act.actor, inj, split,
                                          check=False)
        if not recovered.same_tensors(act):
            raise InvalidAction("splitting does not recover the action")
    return E, inj, proj, split


def _expect_flavor(obj, flavor, what):
    if obj.flavor != flavor:
        raise InvalidAction(f"{what} expects flavor {flavor!r}, got {obj.flavor!r}")


def semidirect_dias(act: Action, check=True, labels=None):
    _expect_flavor(act, "dias", "semidirect_dias")
    return semidirect(act, check=check, labels=labels)


def semidirect_lb(act: Action, check=True, labels=None):
    _expect_flavor(act, "lb", "semidirect_lb")
    return semidirect(act, check=check, labels=labels)


def semidirect_lie(act: Action, check=True, labels=None):
    _expect_flavor(act, "lie", "semidirect_lie")
    return semidirect(act, check=check, labels=labels)


def semidirect_as(act: Action, check=True, labels=None):
    _expect_flavor(act, "as", "semidirect_as")
    return semidirect(act, check=check, labels=labels)


def action_from_splitting(E: Algebra, actee: Algebra, actor: Algebra,
                          inj: AlgebraMorphism, split: AlgebraMorphism,
                          check=True) -> Action:
    """Action of ``actor`` on ``actee`` carried by a split exact sequence.

    ``inj`` embeds the actee as the kernel of the projection; ``split`` is a
    section of it.  Cross products are taken in ``E`` and expressed back in
    actee coordinates; a product falling outside the embedded kernel raises.
    """
    f = E.field
    inj_cols = [inj.matrix.col(j) for j in range(actee.dim)]
    sec_cols = [split.matrix.col(j) for j in range(actor.dim)]

    def back(u):
        c = solve(inj.matrix, u)
        if c is None:
            raise InvalidAction("product leaves the embedded kernel")
        return sp_from_dense(f, c)

    tensors = {}
    for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[E.flavor]):
        prod = E.products()[pidx]
        tensors[dl_name] = BilinearMap.from_function(
            f, actor.dim, actee.dim, actee.dim,
            lambda x, l, prod=prod: back(prod.apply(sec_cols[x], inj_cols[l])))
        if ld_name:
            tensors[ld_name] = BilinearMap.from_function(
                f, actee.dim, actor.dim, actee.dim,
                lambda l, x, prod=prod: back(prod.apply(inj_cols[l], sec_cols[x])))
    return make_action(E.flavor, actor, actee, tensors, check=check)


# ---------------------------------------------------------------------------
# crossed modules


class CrossedModule:
    """A morphism mu: L -> D with an action of D on L, axioms certified."""

    def __init__(self, mu: AlgebraMorphism, action: Action, check=True):
        if mu.source.flavor != action.flavor:
            raise InvalidCrossedModule(
                f"morphism flavor {mu.source.flavor!r} does not match "
                f"action flavor {action.flavor!r}")
        if not (mu.source is action.actee
                or mu.source.same_structure(action.actee)):
            raise InvalidCrossedModule("mu does not start at the actee")
        if not (mu.target is action.actor
                or mu.target.same_structure(action.actor)):
            raise InvalidCrossedModule("mu does not land in the actor")
        self.mu = mu
        self.action = action
        self.certificate = None
        if check:
            self.certify()
            audit.record(self)

    @property
    def flavor(self):
        return self.action.flavor

    @property
    def actee(self):
        return self.mu.source

    @property
    def actor(self):
        return self.mu.target

    def check(self) -> AxiomReport:
        return crossed_module_report(self.mu, self.action)

    def certify(self) -> AxiomReport:
        report = self.check()
        if not report.passed:
            bad = report.first_failure()
            raise InvalidCrossedModule(
                f"crossed module axioms fail: {bad.name} at {bad.where}",
                report)
        self.certificate = report
        return report

    def __repr__(self):
        return (f"<CrossedModule {self.flavor} {self.actee.dim}->"
                f"{self.actor.dim}>")


def _fmt_product(flavor, pidx, a, b):
    if flavor == "dias":
        return f"{a} {'-|' if pidx == 0 else '|-'} {b}"
    if flavor == "as":
        return f"{a}*{b}"
    return f"[{a},{b}]"


def _crossed_equations(report: AxiomReport, mu: AlgebraMorphism, act: Action):
    f = mu.source.field
    L, D = mu.source, mu.target
    mu_cols = [mu.matrix.col(j) for j in range(L.dim)]
    for pidx in range(product_arity(act.flavor)):
        dl = act.cross(pidx, "DL")
        ld = act.cross(pidx, "LD")
        lprod = L.products()[pidx]
        dprod = D.products()[pidx]

        def fmt(a, b):
            return _fmt_product(act.flavor, pidx, a, b)

        bad = None
        for x in range(D.dim):
            ex = unit_vector(f, D.dim, x)
            for l in range(L.dim):
                lhs = mu.matrix.mul_vec(sp_to_dense(f, dl.pair(x, l), L.dim))
                if not vec_eq(f, lhs, dprod.apply(ex, mu_cols[l])):
                    bad = (x, l)
                    break
            if bad:
                break
        report.add(f"equivariance: mu({fmt('x', 'l')}) = {fmt('x', 'mu(l)')}",
                   bad is None, bad)

        if act.flavor != "lie":
            bad = None
            for l in range(L.dim):
                for x in range(D.dim):
                    ex = unit_vector(f, D.dim, x)
                    lhs = mu.matrix.mul_vec(sp_to_dense(f, ld.pair(l, x), L.dim))
                    if not vec_eq(f, lhs, dprod.apply(mu_cols[l], ex)):
                        bad = (l, x)
                        break
                if bad:
                    break
            report.add(
                f"equivariance: mu({fmt('l', 'x')}) = {fmt('mu(l)', 'x')}",
                bad is None, bad)

        bad1 = bad2 = None
        for l in range(L.dim):
            el = unit_vector(f, L.dim, l)
            for lp in range(L.dim):
                elp = unit_vector(f, L.dim, lp)
                mid = lprod.apply(el, elp)
                if bad1 is None and not vec_eq(f, dl.apply(mu_cols[l], elp), mid):
                    bad1 = (l, lp)
                if bad2 is None and not vec_eq(f, mid, ld.apply(el, mu_cols[lp])):
                    bad2 = (l, lp)
            if bad1 and bad2:
                break
        lp_sym = "l'"
        report.add(f"peiffer: {fmt('mu(l)', lp_sym)} = {fmt('l', lp_sym)}",
                   bad1 is None, bad1)
        report.add(f"peiffer: {fmt('l', lp_sym)} = {fmt('l', 'mu(' + lp_sym + ')')}",
                   bad2 is None, bad2)
    return report


def crossed_module_report(mu: AlgebraMorphism, act: Action,
                          include_action=True) -> AxiomReport:
    report = AxiomReport(f"{act.flavor} crossed module")
    report.extend(mu.check(), "mu ")
    if include_action:
        report.extend(act.check(), "action ")
    return _crossed_equations(report, mu, act)


def crossed_equations_report(mu: AlgebraMorphism, act: Action) -> AxiomReport:
    """Morphism, equivariance, and Peiffer items only; the action tensors are
    taken as given.  This is the exact content mirrored by the semidirect
    homomorphism characterization."""
    return crossed_module_report(mu, act, include_action=False)


def _expect_xm_flavor(xm: CrossedModule, flavor, what):
    if xm.flavor != flavor:
        raise InvalidCrossedModule(
            f"{what} expects flavor {flavor!r}, got {xm.flavor!r}")


def check_xdias(xm: CrossedModule) -> AxiomReport:
    _expect_xm_flavor(xm, "dias", "check_xdias")
    return xm.check()


def check_xlb(xm: CrossedModule) -> AxiomReport:
    _expect_xm_flavor(xm, "lb", "check_xlb")
    return xm.check()


def check_xlie(xm: CrossedModule) -> AxiomReport:
    _expect_xm_flavor(xm, "lie", "check_xlie")
    return xm.check()


def check_xas(xm: CrossedModule) -> AxiomReport:
    _expect_xm_flavor(xm, "as", "check_xas")
    return xm.check()


# ---------------------------------------------------------------------------
# morphisms of crossed modules


class XmodMorphism:
    """A pair (alpha on actees, beta on actors) between crossed modules."""

    def __init__(self, source: CrossedModule, target: CrossedModule,
                 alpha: AlgebraMorphism, beta: AlgebraMorphism):
        if source.flavor != target.flavor:
            raise InvalidCrossedModule("crossed modules of different flavors")
        for f_, dom, cod, tag in ((alpha, source.actee, target.actee, "alpha"),
                                  (beta, source.actor, target.actor, "beta")):
            if not (f_.source is dom or f_.source.same_structure(dom)):
                raise DimensionMismatch(f"{tag} has the wrong source")
            if not (f_.target is cod or f_.target.same_structure(cod)):
                raise DimensionMismatch(f"{tag} has the wrong target")
        self.source = source
        self.target = target
        self.alpha = alpha
        self.beta = beta

    def check(self) -> AxiomReport:
        report = AxiomReport("crossed-module morphism")
        report.extend(self.alpha.check(), "alpha ")
        report.extend(self.beta.check(), "beta ")
        square = (self.target.mu.matrix.mul(self.alpha.matrix)
                  == self.beta.matrix.mul(self.source.mu.matrix))
        report.add("square: mu' . alpha = beta . mu", square, None)

        f = self.source.actee.field
        act, act2 = self.source.action, self.target.action
        D, L = self.source.actor, self.source.actee
        a_cols = [self.alpha.matrix.col(j) for j in range(L.dim)]
        b_cols = [self.beta.matrix.col(j) for j in range(D.dim)]
        for pidx in range(product_arity(act.flavor)):
            dl, dl2 = act.cross(pidx, "DL"), act2.cross(pidx, "DL")
            ld, ld2 = act.cross(pidx, "LD"), act2.cross(pidx, "LD")

            def fmt(a, b):
                return _fmt_product(act.flavor, pidx, a, b)

            bad = None
            for x in range(D.dim):
                for l in range(L.dim):
                    lhs = self.alpha.matrix.mul_vec(
                        sp_to_dense(f, dl.pair(x, l), L.dim))
                    if not vec_eq(f, lhs, dl2.apply(b_cols[x], a_cols[l])):
                        bad = (x, l)
                        break
                if bad:
                    break
            report.add(
                f"equivariant: alpha({fmt('x', 'l')}) = "
                f"{fmt('beta(x)', 'alpha(l)')}", bad is None, bad)

            if act.flavor != "lie":
                bad = None
                for l in range(L.dim):
                    for x in range(D.dim):
                        lhs = self.alpha.matrix.mul_vec(
                            sp_to_dense(f, ld.pair(l, x), L.dim))
                        if not vec_eq(f, lhs, ld2.apply(a_cols[l], b_cols[x])):
                            bad = (l, x)
                            break
                    if bad:
                        break
                report.add(
                    f"equivariant: alpha({fmt('l', 'x')}) = "
                    f"{fmt('alpha(l)', 'beta(x)')}", bad is None, bad)
        return report

    def is_valid(self) -> bool:
        return self.check().passed

    @classmethod
    def identity(cls, xm: CrossedModule) -> "XmodMorphism":
        return cls(xm, xm, AlgebraMorphism.identity(xm.actee),
                   AlgebraMorphism.identity(xm.actor))

    def compose(self, other: "XmodMorphism") -> "XmodMorphism":
        return XmodMorphism(other.source, self.target,
                            self.alpha.compose(other.alpha),
                            self.beta.compose(other.beta))


def check_xmod_morphism(m: XmodMorphism) -> bool:
    return m.check().passed


# ---------------------------------------------------------------------------
# the semidirect characterization of the crossed-module equations


def _matrix_preserves(f, src_products, tgt_products, mat: Matrix):
    cols = [mat.col(j) for j in range(mat.cols)]
    for pidx, (ps, pt) in enumerate(zip(src_products, tgt_products)):
        for i in range(mat.cols):
            for j in range(mat.cols):
                lhs = mat.mul_vec(sp_to_dense(f, ps.pair(i, j), mat.cols))
                if not vec_eq(f, lhs, pt.apply(cols[i], cols[j])):
                    return False, (pidx, i, j)
    return True, None


def semidirect_homomorphism_checks(xm, action=None) -> AxiomReport:
    """Verify the three canonical maps between semidirect products.

    Accepts a CrossedModule or a raw ``(mu, action)`` pair.  The raw form
    assumes nothing, so the verdicts of the first two maps can be compared
    against ``crossed_equations_report`` on arbitrary candidates: a map
    ``(mu,id)`` from the actee semidirect actor into the actor acting on
    itself, a map ``(id,mu)`` into it from the actee acting on itself, and
    the involution-style map (l,x) -> (-l, mu(l)+x).
    """
    if isinstance(xm, CrossedModule):
        mu, act = xm.mu, xm.action
    else:
        mu, act = xm, action
    L, D = mu.source, mu.target
    f = L.field
    nl, nd = L.dim, D.dim
    e_ld = _semidirect_products(act)
    e_dd = _semidirect_products(self_action(D, check=False))
    e_ll = _semidirect_products(self_action(L, check=False))

    map1 = (mu.matrix.hstack(Matrix.zero(f, nd, nd))
            .vstack(Matrix.zero(f, nd, nl).hstack(Matrix.identity(f, nd))))
    map2 = (Matrix.identity(f, nl).hstack(Matrix.zero(f, nl, nl))
            .vstack(Matrix.zero(f, nd, nl).hstack(mu.matrix)))
    map3 = (Matrix.identity(f, nl).neg().hstack(Matrix.zero(f, nl, nd))
            .vstack(mu.matrix.hstack(Matrix.identity(f, nd))))

    report = AxiomReport("semidirect homomorphisms")
    for name, mat, src, tgt in (
            ("(mu,id) : LxD -> DxD preserves products", map1, e_ld, e_dd),
            ("(id,mu) : LxL -> LxD preserves products", map2, e_ll, e_ld),
            ("(l,x) -> (-l, mu(l)+x) : LxD -> LxD preserves products",
             map3, e_ld, e_ld)):
        ok, where = _matrix_preserves(f, src, tgt, mat)
        report.add(name, ok, where)
    return report


# ---------------------------------------------------------------------------
# structural consequences


def lemma_crossed_checks(xm: CrossedModule) -> AxiomReport:
    """Consequences every certified crossed module must satisfy.

    Checks Ker mu inside the annihilator of the actee, Im mu an ideal of the
    actor, triviality of the image's action on the kernel, and validity of
    the induced bimodule of actor/Im mu on Ker mu.  A failure raises
    LemmaViolation: it can only come from an upstream bug.
    """
    mu, act = xm.mu, xm.action
    L, D = xm.actee, xm.actor
    f = L.field
    flavor = xm.flavor
    report = AxiomReport(f"{flavor} crossed module structure")

    ker = kernel_of(mu)
    report.add("Ker mu lies in the annihilator of the actee",
               ker.is_subspace_of(annihilator(L)), None)
    im = image_of(mu)
    report.add("Im mu is an ideal of the actor", is_ideal(D, im), None)

    kbasis = [list(r) for r in ker.basis]
    ibasis = [list(r) for r in im.basis]
    bad = None
    for pidx in range(product_arity(flavor)):
        dl = act.cross(pidx, "DL")
        ld = act.cross(pidx, "LD")
        for gi, g in enumerate(ibasis):
            for ki, k in enumerate(kbasis):
                if (not vec_is_zero(f, dl.apply(g, k))
                        or not vec_is_zero(f, ld.apply(k, g))):
                    bad = (pidx, gi, ki)
                    break
            if bad:
                break
        if bad:
            break
    report.add("Im mu acts trivially on Ker mu", bad is None, bad)

    if report.passed:
        kalg = abelian_algebra(flavor, f, ker.dim)
        qalg, _ = quotient_algebra(D, im)
        qm = QuotientMap(D.dim, im)
        tensors = {}
        for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[flavor]):
            dl = act.cross(pidx, "DL")
            ld = act.cross(pidx, "LD")

            def into_kernel(u):
                c = ker.coords(u)
                if c is None:
                    raise LemmaViolation(
                        "action does not preserve Ker mu", report)
                return sp_from_dense(f, c)

            tensors[dl_name] = BilinearMap.from_function(
                f, qm.dim, ker.dim, ker.dim,
                lambda q, k, dl=dl: into_kernel(
                    dl.apply(qm.section.col(q), kbasis[k])))
            if ld_name:
                tensors[ld_name] = BilinearMap.from_function(
                    f, ker.dim, qm.dim, ker.dim,
                    lambda k, q, ld=ld: into_kernel(
                        ld.apply(kbasis[k], qm.section.col(q))))
        induced = make_action(flavor, qalg, kalg, tensors, check=False)
        report.extend(induced.check(), "induced bimodule: ")

    if not report.passed:
        bad_item = report.first_failure()
        raise LemmaViolation(
            f"structure lemma failed: {bad_item.name} at {bad_item.where}",
            report)
    return report


# ---------------------------------------------------------------------------
# action builders


def action_from_ideal(ambient: Algebra, ideal: Subspace, actor=None,
                      check=True):
    """Ambient products give an action of a subalgebra on an ideal.

    Returns ``(action, actee_inclusion, actor_inclusion)``; with ``actor``
    omitted the whole ambient algebra acts.
    """
    if not is_ideal(ambient, ideal):
        raise NotAnIdeal("the designated actee subspace is not an ideal")
    f = ambient.field
    actee_alg, l_incl = induced_subalgebra(ambient, ideal)
    if actor is None:
        actor_alg, d_incl = ambient, AlgebraMorphism.identity(ambient)
        actor_cols = [unit_vector(f, ambient.dim, i) for i in range(ambient.dim)]
    else:
        actor_alg, d_incl = induced_subalgebra(ambient, actor)
        actor_cols = [d_incl.matrix.col(j) for j in range(actor_alg.dim)]
    actee_cols = [l_incl.matrix.col(j) for j in range(actee_alg.dim)]

    def back(u):
        c = ideal.coords(u)
        if c is None:
            raise NotAnIdeal("products leave the actee subspace")
        return sp_from_dense(f, c)

    tensors = {}
    for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[ambient.flavor]):
        prod = ambient.products()[pidx]
        tensors[dl_name] = BilinearMap.from_function(
            f, actor_alg.dim, actee_alg.dim, actee_alg.dim,
            lambda x, l, prod=prod: back(prod.apply(actor_cols[x], actee_cols[l])))
        if ld_name:
            tensors[ld_name] = BilinearMap.from_function(
                f, actee_alg.dim, actor_alg.dim, actee_alg.dim,
                lambda l, x, prod=prod: back(prod.apply(actee_cols[l], actor_cols[x])))
    act = make_action(ambient.flavor, actor_alg, actee_alg, tensors, check=check)
    return act, l_incl, d_incl


def xmod_from_ideal(ambient: Algebra, ideal: Subspace, check=True) -> CrossedModule:
    """Inclusion of an ideal with the ambient action as a crossed module."""
    act, l_incl, _ = action_from_ideal(ambient, ideal, check=check)
    return CrossedModule(l_incl, act, check=check)


def action_from_morphism(fmor: AlgebraMorphism, check=True) -> Action:
    """The source acts on the target through images: x acts as its image."""
    D, L = fmor.source, fmor.target
    f = D.field
    fcols = [fmor.matrix.col(j) for j in range(D.dim)]
    tensors = {}
    for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[D.flavor]):
        prod = L.products()[pidx]
        tensors[dl_name] = BilinearMap.from_function(
            f, D.dim, L.dim, L.dim,
            lambda x, l, prod=prod: sp_from_dense(
                f, prod.apply(fcols[x], unit_vector(f, L.dim, l))))
        if ld_name:
            tensors[ld_name] = BilinearMap.from_function(
                f, L.dim, D.dim, L.dim,
                lambda l, x, prod=prod: sp_from_dense(
                    f, prod.apply(unit_vector(f, L.dim, l), fcols[x])))
    return make_action(D.flavor, D, L, tensors, check=check)


def action_from_surjection_with_central_kernel(fmor: AlgebraMorphism,
                                               check=True) -> Action:
    """The target of a surjection acts on the source through any section.

    Requires Ker fmor inside the annihilator of the source; that makes the
    section choice irrelevant, and a second section is tried to confirm it.
    """
    L, D = fmor.source, fmor.target
    f = L.field
    if not fmor.is_surjective():
        raise InvalidAction("morphism is not surjective")
    ker = kernel_of(fmor)
    if not ker.is_subspace_of(annihilator(L)):
        raise InvalidAction("kernel does not annihilate the source")
    sections = [[solve(fmor.matrix, unit_vector(f, D.dim, i))
                 for i in range(D.dim)]]
    if ker.dim > 0:
        shift = list(ker.basis[0])
        sections.append([vec_add(f, c, shift) for c in sections[0]])

    def build(cols):
        tensors = {}
        for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[L.flavor]):
            prod = L.products()[pidx]
            tensors[dl_name] = BilinearMap.from_function(
                f, D.dim, L.dim, L.dim,
                lambda x, l, prod=prod: sp_from_dense(
                    f, prod.apply(cols[x], unit_vector(f, L.dim, l))))
            if ld_name:
                tensors[ld_name] = BilinearMap.from_function(
                    f, L.dim, D.dim, L.dim,
                    lambda l, x, prod=prod: sp_from_dense(
                        f, prod.apply(unit_vector(f, L.dim, l), cols[x])))
        return tensors

    tensors = build(sections[0])
    if len(sections) > 1 and build(sections[1]) != tensors:
        raise InvalidAction("section choice changed the induced action")
    return make_action(L.flavor, D, L, tensors, check=check)


def action_from_bimodule(actor: Algebra, tensors, actee_dim=None, labels=None,
                         check=True) -> Action:
    """Wrap bimodule tensors as an action on an abelian actee."""
    if actee_dim is None:
        actee_dim = next(iter(tensors.values())).out_dim
    actee = abelian_algebra(actor.flavor, actor.field, actee_dim, labels)
    return make_action(actor.flavor, actor, actee, tensors, check=check)


def action_by_ambient_products(actor_incl: AlgebraMorphism,
                               actee_incl: AlgebraMorphism,
                               check=True) -> Action:
    """Action through two embeddings into a common ambient algebra.

    The actee image must absorb products with the actor image; each cross
    product is computed in the ambient and pulled back through the actee
    embedding, which must be injective.
    """
    E = actor_incl.target
    if not (actee_incl.target is E or actee_incl.target.same_structure(E)):
        raise DimensionMismatch("embeddings land in different ambients")
    actor_alg = actor_incl.source
    actee_alg = actee_incl.source
    f = E.field
    acols = [actor_incl.matrix.col(j) for j in range(actor_alg.dim)]
    lcols = [actee_incl.matrix.col(j) for j in range(actee_alg.dim)]

    def back(u):
        c = solve(actee_incl.matrix, u)
        if c is None:
            raise InvalidAction("ambient product leaves the actee image")
        return sp_from_dense(f, c)

    tensors = {}
    for pidx, (dl_name, ld_name) in enumerate(_SLOT_BY_PIDX[E.flavor]):
        prod = E.products()[pidx]
        tensors[dl_name] = BilinearMap.from_function(
            f, actor_alg.dim, actee_alg.dim, actee_alg.dim,
            lambda x, l, prod=prod: back(prod.apply(acols[x], lcols[l])))
        if ld_name:
            tensors[ld_name] = BilinearMap.from_function(
                f, actee_alg.dim, actor_alg.dim, actee_alg.dim,
                lambda l, x, prod=prod: back(prod.apply(lcols[l], acols[x])))
    return make_action(E.flavor, actor_alg, actee_alg, tensors, check=check)

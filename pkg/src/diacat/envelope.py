"""Truncated free objects and enveloping functors.

The free dialgebra on g generators has as basis the words "letters with one
distinguished center"; the two products either extend the right tail of the
first factor or shift the center into the second factor.  All objects here
are truncated at a length bound N: any product whose result would exceed N
is zero.  Truncation is exact for every purpose below, because a morphism
into an algebra whose (N+1)-fold products vanish factors uniquely through it.

On top of the free objects sit the enveloping quotients (one bracket
relation per generator pair), their universal transposes against nilpotent
targets, functoriality on morphisms, and the crossed-module-level enveloping
pipeline through the semidirect model and its kernel-product quotient.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .actions import CrossedModule, lemma_crossed_checks
from .algebra import (Algebra, AlgebraMorphism, AssociativeAlgebra,
                      BilinearMap, Dialgebra, LeibnizAlgebra,
                      derived_tower_nilpotent, ideal_closure, kernel_of,
                      multiply_subspaces, quotient_algebra)
from .cat1 import Cat1, cat1_of_xmod, xmod_of_cat1
from .config import guard_dim
from .errors import DimensionMismatch, InvalidCrossedModule, NotWellDefined
from .linalg import Matrix, QuotientMap, Subspace, vec_is_zero


class Word(NamedTuple):
    """Free-dialgebra basis word: letter tuples around a distinguished center."""

    left: tuple
    center: int
    right: tuple

    @property
    def length(self):
        return len(self.left) + 1 + len(self.right)

    def letters(self):
        return self.left + (self.center,) + self.right

    def sort_key(self):
        return (self.length, self.letters(), len(self.left))


def dialgebra_words(g: int, bound: int):
    """All words of length <= bound, ordered by length, letters, center slot."""
    out = []
    for length in range(1, bound + 1):
        for letters in _letter_strings(g, length):
            for pos in range(length):
                out.append(Word(letters[:pos], letters[pos], letters[pos + 1:]))
    out.sort(key=Word.sort_key)
    return tuple(out)


def _letter_strings(g, length):
    if length == 0:
        yield ()
        return
    for head in _letter_strings(g, length - 1):
        for a in range(g):
            yield head + (a,)


def _word_label(w: Word):
    parts = [f"v{a}" for a in w.left]
    parts.append(f"v{w.center}^")
    parts.extend(f"v{a}" for a in w.right)
    return ".".join(parts)


class FreeDialgebra(Dialgebra):
    """Truncated free dialgebra on ``generators`` letters."""

    def __init__(self, field, generators: int, bound: int, check=True):
        if generators < 1 or bound < 1:
            raise DimensionMismatch("need at least one generator and length 1")
        dim = sum(length * generators ** length for length in range(1, bound + 1))
        guard_dim(field, dim)
        words = dialgebra_words(generators, bound)
        assert len(words) == dim
        index = {w: i for i, w in enumerate(words)}
        one = field.one()

        def left_fn(i, j):
            a, b = words[i], words[j]
            if a.length + b.length > bound:
                return {}
            return {index[Word(a.left, a.center, a.right + b.letters())]: one}

        def right_fn(i, j):
            a, b = words[i], words[j]
            if a.length + b.length > bound:
                return {}
            return {index[Word(a.letters() + b.left, b.center, b.right)]: one}

        left = BilinearMap.from_function(field, dim, dim, dim, left_fn)
        right = BilinearMap.from_function(field, dim, dim, dim, right_fn)
        labels = [_word_label(w) for w in words]
        super().__init__(field, left, right, labels, check=check)
        self.generators = generators
        self.bound = bound
        self.words = words
        self.word_index = index


class TensorAlgebra(AssociativeAlgebra):
    """Truncated tensor algebra: nonempty words, concatenation, overflow 0."""

    def __init__(self, field, generators: int, bound: int, check=True):
        if generators < 1 or bound < 1:
            raise DimensionMismatch("need at least one generator and length 1")
        dim = sum(generators ** length for length in range(1, bound + 1))
        guard_dim(field, dim)
        words = []
        for length in range(1, bound + 1):
            words.extend(_letter_strings(generators, length))
        words.sort(key=lambda w: (len(w), w))
        words = tuple(words)
        index = {w: i for i, w in enumerate(words)}
        one = field.one()

        def fn(i, j):
            w = words[i] + words[j]
            if len(w) > bound:
                return {}
            return {index[w]: one}

        prod = BilinearMap.from_function(field, dim, dim, dim, fn)
        labels = [".".join(f"v{a}" for a in w) for w in words]
        super().__init__(field, prod, labels, check=check)
        self.generators = generators
        self.bound = bound
        self.words = words
        self.word_index = index


_FREE_CACHE: dict = {}


def free_dialgebra(field, generators: int, bound: int) -> FreeDialgebra:
    key = ("dias", field, generators, bound)
    if key not in _FREE_CACHE:
        _FREE_CACHE[key] = FreeDialgebra(field, generators, bound)
    return _FREE_CACHE[key]


def tensor_algebra(field, generators: int, bound: int) -> TensorAlgebra:
    key = ("as", field, generators, bound)
    if key not in _FREE_CACHE:
        _FREE_CACHE[key] = TensorAlgebra(field, generators, bound)
    return _FREE_CACHE[key]


# ---------------------------------------------------------------------------
# enveloping quotients


@dataclass(frozen=True)
class Envelope:
    """A truncated enveloping algebra with its defining data.

    ``eta`` maps generators to classes of length-1 words; ``proj`` is the
    projection from the free object; ``relations`` is the ideal divided out.
    Iterating yields (algebra, eta, proj).
    """

    source: Algebra
    bound: int
    algebra: Algebra
    eta: Matrix
    proj: AlgebraMorphism
    relations: Subspace

    def __iter__(self):
        return iter((self.algebra, self.eta, self.proj))

    @property
    def free(self):
        return self.proj.source


def ud(g: LeibnizAlgebra, bound: int) -> Envelope:
    """Truncated enveloping dialgebra: one relation per generator pair
    identifies the bracket with the difference of the two products."""
    f = g.field
    free = free_dialgebra(f, g.dim, bound)
    bracket = g.products()[0]
    rels = []
    for i in range(g.dim):
        wi = free.word_index[Word((), i, ())]
        for j in range(g.dim):
            wj = free.word_index[Word((), j, ())]
            vec = [f.zero()] * free.dim
            for k, c in bracket.pair(i, j).items():
                wk = free.word_index[Word((), k, ())]
                vec[wk] = f.add(vec[wk], c)
            for idx, c in free.products()[0].pair(wi, wj).items():
                vec[idx] = f.sub(vec[idx], c)
            for idx, c in free.products()[1].pair(wj, wi).items():
                vec[idx] = f.add(vec[idx], c)
            rels.append(vec)
    return _envelope_from_relations(g, bound, free, rels)


def u_lie(p: Algebra, bound: int) -> Envelope:
    """Truncated enveloping associative algebra of a Lie algebra:
    commutators of generators are identified with their brackets."""
    f = p.field
    free = tensor_algebra(f, p.dim, bound)
    bracket = p.products()[0]
    prod = free.products()[0]
    rels = []
    for i in range(p.dim):
        wi = free.word_index[(i,)]
        for j in range(p.dim):
            wj = free.word_index[(j,)]
            vec = [f.zero()] * free.dim
            for idx, c in prod.pair(wi, wj).items():
                vec[idx] = f.add(vec[idx], c)
            for idx, c in prod.pair(wj, wi).items():
                vec[idx] = f.sub(vec[idx], c)
            for k, c in bracket.pair(i, j).items():
                wk = free.word_index[(k,)]
                vec[wk] = f.sub(vec[wk], c)
            rels.append(vec)
    return _envelope_from_relations(p, bound, free, rels)


def _envelope_from_relations(source, bound, free, rels) -> Envelope:
    f = free.field
    ideal = ideal_closure(free, Subspace.span(f, rels, free.dim))
    alg, proj = quotient_algebra(free, ideal)
    if isinstance(free, FreeDialgebra):
        gen_word = lambda i: free.word_index[Word((), i, ())]
    else:
        gen_word = lambda i: free.word_index[(i,)]
    eta_cols = [proj.matrix.col(gen_word(i)) for i in range(source.dim)]
    eta = Matrix.from_cols(f, eta_cols, alg.dim)
    return Envelope(source, bound, alg, eta, proj, ideal)


# ---------------------------------------------------------------------------
# universal transposes and functoriality


def _word_value_dias(d: Algebra, gen_images, w: Word):
    # canonical bracketing l1 |- (l2 |- ... ((center -| r1) -| r2) ...)
    left_p, right_p = d.products()
    v = gen_images[w.center]
    for r in w.right:
        v = left_p.apply(v, gen_images[r])
    for l in reversed(w.left):
        v = right_p.apply(gen_images[l], v)
    return v


def _word_value_assoc(a: Algebra, gen_images, w):
    prod = a.products()[0]
    v = gen_images[w[0]]
    for x in w[1:]:
        v = prod.apply(v, gen_images[x])
    return v


def envelope_transpose(env: Envelope, target: Algebra, phi: Matrix,
                       check=True) -> AlgebraMorphism:
    """The morphism out of the envelope determined by generator images.

    ``phi`` sends generators of the enveloped algebra into ``target``; each
    word goes to the corresponding iterated product.  With ``check`` the
    defining relations are verified to die and the induced map to be a
    morphism; failures raise NotWellDefined (they mean ``phi`` is not a
    bracket morphism, or the target is not nilpotent enough).
    """
    free = env.free
    f = free.field
    if phi.cols != env.source.dim or phi.rows != target.dim:
        raise DimensionMismatch("generator images have the wrong shape")
    gen_images = [phi.col(i) for i in range(phi.cols)]
    value = _word_value_dias if isinstance(free, FreeDialgebra) else _word_value_assoc
    cols = [value(target, gen_images, w) for w in free.words]
    on_free = Matrix.from_cols(f, cols, target.dim)
    if check:
        for r in env.relations.basis:
            if not vec_is_zero(f, on_free.mul_vec(list(r))):
                raise NotWellDefined(
                    "generator images do not kill the enveloping relations")
    qm = QuotientMap(free.dim, env.relations)
    induced = AlgebraMorphism(env.algebra, target, on_free.mul(qm.section))
    if check:
        rep = induced.check()
        if not rep.passed:
            raise NotWellDefined(
                f"induced map is not a morphism: {rep.first_failure().name} "
                "(target must be nilpotent of class <= the bound)")
        if induced.matrix.mul(env.eta) != phi:
            raise NotWellDefined("induced map does not extend the generators")
    return induced


def envelope_functor_morphism(env_src: Envelope, env_tgt: Envelope,
                              f_mor: AlgebraMorphism, check=True) -> AlgebraMorphism:
    """Envelope of a morphism: substitute generator images letterwise."""
    phi = env_tgt.eta.mul(f_mor.matrix)
    out = envelope_transpose(env_src, env_tgt.algebra, phi, check=check)
    if check and out.matrix.mul(env_src.eta) != env_tgt.eta.mul(f_mor.matrix):
        raise NotWellDefined("envelope of a morphism is not natural on generators")
    return out


def nilpotent_of_class(alg: Algebra, bound: int) -> bool:
    """True iff all (bound+1)-fold products vanish."""
    return derived_tower_nilpotent(alg, bound)


# ---------------------------------------------------------------------------
# crossed-module-level envelopes


@dataclass(frozen=True)
class XudResult:
    """Full record of the crossed-module enveloping pipeline.

    ``xmod`` is the resulting crossed module and ``cat1`` its retraction
    model on the quotient ``env_big``/X.  ``base_bridge`` rewrites envelope
    coordinates of the base into the canonical coordinates of the embedded
    base subalgebra; ``unit_actee`` sends the input actee to Ker s-bar
    coordinates of the classes of its length-1 words.
    """

    xmod: CrossedModule
    cat1: Cat1
    env_big: Envelope
    env_base: Envelope
    pi: AlgebraMorphism
    uds: AlgebraMorphism
    udt: AlgebraMorphism
    udsigma: AlgebraMorphism
    lb_cat1: Cat1
    base_bridge: Matrix
    unit_actee: Matrix


def _crossed_envelope(xm: CrossedModule, bound: int, env_of) -> XudResult:
    c = cat1_of_xmod(xm)
    env_big = env_of(c.E, bound)
    env_base = env_of(c.base, bound)
    uds = envelope_functor_morphism(env_big, env_base, c.s)
    udt = envelope_functor_morphism(env_big, env_base, c.t)
    udsigma = envelope_functor_morphism(env_base, env_big, c.incl)
    big = env_big.algebra
    f = big.field
    ks = kernel_of(uds)
    kt = kernel_of(udt)
    x = multiply_subspaces(big, ks, kt).add(multiply_subspaces(big, kt, ks))
    xc = ideal_closure(big, x)
    if xc.dim > x.dim:
        warnings.warn(
            "kernel-product subspace was not an ideal "
            f"(dim {x.dim} -> {xc.dim}); using the closure")
    quot, pi = quotient_algebra(big, xc)
    for r in xc.basis:
        # s and t must factor through the quotient
        assert vec_is_zero(f, uds.matrix.mul_vec(list(r)))
        assert vec_is_zero(f, udt.matrix.mul_vec(list(r)))
    qm = QuotientMap(big.dim, xc)
    sbar = uds.matrix.mul(qm.section)
    tbar = udt.matrix.mul(qm.section)
    incl_bar = pi.matrix.mul(udsigma.matrix)
    assert incl_bar.rank() == env_base.algebra.dim
    d_sub = Subspace.span(f, [incl_bar.col(i) for i in range(incl_bar.cols)],
                          quot.dim)
    bridge = Matrix.from_cols(
        f, [d_sub.coords(incl_bar.col(i)) for i in range(incl_bar.cols)],
        d_sub.dim)
    cat1 = Cat1(quot, d_sub, bridge.mul(sbar), bridge.mul(tbar))
    out = xmod_of_cat1(cat1)
    lemma_crossed_checks(out)
    kers_bar = kernel_of(cat1.s)
    eta_classes = pi.matrix.mul(env_big.eta)
    unit_cols = []
    for q in range(xm.actee.dim):
        coords = kers_bar.coords(eta_classes.col(q))
        assert coords is not None  # actee generators land in Ker s-bar
        unit_cols.append(coords)
    unit_actee = Matrix.from_cols(f, unit_cols, kers_bar.dim)
    return XudResult(out, cat1, env_big, env_base, pi, uds, udt, udsigma,
                     c, bridge, unit_actee)


def xud_full(xlb: CrossedModule, bound: int) -> XudResult:
    """Enveloping crossed module of dialgebras of a Leibniz crossed module.

    Builds the semidirect retraction model, envelopes it and the base,
    quotients by the ideal spanned by products of the two structural
    kernels, and restricts the induced target map to Ker s-bar.
    """
    if xlb.flavor != "lb":
        raise InvalidCrossedModule("xud expects a Leibniz crossed module")
    return _crossed_envelope(xlb, bound, ud)


def xud(xlb: CrossedModule, bound: int) -> CrossedModule:
    return xud_full(xlb, bound).xmod


def xu_full(xlie: CrossedModule, bound: int) -> XudResult:
    """Lie-to-associative analog of xud_full."""
    if xlie.flavor != "lie":
        raise InvalidCrossedModule("xu expects a Lie crossed module")
    return _crossed_envelope(xlie, bound, u_lie)


def xu(xlie: CrossedModule, bound: int) -> CrossedModule:
    return xu_full(xlie, bound).xmod

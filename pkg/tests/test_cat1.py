import pytest

from diacat import fixtures
from diacat.cat1 import (Cat1, cat1_decomposition_iso, cat1_isomorphism_report,
                         cat1lb_of_xlb, check_cat1, check_internal_category,
                         identity_cat1, phi, psi, xdias_to_cat1,
                         xdias_to_internal, xlb_of_cat1lb,
                         xmod_isomorphism_report)
from diacat.errors import InvalidCat1
from diacat.fields import GF
from diacat.functors import find_xmod_isomorphism, xmods_equal
from diacat.linalg import Matrix, Subspace

F2 = GF(2)

DIAS_XMODS = ["xdias-ideal-incl-f2", "xdias-zero-f2"]
LB_XMODS = ["xlb-ideal-e-f2", "xlb-ident-abelian-1-f2", "xlb-ident-ff-e-f2",
            "xlb-zero-ff-e-f2"]


def test_identity_cat1_passes():
    c = identity_cat1(fixtures.get("leibniz-ff-e"))
    assert check_cat1(c).passed
    assert c.base.dim == c.E.dim


def test_semidirect_model_is_cat1():
    for name in DIAS_XMODS:
        c = xdias_to_cat1(fixtures.get(name))
        assert c.certificate is not None and c.certificate.passed, name
    for name in LB_XMODS:
        c = cat1lb_of_xlb(fixtures.get(name))
        assert c.certificate.passed, name


def test_kernel_product_violation_is_rejected():
    g = fixtures.get("leibniz-ff-e-f2")
    zero_sub = Subspace.span(F2, [], 2)
    z = Matrix.zero(F2, 0, 2)
    # s = t = 0 onto the zero subalgebra: Ker s = Ker t = everything,
    # and [f,f] = e is a nonvanishing kernel product
    with pytest.raises(InvalidCat1):
        Cat1(g, zero_sub, z, z)
    c = Cat1(g, zero_sub, z, z, check=False)
    rep = check_cat1(c)
    assert not rep.passed


def test_crossed_roundtrip_dias():
    for name in DIAS_XMODS:
        xm = fixtures.get(name)
        back = phi(xdias_to_cat1(xm))
        assert xmods_equal(xm, back) or \
            find_xmod_isomorphism(xm, back) is not None, name


def test_crossed_roundtrip_lb():
    for name in LB_XMODS:
        xm = fixtures.get(name)
        back = xlb_of_cat1lb(cat1lb_of_xlb(xm))
        assert xmods_equal(xm, back) or \
            find_xmod_isomorphism(xm, back) is not None, name


def test_cat1_roundtrip_with_decomposition_witness():
    for name in DIAS_XMODS + LB_XMODS:
        xm = fixtures.get(name)
        to_cat1 = xdias_to_cat1 if xm.flavor == "dias" else cat1lb_of_xlb
        back_of = phi if xm.flavor == "dias" else xlb_of_cat1lb
        c = to_cat1(xm)
        c2 = to_cat1(back_of(c))
        h = cat1_decomposition_iso(c, c2)
        rep = cat1_isomorphism_report(c, c2, h)
        assert rep.passed, (name, rep.first_failure())


def test_decomposition_iso_on_identity_cat1():
    # identity cat-1 on a plain algebra decomposes with trivial kernel part
    alg = fixtures.get("leibniz-ff-e-f2")
    c = identity_cat1(alg)
    xm = xlb_of_cat1lb(c)
    assert xm.actee.dim == 0 and xm.actor.dim == alg.dim
    c2 = cat1lb_of_xlb(xm)
    h = cat1_decomposition_iso(c, c2)
    assert cat1_isomorphism_report(c, c2, h).passed


def test_xmod_isomorphism_report_identity():
    xm = fixtures.get("xlb-ideal-e-f2")
    from diacat.algebra import AlgebraMorphism
    rep = xmod_isomorphism_report(xm, xm,
                                  AlgebraMorphism.identity(xm.actee),
                                  AlgebraMorphism.identity(xm.actor))
    assert rep.passed


def test_internal_category_structure_and_roundtrip():
    for name in DIAS_XMODS:
        xm = fixtures.get(name)
        ic = xdias_to_internal(xm)
        assert check_internal_category(ic).passed, name
        back = psi(ic)
        assert xmods_equal(xm, back) or \
            find_xmod_isomorphism(xm, back) is not None, name


def test_internal_composition_agrees_on_units():
    # gamma of (sigma(x), sigma(x)) must be sigma(x)
    xm = fixtures.get("xdias-ideal-incl-f2")
    ic = xdias_to_internal(xm)
    rep = check_internal_category(ic)
    names = [it.name for it in rep.items]
    assert any("unit" in n or "sigma" in n for n in names)

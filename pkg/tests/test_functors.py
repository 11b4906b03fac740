import pytest

from diacat import fixtures
from diacat.algebra import abelian_algebra
from diacat.errors import DiacatError, SearchSpaceTooLarge
from diacat.fields import GF, QQ
from diacat.functors import (FUNCTOR_TAGS, algebras_equal,
                             apply_algebra_functor, apply_xmod_functor,
                             check_parallelepiped, check_square,
                             cokernel_of_mu, embed, enumerate_generated_homs,
                             enumerate_homs, enumerate_xmod_homs,
                             find_algebra_isomorphism, find_xmod_isomorphism,
                             inc_xas_to_xdias, inc_xlie_to_xlb, project,
                             square_fixture_kind, square_flavors, square_ids,
                             verify_adjunction_chain, verify_adjunction_ud,
                             verify_adjunction_xud, xas_of_xdias,
                             xlb_of_xdias, xliea_of_xas, xliel_of_xlb,
                             xmods_equal)

F2 = GF(2)


def test_functor_tag_registry_is_closed():
    assert len(FUNCTOR_TAGS) == 36
    cats = {"Dias", "Lb", "As", "Lie", "XDias", "XLb", "XAs", "XLie"}
    for tag, (src, dst) in FUNCTOR_TAGS.items():
        assert src in cats and dst in cats, tag


def test_algebra_functors_flavor_contract():
    d = fixtures.get("free-dias-1-2-f2")
    assert apply_algebra_functor("LB", d).flavor == "lb"
    assert apply_algebra_functor("AS", d).flavor == "as"
    a = apply_algebra_functor("AS", d)
    assert apply_algebra_functor("Liea", a).flavor == "lie"
    g = apply_algebra_functor("LB", d)
    assert apply_algebra_functor("Liel", g).flavor == "lie"
    lie = apply_algebra_functor("Liel", g)
    assert apply_algebra_functor("IncLieLb", lie).flavor == "lb"
    assert apply_algebra_functor("IncAsDias", a).flavor == "dias"


def test_leibnization_bracket_values():
    d = fixtures.get("free-dias-1-2-f2")
    g = apply_algebra_functor("LB", d)
    # [x, x] = x -| x - x |- x: components on basis {x, x-|x, x|-x}
    out = dict(g.bracket.pair(0, 0))
    assert out == {1: F2.one(), 2: F2.one()}


def test_crossed_leibnization_matches_algebra_level():
    xm = fixtures.get("xdias-ideal-incl-f2")
    xlb = xlb_of_xdias(xm)
    assert xlb.flavor == "lb"
    assert algebras_equal(xlb.actor,
                          apply_algebra_functor("LB", xm.actor))
    assert xlb.check().passed


def test_crossed_associativization_is_a_quotient():
    xm = fixtures.get("xdias-ideal-incl-f2")
    out, projs = xas_of_xdias(xm)
    assert out.flavor == "as"
    assert projs.check().passed
    assert out.actor.dim <= xm.actor.dim


def test_crossed_lie_functors():
    xm = fixtures.get("xlb-ideal-e-f2")
    xlie = xliel_of_xlb(xm)
    assert xlie.flavor == "lie"
    assert xlie.check().passed
    xa = fixtures.get("xas-ident-nilp2-f2")
    assert xliea_of_xas(xa).flavor == "lie"
    assert inc_xas_to_xdias(xa).flavor == "dias"
    assert inc_xlie_to_xlb(xlie).flavor == "lb"


def test_embed_project_round_trips():
    g = fixtures.get("leibniz-ff-e-f2")
    j1 = embed("J1'", g)
    assert j1.actee.dim == j1.actor.dim == 2
    assert algebras_equal(project("U1'", j1), g)
    assert algebras_equal(project("U2'", j1), g)
    j0 = embed("J0'", g)
    assert j0.actee.dim == 0
    assert algebras_equal(project("U1'", j0), g)
    coker, proj = cokernel_of_mu(fixtures.get("xlb-ideal-e-f2"))
    assert coker.dim == 1
    assert proj.check().passed


def test_enumerate_homs_frozen_count():
    g = fixtures.get("leibniz-ff-e-f2")
    homs = enumerate_homs(g, g, 2 ** 20)
    assert len(homs) == 4
    from diacat.envelope import ud
    env = ud(g, 2)
    d = fixtures.get("free-dias-1-2-f2")
    gen = enumerate_generated_homs(env, d, 2 ** 20)
    full = enumerate_homs(env.algebra, d, 2 ** 20)
    assert {m.matrix for m in gen} == {m.matrix for m in full}


def test_enumerate_homs_cap():
    g = fixtures.get("leibniz-ff-e-f2")
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_homs(g, g, 3)


def test_enumerate_homs_rejects_infinite_field():
    g = fixtures.get("leibniz-ff-e")
    with pytest.raises(DiacatError):
        enumerate_homs(g, g, 2 ** 20)


def test_enumerate_xmod_homs_frozen_count():
    j1 = fixtures.get("xlb-ident-abelian-1-f2")
    homs = enumerate_xmod_homs(j1, j1, 2 ** 20)
    assert len(homs) == 2
    for m in homs:
        assert m.check().passed


def test_verify_adjunction_ud_frozen():
    rep = verify_adjunction_ud(fixtures.get("lb-abelian-1-f2"),
                               fixtures.get("free-dias-1-2-f2"), 2)
    assert rep.passed and len(rep.left) == 4
    rep2 = verify_adjunction_ud(fixtures.get("leibniz-ff-e-f2"),
                                fixtures.get("free-dias-1-2-f2"), 2)
    assert rep2.passed and len(rep2.left) == 8


def test_verify_adjunction_xud_frozen():
    cases = [("xlb-zero-ff-e-f2", "xdias-zero-f2", 8),
             ("xlb-ident-abelian-1-f2", "xdias-ideal-incl-f2", 4),
             ("xlb-ideal-e-f2", "xdias-ideal-incl-f2", 8)]
    for xname, dname, count in cases:
        rep = verify_adjunction_xud(fixtures.get(xname),
                                    fixtures.get(dname), 2)
        assert rep.passed, (xname, rep.items.first_failure())
        assert len(rep.left) == count, (xname, len(rep.left))


def test_adjunction_chain_all_pairs():
    batteries = {
        "dias": ([(fixtures.get("xdias-ideal-incl-f2"),
                   fixtures.get("dias-abelian-2-f2"))],
                 ("U", "J", "")),
        "lb": ([(fixtures.get("xlb-ideal-e-f2"),
                 fixtures.get("leibniz-ff-e-f2"))],
               ("U", "J", "'")),
        "as": ([(fixtures.get("xas-ident-nilp2-f2"),
                 fixtures.get("as-nilp-2-f2"))],
               ("G", "I", "")),
        "lie": ([(fixtures.get("xlie-abelian-pair-f2"),
                  fixtures.get("lie-abelian-1-f2"))],
                ("G", "I", "'")),
    }
    for flavor, (fix, (p, e, sfx)) in batteries.items():
        for i in (0, 1):
            for pair in ((f"{p}{i}{sfx}", f"{e}{i}{sfx}"),
                         (f"{e}{i}{sfx}", f"{p}{i + 1}{sfx}")):
                rep = verify_adjunction_chain(pair, fix)
                assert rep.passed, (flavor, pair, rep.first_failure())


def test_adjunction_chain_rejects_bad_pair():
    with pytest.raises(DiacatError):
        verify_adjunction_chain(("U2", "J2"), [])
    with pytest.raises(DiacatError):
        verify_adjunction_chain(("U0", "J0'"), [])


def test_square_registry_surface():
    ids = square_ids()
    for sq in ("2.8-outer", "2.8-inner", "LbDias-J0", "LbDias-XUd-J1",
               "AsLie-I0", "AsDias-I1", "LieLb-I0", "base-XLiea",
               "base-XUd-XU"):
        assert sq in ids
    assert square_fixture_kind("base-XLiea") == "xmod"
    assert square_fixture_kind("2.8-outer") == "algebra"
    assert "dias" in square_flavors("2.8-outer")


def test_square_verdicts_frozen():
    d = fixtures.get("free-dias-1-2")
    rep = check_square("2.8-outer", d)
    assert rep.passed and rep.verdict in ("EQUAL", "ISOMORPHIC")
    g = fixtures.get("leibniz-ff-e-f2")
    assert check_square("LbDias-XUd-J0", g).verdict == "EQUAL"
    assert check_square("LbDias-XUd-J1", g).passed
    lie = fixtures.get("lie-abelian-1-f2")
    assert check_square("AsLie-I1", lie).passed
    xm = fixtures.get("xlb-ideal-e-f2")
    assert check_square("base-XUd-XU", xm).verdict == "EQUAL"


def test_square_rejects_wrong_flavor_fixture():
    with pytest.raises(DiacatError):
        check_square("2.8-outer", fixtures.get("leibniz-ff-e-f2"))


def test_parallelepiped_all_faces():
    rep = check_parallelepiped(fixtures.get("xlb-ideal-e-f2"))
    assert rep.passed
    assert len(rep.items) == 16
    faces = {it.name.split(":", 1)[0] for it in rep.items}
    assert faces == {"top", "base", "lateral-LbDias", "lateral-AsDias",
                     "lateral-AsLie", "lateral-LieLb"}


def test_parallelepiped_from_lie_fixture():
    rep = check_parallelepiped(fixtures.get("xlie-abelian-pair-f2"))
    assert rep.passed


def test_iso_search_positive_and_negative():
    g = fixtures.get("leibniz-ff-e-f2")
    assert find_algebra_isomorphism(g, g) is not None
    ab2 = abelian_algebra("lb", F2, 2)
    assert find_algebra_isomorphism(g, ab2) is None
    xm = fixtures.get("xlb-ideal-e-f2")
    assert find_xmod_isomorphism(xm, xm) is not None
    assert find_xmod_isomorphism(xm, fixtures.get("xlb-ident-ff-e-f2")) is None


def test_apply_xmod_functor_tags():
    xm = fixtures.get("xdias-ideal-incl-f2")
    assert apply_xmod_functor("XLB", xm).flavor == "lb"
    assert apply_xmod_functor("XAS", xm).flavor == "as"
    xlb = fixtures.get("xlb-ideal-e-f2")
    assert apply_xmod_functor("XLiel", xlb).flavor == "lie"
    assert apply_xmod_functor("XUd", xlb, 2).flavor == "dias"
    xlie = fixtures.get("xlie-abelian-pair-f2")
    assert apply_xmod_functor("XU", xlie, 2).flavor == "as"
    with pytest.raises(DiacatError):
        apply_xmod_functor("XUd", xlb)  # missing bound

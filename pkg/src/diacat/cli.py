"""Command-line surface: check documents, run constructions, verify
diagrams and adjunctions, and emit the bundled fixture corpus.

Exit codes are a stable contract: 0 pass, 1 mathematical failure,
2 input error, 3 resource cap exceeded.  Machine-readable JSON goes to
stdout with sorted keys; human commentary goes to stderr.
"""

import argparse
import json
import os
import sys

from . import documents, fixtures
from .actions import semidirect
from .cat1 import (cat1_decomposition_iso, cat1_isomorphism_report,
                   cat1lb_of_xlb, check_internal_category, phi, psi,
                   xdias_to_cat1, xdias_to_internal, xlb_of_cat1lb)
from .errors import (DiacatError, ParseError, ResourceCapExceeded,
                     SearchSpaceTooLarge)
from .functors import (FUNCTOR_TAGS, apply_algebra_functor,
                       apply_xmod_functor, check_parallelepiped, check_square,
                       embed, find_xmod_isomorphism, inc_xas_to_xdias,
                       inc_xlie_to_xlb, project, square_fixture_kind,
                       square_flavors, square_ids, verify_adjunction_chain,
                       verify_adjunction_ud, verify_adjunction_xud,
                       xmods_equal)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

_ALGEBRA_TAGS = {t for t, (s, d) in FUNCTOR_TAGS.items()
                 if not s.startswith("X") and not d.startswith("X")}
_XMOD_TAGS = {t for t, (s, d) in FUNCTOR_TAGS.items()
              if s.startswith("X") and d.startswith("X")}
_EMBED_TAGS = {t for t, (s, d) in FUNCTOR_TAGS.items()
               if not s.startswith("X") and d.startswith("X")}
_PROJECT_TAGS = {t for t, (s, d) in FUNCTOR_TAGS.items()
                 if s.startswith("X") and not d.startswith("X")}
_TRUNC_TAGS = {"Ud", "U", "XUd", "XU"}


def _err(msg):
    print(msg, file=sys.stderr)


def _emit_json(doc):
    sys.stdout.write(documents.canonical_json(doc))


def _report_items(report):
    return [{"name": it.name, "passed": it.passed,
             "where": None if it.where is None else str(it.where),
             "detail": None if it.detail is None else str(it.detail)}
            for it in report.items]


def _write_or_print(doc, out_path):
    text = documents.canonical_json(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve(spec, kind=None, check=True):
    """A fixture name or a document path, to a live object."""
    if spec in fixtures.names():
        fx = fixtures.info(spec)
        if kind is not None and fx.kind != kind:
            raise ParseError(f"fixture {spec!r} is a {fx.kind}, "
                             f"expected {kind}")
        return fixtures.get(spec)
    try:
        doc = documents.load_document(spec)
    except ParseError as exc:
        raise ParseError(f"{spec!r} is neither a bundled fixture name nor a "
                         f"readable document ({exc})") from exc
    found = documents.document_kind(doc)
    if kind is not None and found != kind:
        raise ParseError(f"{spec}: expected a {kind} document, found {found}")
    if found == "xmod":
        return documents.xmod_from_document(doc, check=check)
    return documents.algebra_from_document(doc, check=check)


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    doc = documents.load_document(args.path)
    if args.flavor_override:
        doc = dict(doc)
        doc["flavor"] = args.flavor_override
        if documents.document_kind(doc) == "xmod":
            doc["source"] = dict(doc["source"], flavor=args.flavor_override)
            doc["target"] = dict(doc["target"], flavor=args.flavor_override)
    kind = documents.document_kind(doc)
    if kind == "xmod":
        obj = documents.xmod_from_document(doc, check=False)
        report = obj.check()
        dims = [obj.actee.dim, obj.actor.dim]
        flavor = obj.flavor
    else:
        obj = documents.algebra_from_document(doc, check=False)
        report = obj.check()
        dims = [obj.dim]
        flavor = obj.flavor
    out = {"kind": kind, "flavor": flavor, "dims": dims,
           "passed": report.passed, "items": _report_items(report)}
    _emit_json(out)
    if args.verbose:
        for it in report.items:
            _err(f"{'PASS' if it.passed else 'FAIL'}  {it.name}"
                 + (f"  at {it.where}" if it.where is not None else ""))
    return EXIT_PASS if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# construct


def _construct(kind, args):
    def one(expected):
        if len(args.inputs) != 1:
            raise ParseError(f"construct {kind} takes exactly one input")
        return _resolve(args.inputs[0], expected)

    trunc = args.trunc
    if kind in _TRUNC_TAGS and trunc is None:
        raise ParseError(f"construct {kind} requires --trunc")
    if kind == "semidirect":
        xm = one("xmod")
        return documents.algebra_to_document(semidirect(xm.action)[0])
    if kind in _ALGEBRA_TAGS:
        out = apply_algebra_functor(kind, one("algebra"), trunc)
        return documents.algebra_to_document(out)
    if kind in _EMBED_TAGS:
        return documents.xmod_to_document(embed(kind, one("algebra")))
    if kind in _PROJECT_TAGS:
        return documents.algebra_to_document(project(kind, one("xmod")))
    if kind in _XMOD_TAGS:
        out = apply_xmod_functor(kind, one("xmod"), trunc)
        return documents.xmod_to_document(out)
    if kind == "roundtrip-cat1":
        xm = one("xmod")
        if xm.flavor == "dias":
            back = phi(xdias_to_cat1(xm))
        elif xm.flavor == "lb":
            back = xlb_of_cat1lb(cat1lb_of_xlb(xm))
        else:
            raise ParseError("roundtrip-cat1 needs a dias or lb crossed "
                             "module")
        return documents.xmod_to_document(back)
    if kind == "roundtrip-internal":
        xm = one("xmod")
        if xm.flavor != "dias":
            raise ParseError("roundtrip-internal needs a dias crossed module")
        return documents.xmod_to_document(psi(xdias_to_internal(xm)))
    raise ParseError(f"unknown construction kind {kind!r}")


def cmd_construct(args) -> int:
    doc = _construct(args.kind, args)
    report = {"kind": args.kind, "output": documents.document_kind(doc)}
    if documents.document_kind(doc) == "xmod":
        report["dims"] = [doc["source"]["dim"], doc["target"]["dim"]]
    else:
        report["dims"] = [doc["dim"]]
    _write_or_print(doc, args.out)
    if args.out:
        _emit_json(report)
    elif args.verbose:
        _err(json.dumps(report, sort_keys=True))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify


def _battery(kind, flavors=None):
    out = []
    for name, obj in fixtures.by_kind(kind):
        if flavors is None or obj.flavor in flavors:
            out.append((name, obj))
    return out


def _named_battery(args, kind, flavors):
    if args.fixtures:
        out = []
        for spec in args.fixtures:
            obj = _resolve(spec, kind)
            if flavors is not None and obj.flavor not in flavors:
                raise ParseError(f"{spec}: flavor {obj.flavor!r} not "
                                 f"accepted here (need one of "
                                 f"{sorted(flavors)})")
            out.append((spec, obj))
        return out
    return _battery(kind, flavors)


def _verify_square(args, square_id, results):
    if square_id not in square_ids():
        raise ParseError(f"unknown square id {square_id!r}; known: "
                         + ", ".join(sorted(square_ids())))
    flavors = set(square_flavors(square_id))
    kind = square_fixture_kind(square_id)
    for name, obj in _named_battery(args, kind, flavors):
        rep = check_square(square_id, obj, bound=args.trunc, cap=args.cap)
        results.append({"check": f"square:{square_id}", "fixture": name,
                        "expected": rep.expected, "verdict": rep.verdict,
                        "passed": rep.passed,
                        "detail": rep.detail.strip() or None})


_UD_PAIRS = [
    ("lb-abelian-1-f2", "free-dias-1-2-f2"),
    ("lb-abelian-1-f2", "dias-abelian-2-f2"),
    ("lb-abelian-2-f2", "dias-abelian-2-f2"),
    ("lb-abelian-2-f2", "dias-assoc-tri-2-f2"),
    ("leibniz-ff-e-f2", "free-dias-1-2-f2"),
    ("leibniz-ff-e-f2", "dias-assoc-tri-2-f2"),
]

_XUD_PAIRS = [
    ("xlb-zero-ff-e-f2", "xdias-zero-f2"),
    ("xlb-ident-abelian-1-f2", "xdias-ideal-incl-f2"),
    ("xlb-ideal-e-f2", "xdias-ideal-incl-f2"),
]

_CHAIN_FIXTURES = {
    "dias": ("xdias-ideal-incl-f2", "free-dias-1-2-f2"),
    "lb": ("xlb-ideal-e-f2", "leibniz-ff-e-f2"),
    "as": ("xas-ident-nilp2-f2", "as-nilp-2-f2"),
    "lie": ("xlie-abelian-pair-f2", "lie-abelian-1-f2"),
}


def _verify_adjunction(args, which, results):
    if which == "ud":
        for gname, dname in _UD_PAIRS:
            rep = verify_adjunction_ud(fixtures.get(gname),
                                       fixtures.get(dname),
                                       args.trunc, cap=args.cap)
            results.append({"check": "adjunction:ud",
                            "fixture": f"{gname} / {dname}",
                            "passed": rep.passed,
                            "cardinality": len(rep.left),
                            "items": _report_items(rep.items)})
        return
    if which == "xud":
        for xname, dname in _XUD_PAIRS:
            rep = verify_adjunction_xud(fixtures.get(xname),
                                        fixtures.get(dname),
                                        args.trunc, cap=args.cap)
            results.append({"check": "adjunction:xud",
                            "fixture": f"{xname} / {dname}",
                            "passed": rep.passed,
                            "cardinality": len(rep.left),
                            "items": _report_items(rep.items)})
        return
    if which.startswith("chain:"):
        idx = which.split(":", 1)[1]
        if idx not in ("0", "1"):
            raise ParseError("adjunction:chain takes index 0 or 1")
        i = int(idx)
        letters = {"dias": ("U", "J", ""), "lb": ("U", "J", "'"),
                   "as": ("G", "I", ""), "lie": ("G", "I", "'")}
        for flavor in ("dias", "lb", "as", "lie"):
            xname, aname = _CHAIN_FIXTURES[flavor]
            fix = [(fixtures.get(xname), fixtures.get(aname))]
            pl, el, sfx = letters[flavor]
            for pair in ((f"{pl}{i}{sfx}", f"{el}{i}{sfx}"),
                         (f"{el}{i}{sfx}", f"{pl}{i + 1}{sfx}")):
                rep = verify_adjunction_chain(pair, fix, cap=args.cap)
                results.append({"check": f"adjunction:{pair[0]}-|{pair[1]}",
                                "fixture": f"{xname} / {aname}",
                                "passed": rep.passed,
                                "items": _report_items(rep)})
        return
    raise ParseError(f"unknown adjunction battery {which!r}")


def _as_dias_or_lb(xm):
    if xm.flavor == "as":
        return inc_xas_to_xdias(xm)
    if xm.flavor == "lie":
        return inc_xlie_to_xlb(xm)
    return xm


def _verify_cat1(args, results):
    for name, xm0 in _named_battery(args, "xmod", None):
        xm = _as_dias_or_lb(xm0)
        if xm.flavor == "dias":
            to_cat1, back_of = xdias_to_cat1, phi
        else:
            to_cat1, back_of = cat1lb_of_xlb, xlb_of_cat1lb
        c = to_cat1(xm)
        back = back_of(c)
        ok_x = xmods_equal(xm, back)
        via = "equal"
        if not ok_x:
            ok_x = find_xmod_isomorphism(xm, back, cap=args.cap) is not None
            via = "isomorphism"
        c2 = to_cat1(back)
        h = cat1_decomposition_iso(c, c2)
        rep = cat1_isomorphism_report(c, c2, h)
        results.append({"check": "equivalence:cat1", "fixture": name,
                        "passed": ok_x and rep.passed,
                        "crossed-roundtrip": via,
                        "cat1-roundtrip": _report_items(rep)})


def _verify_internal(args, results):
    for name, xm0 in _named_battery(args, "xmod", {"dias", "as"}):
        xm = _as_dias_or_lb(xm0)
        ic = xdias_to_internal(xm)
        struct = check_internal_category(ic)
        back = psi(ic)
        ok = xmods_equal(xm, back)
        via = "equal"
        if not ok:
            ok = find_xmod_isomorphism(xm, back, cap=args.cap) is not None
            via = "isomorphism"
        results.append({"check": "equivalence:internal", "fixture": name,
                        "passed": ok and struct.passed, "roundtrip": via,
                        "structure": _report_items(struct)})


def _verify_parallelepiped(args, results):
    battery = _named_battery(args, "xmod", {"lb", "lie"})
    for name, xm in battery:
        rep = check_parallelepiped(xm, bound=args.trunc, cap=args.cap)
        faces: dict = {}
        for it in rep.items:
            key = it.name.split(":", 1)[0]
            faces[key] = faces.get(key, True) and it.passed
        results.append({"check": "parallelepiped", "fixture": name,
                        "passed": rep.passed, "faces": faces,
                        "items": _report_items(rep)})


def cmd_verify(args) -> int:
    what = args.what
    results: list = []
    if what.startswith("square:"):
        _verify_square(args, what.split(":", 1)[1], results)
    elif what.startswith("adjunction:"):
        _verify_adjunction(args, what.split(":", 1)[1], results)
    elif what == "equivalence:cat1":
        _verify_cat1(args, results)
    elif what == "equivalence:internal":
        _verify_internal(args, results)
    elif what == "parallelepiped":
        _verify_parallelepiped(args, results)
    else:
        raise ParseError(
            f"unknown verification {what!r}; expected square:<id>, "
            "adjunction:<ud|xud|chain:i>, equivalence:cat1, "
            "equivalence:internal or parallelepiped")
    passed = all(r["passed"] for r in results)
    _emit_json({"what": what, "passed": passed, "results": results})
    if args.verbose:
        for r in results:
            _err(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}  "
                 f"[{r['fixture']}]")
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# fixtures


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in fixtures.names():
            fx = fixtures.info(name)
            flag = "" if fx.valid else "  [invalid on purpose]"
            print(f"{name}  [{fx.kind}]  {fx.note}{flag}")
        return EXIT_PASS
    if not args.name:
        raise ParseError("fixtures emit requires a fixture name")
    try:
        doc = fixtures.document(args.name)
    except DiacatError as exc:
        raise ParseError(str(exc)) from exc
    _write_or_print(doc, args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diacat",
        description="Exact checks and constructions for dialgebras, "
                    "Leibniz/associative/Lie algebras, crossed modules and "
                    "their functor diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a document against its "
                                     "flavor's axioms")
    c.add_argument("path")
    c.add_argument("--flavor-override", choices=["dias", "lb", "as", "lie"])
    c.add_argument("--verbose", action="store_true")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="run a construction or functor and "
                                         "emit the result document")
    k.add_argument("kind")
    k.add_argument("inputs", nargs="*",
                   help="fixture names or document paths")
    k.add_argument("--trunc", type=int, default=None,
                   help="nilpotency bound for enveloping constructions")
    k.add_argument("--out", help="write the document here instead of stdout")
    k.add_argument("--verbose", action="store_true")
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run a verification battery")
    v.add_argument("what")
    v.add_argument("fixtures", nargs="*",
                   help="fixture names or document paths; default: bundled "
                        "battery")
    v.add_argument("--trunc", type=int, default=2)
    v.add_argument("--cap", type=int, default=None,
                   help="override the search-space cap")
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fixtures", help="list or emit the bundled corpus")
    f.add_argument("action", choices=["list", "emit"])
    f.add_argument("name", nargs="?")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env_cap = os.environ.get("DIACAT_MAX_DIM")
        if env_cap is not None and getattr(args, "cap", None) is None:
            try:
                args.cap = int(env_cap)
            except ValueError:
                raise ParseError(
                    f"DIACAT_MAX_DIM must be an integer, got {env_cap!r}")
        return args.func(args)
    except (ResourceCapExceeded, SearchSpaceTooLarge) as exc:
        _err(f"resource cap exceeded: {exc}")
        return EXIT_CAP
    except ParseError as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT
    except DiacatError as exc:
        _err(f"failure: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

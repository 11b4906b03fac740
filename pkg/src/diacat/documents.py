"""JSON document format for algebras and crossed modules.

Documents are plain dicts with string coefficients so that exact values
survive serialization.  Emission is canonical: triples sorted by index,
keys sorted by the JSON dumper, one trailing newline.  ``parse(emit(x))``
reproduces ``x`` and ``emit`` is idempotent on parsed documents.
"""

import json

from .actions import CrossedModule, make_action
from .algebra import (Algebra, AlgebraMorphism, AssociativeAlgebra,
                      BilinearMap, Dialgebra, LeibnizAlgebra, LieAlgebra,
                      product_arity)
from .errors import ParseError
from .fields import GF, QQ, PrimeField, Rationals
from .linalg import Matrix

_PRODUCT_KEYS = {"dias": ("left", "right"), "lb": ("bracket",),
                 "as": ("product",), "lie": ("bracket",)}
_ACTION_KEYS = {"dias": ("dl_left", "ld_left", "dl_right", "ld_right"),
                "lb": ("gq", "qg"), "as": ("ar", "ra"), "lie": ("pm",)}
_ALGEBRA_CLASSES = {"dias": Dialgebra, "lb": LeibnizAlgebra,
                    "as": AssociativeAlgebra, "lie": LieAlgebra}


def field_to_document(field):
    if isinstance(field, Rationals):
        return {"field": "Q"}
    return {"field": "Fp", "p": field.p}


def field_from_document(doc):
    kind = doc.get("field")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        p = doc.get("p")
        if not isinstance(p, int):
            raise ParseError("field Fp needs an integer key 'p'")
        try:
            return GF(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field descriptor {kind!r}")


def _triples_to_document(field, bmap: BilinearMap):
    return [[i, j, k, field.format(c)] for (i, j, k, c) in bmap.triples()]


def _triples_from_document(field, entries, left_dim, right_dim, out_dim, where):
    if not isinstance(entries, list):
        raise ParseError(f"{where}: expected a list of [i,j,k,coeff] triples")
    triples = []
    for pos, item in enumerate(entries):
        if not (isinstance(item, list) and len(item) == 4):
            raise ParseError(f"{where}[{pos}]: expected [i, j, k, coeff]")
        i, j, k, c = item
        if not all(isinstance(v, int) for v in (i, j, k)):
            raise ParseError(f"{where}[{pos}]: indices must be integers")
        if not (0 <= i < left_dim and 0 <= j < right_dim and 0 <= k < out_dim):
            raise ParseError(f"{where}[{pos}]: index out of range "
                             f"for shape {left_dim}x{right_dim}->{out_dim}")
        if isinstance(c, int):
            coeff = field.of(c)
        elif isinstance(c, str):
            try:
                coeff = field.parse(c)
            except ParseError as exc:
                raise ParseError(f"{where}[{pos}]: {exc}") from None
        else:
            raise ParseError(f"{where}[{pos}]: coefficient must be a string "
                             "or integer")
        triples.append((i, j, k, coeff))
    return BilinearMap.from_triples(field, left_dim, right_dim, out_dim,
                                    triples)


def algebra_to_document(alg: Algebra) -> dict:
    doc = dict(field_to_document(alg.field))
    doc["flavor"] = alg.flavor
    doc["dim"] = alg.dim
    doc["basis"] = list(alg.labels)
    for key, bmap in zip(_PRODUCT_KEYS[alg.flavor], alg.products()):
        doc[key] = _triples_to_document(alg.field, bmap)
    return doc


def algebra_from_document(doc, check=True) -> Algebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be a JSON object")
    field = field_from_document(doc)
    flavor = doc.get("flavor")
    if flavor not in _PRODUCT_KEYS:
        raise ParseError(f"unknown flavor {flavor!r}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("'dim' must be a non-negative integer")
    labels = doc.get("basis")
    if labels is not None:
        if not (isinstance(labels, list) and len(labels) == dim
                and all(isinstance(s, str) for s in labels)):
            raise ParseError("'basis' must list one label string per "
                             "dimension")
    maps = [_triples_from_document(field, doc.get(key, []), dim, dim, dim,
                                   f"products.{key}")
            for key in _PRODUCT_KEYS[flavor]]
    cls = _ALGEBRA_CLASSES[flavor]
    if flavor == "dias":
        return cls(field, maps[0], maps[1], labels, check=check)
    return cls(field, maps[0], labels, check=check)


def _matrix_to_document(field, m: Matrix):
    return [[field.format(c) for c in m.row(i)] for i in range(m.rows)]


def _matrix_from_document(field, rows, nrows, ncols, where):
    if not (isinstance(rows, list) and len(rows) == nrows):
        raise ParseError(f"{where}: expected {nrows} rows")
    out = []
    for i, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == ncols):
            raise ParseError(f"{where}[{i}]: expected {ncols} entries")
        vals = []
        for j, c in enumerate(row):
            if isinstance(c, int):
                vals.append(field.of(c))
            elif isinstance(c, str):
                try:
                    vals.append(field.parse(c))
                except ParseError as exc:
                    raise ParseError(f"{where}[{i}][{j}]: {exc}") from None
            else:
                raise ParseError(f"{where}[{i}][{j}]: coefficient must be a "
                                 "string or integer")
        out.append(vals)
    return Matrix.from_rows(field, out, ncols)


def xmod_to_document(xm: CrossedModule) -> dict:
    field = xm.actee.field
    doc = {"flavor": xm.flavor,
           "source": algebra_to_document(xm.actee),
           "target": algebra_to_document(xm.actor),
           "mu": _matrix_to_document(field, xm.mu.matrix),
           "action": {name: _triples_to_document(field, xm.action.tensors[name])
                      for name in xm.action.slot_names}}
    return doc


def xmod_from_document(doc, check=True) -> CrossedModule:
    if not isinstance(doc, dict):
        raise ParseError("crossed-module document must be a JSON object")
    flavor = doc.get("flavor")
    if flavor not in _ACTION_KEYS:
        raise ParseError(f"unknown flavor {flavor!r}")
    if "source" not in doc or "target" not in doc:
        raise ParseError("crossed-module document needs 'source' and 'target'")
    actee = algebra_from_document(doc["source"], check=check)
    actor = algebra_from_document(doc["target"], check=check)
    if actee.flavor != flavor or actor.flavor != flavor:
        raise ParseError("source/target flavors disagree with the document")
    if actee.field != actor.field:
        raise ParseError("source and target live over different fields")
    field = actee.field
    mu_mat = _matrix_from_document(field, doc.get("mu"), actor.dim, actee.dim,
                                   "mu")
    action_doc = doc.get("action")
    if not isinstance(action_doc, dict):
        raise ParseError("'action' must map slot names to triple lists")
    slots = _ACTION_KEYS[flavor]
    unknown = sorted(set(action_doc) - set(slots))
    if unknown:
        raise ParseError(f"unknown action slots {unknown} for flavor {flavor}")
    sides = dict(zip(slots, _slot_shapes(flavor, actor.dim, actee.dim)))
    tensors = {}
    for name in slots:
        ldim, rdim = sides[name]
        tensors[name] = _triples_from_document(field,
                                               action_doc.get(name, []),
                                               ldim, rdim, actee.dim,
                                               f"action.{name}")
    action = make_action(flavor, actor, actee, tensors, check=check)
    mu = AlgebraMorphism(actee, actor, mu_mat)
    return CrossedModule(mu, action, check=check)


def _slot_shapes(flavor, nd, nl):
    shapes = []
    for name in _ACTION_KEYS[flavor]:
        if name in ("dl_left", "dl_right", "gq", "ar", "pm"):
            shapes.append((nd, nl))
        else:
            shapes.append((nl, nd))
    return shapes


def document_kind(doc) -> str:
    if isinstance(doc, dict) and "mu" in doc:
        return "xmod"
    return "algebra"


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level document must be a JSON object")
    return doc


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads_document(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc

"""JSON algebra and operator files.

Algebra file::

    {"field": "Q" | "F2" | "F3" | "F5",
     "semigroup": {"order": m, "table": [[...]]},
     "dimension": n,
     "kind": "<kind tag>" | null,
     "products": [{"name": "prec", "indexArity": 1,
                   "entries": [{"idx": [a], "i": 0, "j": 0, "k": 1, "v": "1"}]}]}

Rationals are written as "p/q" or "p"; prime-field elements as integers.
Operator file: ``{"maps": [{"idx": a, "matrix": [[...]]}]}``.
"""
from __future__ import annotations

import hashlib
import json

from .algebra import AlgebraPresentation, FamilyProduct, OperatorFamily
from .errors import AlgebraSyntaxError, FamalgError, SemanticError
from .fields import field_from_tag
from .kinds import as_kind
from .semigroup import semigroup_validate


def _load(data):
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise AlgebraSyntaxError(f"not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise AlgebraSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def _need(obj, key, typ, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SemanticError(f"{where}: missing key {key!r}")
    v = obj[key]
    if not isinstance(v, typ) or isinstance(v, bool) and typ is not bool:
        raise SemanticError(f"{where}: {key!r} has the wrong type")
    return v


def algebra_from_obj(obj) -> AlgebraPresentation:
    fld = field_from_tag(_need(obj, "field", str, "algebra"))
    sg = _need(obj, "semigroup", dict, "algebra")
    table = _need(sg, "table", list, "semigroup")
    order = _need(sg, "order", int, "semigroup")
    if order != len(table):
        raise SemanticError(f"semigroup order {order} does not match table size {len(table)}")
    try:
        semigroup = semigroup_validate(table)
    except FamalgError as exc:
        raise SemanticError(f"invalid semigroup: {exc}") from exc
    n = _need(obj, "dimension", int, "algebra")
    kind = obj.get("kind")
    products = {}
    for pos, pobj in enumerate(_need(obj, "products", list, "algebra")):
        where = f"products[{pos}]"
        name = _need(pobj, "name", str, where)
        arity = _need(pobj, "indexArity", int, where)
        if name in products:
            raise SemanticError(f"duplicate product {name!r}")
        entries = {}
        for epos, e in enumerate(_need(pobj, "entries", list, where)):
            ew = f"{where}.entries[{epos}]"
            idx = tuple(_need(e, "idx", list, ew))
            key = (idx, _need(e, "i", int, ew), _need(e, "j", int, ew), _need(e, "k", int, ew))
            if "v" not in e:
                raise SemanticError(f"{ew}: missing key 'v'")
            if key in entries:
                raise SemanticError(f"{ew}: duplicate entry {key}")
            entries[key] = fld.parse(e["v"])
        try:
            products[name] = FamilyProduct(name, arity, n, entries)
        except FamalgError as exc:
            raise SemanticError(str(exc)) from exc
    try:
        return AlgebraPresentation(fld, semigroup, n, products, kind, dict(obj.get("provenance") or {}))
    except (FamalgError, ValueError) as exc:
        raise SemanticError(str(exc)) from exc


def algebra_to_obj(a: AlgebraPresentation) -> dict:
    fld = a.field
    obj = {
        "field": fld.tag,
        "semigroup": {"order": a.order, "table": [list(r) for r in a.semigroup.table]},
        "dimension": a.dimension,
        "kind": a.kind,
        "products": [
            {
                "name": p.name,
                "indexArity": p.index_arity,
                "entries": [
                    {"idx": list(idx), "i": i, "j": j, "k": k, "v": fld.format(v)}
                    for (idx, i, j, k), v in p.entries.items()
                ],
            }
            for _, p in sorted(a.products.items())
        ],
    }
    if a.meta:
        obj["provenance"] = dict(a.meta)
    return obj


def parse_algebra(data) -> AlgebraPresentation:
    return algebra_from_obj(_load(data))


def serialize_algebra(a: AlgebraPresentation) -> bytes:
    return (json.dumps(algebra_to_obj(a), indent=1, sort_keys=True) + "\n").encode("utf-8")


def algebra_hash(a: AlgebraPresentation) -> str:
    """sha256 of the canonical serialization, provenance excluded."""
    obj = algebra_to_obj(a)
    obj.pop("provenance", None)
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def parse_operators(data, fld, semigroup) -> OperatorFamily:
    obj = _load(data)
    maps = {}
    for pos, mobj in enumerate(_need(obj, "maps", list, "operators")):
        w = _need(mobj, "idx", int, f"maps[{pos}]")
        if not 0 <= w < semigroup.order:
            raise SemanticError(f"maps[{pos}]: index {w} outside semigroup")
        if w in maps:
            raise SemanticError(f"maps[{pos}]: duplicate index {w}")
        mat = _need(mobj, "matrix", list, f"maps[{pos}]")
        maps[w] = [[fld.parse(v) for v in row] for row in mat]
    try:
        return OperatorFamily.from_mapping(fld, semigroup, maps)
    except FamalgError as exc:
        raise SemanticError(str(exc)) from exc


def serialize_operators(ops: OperatorFamily) -> bytes:
    obj = {
        "maps": [
            {"idx": w, "matrix": [[ops.field.format(v) for v in row] for row in M]}
            for w, M in enumerate(ops.matrices)
        ]
    }
    return (json.dumps(obj, indent=1, sort_keys=True) + "\n").encode("utf-8")


def read_algebra(path) -> AlgebraPresentation:
    with open(path, "rb") as fh:
        return parse_algebra(fh.read())


def write_algebra(a: AlgebraPresentation, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_algebra(a))


def kind_tag(kind) -> str | None:
    return None if kind is None else as_kind(kind).value

"""JSON document format for every structure in the package.

Each document is an object with a ``kind`` field. Elements are integers,
operation tables are nested arrays in row-major argument order, and
transitions of a system are keyed ``"i<j"``. Optional ``names`` arrays
label elements and never affect semantics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .band import BandMorphism, LeftNormalBand, check_band_morphism, validate_lnb
from .core import FiniteAlgebra, Homomorphism, Signature, check_homomorphism, validate_algebra
from .errors import Check, ParseError, ValidationError
from .plonka_algebra import PlonkaAlgebra, PlonkaMorphism, check_plonka_morphism, validate_plonka
from .semilattice import SslMorphism, SupSemilattice, check_ssl_morphism, validate_ssl
from .systems import InductiveSystem, SystemMorphism, validate_indsys, validate_system_morphism

KINDS = ("signature", "algebra", "semilattice", "band", "plonka", "system", "morphism")
CATEGORIES = ("homomorphism", "semilattice", "band", "plonka", "system")


@dataclass
class Document:
    """A parsed structure plus its presentation metadata.

    ``names`` is a list of element names for flat structures; for a system it
    is ``{"index": [...] | None, "fibers": [[...] | None, ...]}``. Morphism
    documents carry their source and target as nested documents.
    """

    kind: str
    value: Any
    names: Any = None
    category: str | None = None
    source: Document | None = None
    target: Document | None = None


# ---------------------------------------------------------------- parsing


def _fail(msg: str) -> ParseError:
    return ParseError(msg)


def _no_dupes(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise _fail(f"duplicate key {k!r}")
        out[k] = v
    return out


def _keys(obj, required: tuple, optional: tuple = (), where: str = "document") -> None:
    if not isinstance(obj, dict):
        raise _fail(f"{where} must be an object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise _fail(f"{where}: missing key(s) {', '.join(missing)}")
    extra = [k for k in obj if k not in required and k not in optional]
    if extra:
        raise _fail(f"{where}: unknown key(s) {', '.join(extra)}")


def _int(v, where: str, lo: int = 0) -> int:
    if type(v) is not int or v < lo:
        raise _fail(f"{where}: expected an integer >= {lo}, got {v!r}")
    return v


def _int_list(v, where: str) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise _fail(f"{where}: expected an array")
    return tuple(_int(x, where) for x in v)


def _square(v, n: int, where: str) -> tuple[int, ...]:
    if not isinstance(v, list) or len(v) != n or any(not isinstance(r, list) or len(r) != n for r in v):
        raise _fail(f"{where}: expected a {n}x{n} array")
    return tuple(_int(x, where) for r in v for x in r)


def _table(v, n: int, k: int, where: str) -> tuple[int, ...]:
    if k == 0:
        return (_int(v, where),)
    if not isinstance(v, list) or len(v) != n:
        raise _fail(f"{where}: expected an array of length {n}")
    out: list[int] = []
    for row in v:
        out.extend(_table(row, n, k - 1, where))
    return tuple(out)


def _names(obj, n: int, where: str):
    if "names" not in obj:
        return None
    v = obj["names"]
    if not isinstance(v, list) or len(v) != n or any(not isinstance(x, str) for x in v):
        raise _fail(f"{where}: names must be {n} strings")
    return list(v)


def _signature(v, where: str = "signature") -> Signature:
    if not isinstance(v, list):
        raise _fail(f"{where}: expected an array of [name, arity] pairs")
    syms = []
    for p in v:
        if not (isinstance(p, list) and len(p) == 2 and isinstance(p[0], str)):
            raise _fail(f"{where}: bad symbol entry {p!r}")
        syms.append((p[0], _int(p[1], where)))
    try:
        return Signature(tuple(syms))
    except ValueError as e:
        raise _fail(f"{where}: {e}") from None


def _tables(v, sig: Signature, n: int, where: str) -> tuple[tuple[int, ...], ...]:
    _keys(v, sig.names, (), where)
    return tuple(_table(v[s], n, k, f"{where}.{s}") for s, k in sig)


def _algebra_body(obj, sig: Signature, where: str) -> tuple[FiniteAlgebra, Any]:
    n = _int(obj["size"], f"{where}.size")
    alg = FiniteAlgebra(sig, n, _tables(obj["tables"], sig, n, f"{where}.tables"))
    return alg, _names(obj, n, where)


def _require(check: Check, what: str) -> None:
    if not check:
        raise ValidationError(check, what)


def _algebra_ok(a: FiniteAlgebra, what: str) -> None:
    problems = validate_algebra(a)
    if problems:
        raise ValidationError(Check.failed("well-formedness", None, problems[0]), what)


def _from_obj(obj, validate: bool, where: str = "document") -> Document:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise _fail(f"{where}: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind not in KINDS:
        raise _fail(f"{where}: unknown kind {kind!r}")

    if kind == "signature":
        _keys(obj, ("kind", "symbols"), (), where)
        return Document(kind, _signature(obj["symbols"]))

    if kind == "algebra":
        _keys(obj, ("kind", "signature", "size", "tables"), ("names",), where)
        alg, names = _algebra_body(obj, _signature(obj["signature"]), where)
        if validate:
            _algebra_ok(alg, "algebra")
        return Document(kind, alg, names)

    if kind == "semilattice":
        _keys(obj, ("kind", "size", "join"), ("names",), where)
        n = _int(obj["size"], f"{where}.size")
        s = SupSemilattice(n, _square(obj["join"], n, f"{where}.join"))
        if validate:
            _require(validate_ssl(s), "semilattice")
        return Document(kind, s, _names(obj, n, where))

    if kind == "band":
        _keys(obj, ("kind", "size", "table"), ("names",), where)
        n = _int(obj["size"], f"{where}.size")
        b = LeftNormalBand(n, _square(obj["table"], n, f"{where}.table"))
        if validate:
            _require(validate_lnb(b), "band")
        return Document(kind, b, _names(obj, n, where))

    if kind == "plonka":
        _keys(obj, ("kind", "signature", "size", "tables", "operator"), ("names",), where)
        alg, names = _algebra_body(obj, _signature(obj["signature"]), where)
        band = LeftNormalBand(alg.size, _square(obj["operator"], alg.size, f"{where}.operator"))
        if validate:
            _algebra_ok(alg, "plonka")
            _require(validate_plonka(alg, band), "plonka")
        return Document(kind, PlonkaAlgebra(alg, band), names)

    if kind == "system":
        _keys(obj, ("kind", "signature", "index", "fibers", "transitions"), (), where)
        sig = _signature(obj["signature"])
        idx = obj["index"]
        _keys(idx, ("size", "join"), ("names",), f"{where}.index")
        n = _int(idx["size"], f"{where}.index.size")
        index = SupSemilattice(n, _square(idx["join"], n, f"{where}.index.join"))
        fibers = obj["fibers"]
        if not isinstance(fibers, list) or len(fibers) != n:
            raise _fail(f"{where}.fibers: expected {n} fiber objects")
        algebras, fnames = [], []
        for i, fo in enumerate(fibers):
            _keys(fo, ("size", "tables"), ("names",), f"{where}.fibers[{i}]")
            a, nm = _algebra_body(fo, sig, f"{where}.fibers[{i}]")
            algebras.append(a)
            fnames.append(nm)
        trans_obj = obj["transitions"]
        _keys(trans_obj, (), tuple(trans_obj) if isinstance(trans_obj, dict) else (),
              f"{where}.transitions")
        trans = {}
        for key, v in trans_obj.items():
            parts = key.split("<")
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise _fail(f"{where}.transitions: bad key {key!r}")
            i, j = int(parts[0]), int(parts[1])
            if not (i < n and j < n) or i == j:
                raise _fail(f"{where}.transitions: key {key!r} out of range")
            trans[(i, j)] = _int_list(v, f"{where}.transitions[{key}]")
        for i in range(n):
            trans[(i, i)] = tuple(range(algebras[i].size))
        sys = InductiveSystem(index, sig, tuple(algebras), trans)
        if validate:
            for i, a in enumerate(algebras):
                _algebra_ok(a, f"fiber {i}")
            _require(validate_indsys(sys), "system")
        names = {"index": _names(idx, n, f"{where}.index"), "fibers": fnames}
        if names["index"] is None and all(x is None for x in fnames):
            names = None
        return Document(kind, sys, names)

    # morphism
    cat = obj.get("category")
    if cat not in CATEGORIES:
        raise _fail(f"{where}: morphism category must be one of {', '.join(CATEGORIES)}")
    extra = ("xi", "components") if cat == "system" else ("map",)
    _keys(obj, ("kind", "category", "source", "target") + extra, (), where)
    src = _from_obj(obj["source"], validate, f"{where}.source")
    tgt = _from_obj(obj["target"], validate, f"{where}.target")
    expected = {"homomorphism": "algebra", "semilattice": "semilattice", "band": "band",
                "plonka": "plonka", "system": "system"}[cat]
    if src.kind != expected or tgt.kind != expected:
        raise _fail(f"{where}: a {cat} morphism needs {expected} source and target")
    S, T = src.value, tgt.value
    if cat == "system":
        xi = _int_list(obj["xi"], f"{where}.xi")
        comps = obj["components"]
        if not isinstance(comps, list):
            raise _fail(f"{where}.components: expected an array")
        m = SystemMorphism(S, T, xi, tuple(_int_list(c, f"{where}.components") for c in comps))
        if validate:
            _require(validate_system_morphism(m), "morphism")
    else:
        f = _int_list(obj["map"], f"{where}.map")
        if cat == "homomorphism":
            m = Homomorphism(S, T, f)
            check = check_homomorphism(f, S, T) if S.signature == T.signature else \
                Check.failed("signature", None, "source and target signatures differ")
        elif cat == "semilattice":
            m = SslMorphism(S, T, f)
            check = check_ssl_morphism(f, S, T)
        elif cat == "band":
            m = BandMorphism(S, T, f)
            check = check_band_morphism(f, S, T)
        else:
            m = PlonkaMorphism(S, T, f)
            check = check_plonka_morphism(f, S, T) if S.signature == T.signature else \
                Check.failed("signature", None, "source and target signatures differ")
        if validate:
            _require(check, "morphism")
    return Document("morphism", m, None, cat, src, tgt)


def parse_document(text: str, validate: bool = True) -> Document:
    """Strict parse; structures are law-checked unless ``validate`` is False."""
    try:
        obj = json.loads(text, object_pairs_hook=_no_dupes)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return _from_obj(obj, validate)


# ---------------------------------------------------------------- serialization


def _sig_obj(sig: Signature) -> list:
    return [[s, k] for s, k in sig]


def _tables_obj(a: FiniteAlgebra) -> dict:
    return {s: a.nested_table(s) for s, _ in a.signature}


def _with_names(obj: dict, names) -> dict:
    if names is not None:
        obj["names"] = list(names)
    return obj


def _square_obj(n: int, table) -> list:
    return [list(table[i * n:(i + 1) * n]) for i in range(n)]


def to_obj(doc: Document) -> dict:
    v = doc.value
    if doc.kind == "signature":
        return {"kind": "signature", "symbols": _sig_obj(v)}
    if doc.kind == "algebra":
        return _with_names({"kind": "algebra", "signature": _sig_obj(v.signature),
                            "size": v.size, "tables": _tables_obj(v)}, doc.names)
    if doc.kind == "semilattice":
        return _with_names({"kind": "semilattice", "size": v.size,
                            "join": _square_obj(v.size, v.table)}, doc.names)
    if doc.kind == "band":
        return _with_names({"kind": "band", "size": v.size,
                            "table": _square_obj(v.size, v.table)}, doc.names)
    if doc.kind == "plonka":
        a = v.algebra
        return _with_names({"kind": "plonka", "signature": _sig_obj(a.signature),
                            "size": a.size, "tables": _tables_obj(a),
                            "operator": _square_obj(a.size, v.band.table)}, doc.names)
    if doc.kind == "system":
        names = doc.names or {}
        fnames = names.get("fibers") or [None] * v.index.size
        index = _with_names({"size": v.index.size, "join": _square_obj(v.index.size, v.index.table)},
                            names.get("index"))
        fibers = [_with_names({"size": a.size, "tables": _tables_obj(a)}, fnames[i])
                  for i, a in enumerate(v.algebras)]
        trans = {f"{i}<{j}": list(f) for (i, j), f in sorted(v.transitions.items()) if i != j}
        return {"kind": "system", "signature": _sig_obj(v.signature), "index": index,
                "fibers": fibers, "transitions": trans}
    if doc.kind == "morphism":
        obj = {"kind": "morphism", "category": doc.category,
               "source": to_obj(doc.source), "target": to_obj(doc.target)}
        if doc.category == "system":
            obj["xi"] = list(v.xi)
            obj["components"] = [list(c) for c in v.components]
        else:
            obj["map"] = list(v.map)
        return obj
    raise ValueError(f"unknown kind {doc.kind!r}")


def _render(obj, indent: int) -> str:
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, indent + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(x, dict) for x in obj):
        pad = "  " * (indent + 1)
        items = [pad + _render(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def serialize_document(doc: Document) -> str:
    """Canonical text: fixed key order, one space after commas, trailing newline."""
    return _render(to_obj(doc), 0) + "\n"


def document_for(value, names=None) -> Document:
    """Wrap a bare structure in a document of the matching kind."""
    kinds = {Signature: "signature", FiniteAlgebra: "algebra", SupSemilattice: "semilattice",
             LeftNormalBand: "band", PlonkaAlgebra: "plonka", InductiveSystem: "system"}
    for cls, kind in kinds.items():
        if isinstance(value, cls):
            return Document(kind, value, names)
    cats = {Homomorphism: "homomorphism", SslMorphism: "semilattice", BandMorphism: "band",
            PlonkaMorphism: "plonka", SystemMorphism: "system"}
    for cls, cat in cats.items():
        if isinstance(value, cls):
            return Document("morphism", value, None, cat,
                            document_for(value.source), document_for(value.target))
    raise TypeError(f"cannot serialize {type(value).__name__}")

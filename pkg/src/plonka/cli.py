"""Command-line driver: ``plonka <command> FILE... [--json] [--bound N]``.

Exit status is 0 when every check passes, 1 when a check fails, and 2 on a
parse or usage error. A path of ``-`` reads standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .adjunction import (counit, decompose, plonka_sum, roundtrip_plonka, roundtrip_system,
                         sum_elements, unit, universal_extension, verify_adjunction)
from .band import LeftNormalBand, sl_reflect, validate_lnb
from .core import validate_algebra
from .errors import Check, ParseError, PlonkaError, ValidationError
from .formats import Document, parse_document, serialize_document, to_obj
from .plonka_algebra import enumerate_plonka_operators, validate_plonka, verify_derived_laws
from .semilattice import SupSemilattice, free_ssl, reflect_algebra, subset_of, validate_ssl
from .systems import (SystemMorphism, inverse_transpose, residuated_transpose, validate_indsys)

DEFAULT_BOUND = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str, validate: bool = True, kinds: Sequence[str] = ()) -> Document:
    doc = parse_document(_read(path), validate)
    if kinds and doc.kind not in kinds:
        raise UsageError(f"{path}: expected kind {' or '.join(kinds)}, got {doc.kind}")
    return doc


def _name(names, x: int) -> str:
    return names[x] if names else str(x)


def _jsonable(w):
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return w


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []

    def doc(self, d: Document, extra: dict | None = None) -> None:
        if self.as_json and extra:
            self.lines.append(json.dumps({"document": to_obj(d), **extra}, ensure_ascii=False))
        else:
            self.lines.append(serialize_document(d).rstrip("\n"))

    def report(self, text: Sequence[str], data: dict) -> None:
        if self.as_json:
            self.lines.append(json.dumps(data, ensure_ascii=False))
        else:
            self.lines.extend(text)


# ---------------------------------------------------------------- derived documents


def sum_document(doc: Document) -> Document:
    sys_ = doc.value
    names = doc.names or {}
    inames = names.get("index")
    fnames = names.get("fibers") or [None] * sys_.index.size
    labels = [f"({_name(inames, e.index)},{_name(fnames[e.index], e.value)})"
              for e in sum_elements(sys_)]
    return Document("plonka", plonka_sum(sys_), labels)


def decompose_document(doc: Document) -> tuple[Document, object]:
    p = doc.value
    dec = decompose(p)
    fibers = [[_name(doc.names, x) for x in block] for block in dec.blocks]
    return Document("system", dec.system, {"index": None, "fibers": fibers}), dec


def _block_names(names, blocks) -> list[str] | None:
    if not names:
        return None
    return ["[" + names[b[0]] + "]" for b in blocks]


# ---------------------------------------------------------------- commands


def _check_result(out: Out, what: str, check: Check) -> int:
    text = ["pass"] if check else [f"fail: {check}"]
    out.report(text, {"check": what, "ok": bool(check), "law": check.law,
                      "witness": _jsonable(check.witness), "detail": check.detail})
    return 0 if check else 1


def _band_from(doc: Document) -> LeftNormalBand:
    if doc.kind == "band":
        return doc.value
    if doc.kind == "semilattice":
        return LeftNormalBand(doc.value.size, doc.value.table)
    if doc.kind == "plonka":
        return doc.value.band
    if doc.kind == "algebra":
        a = doc.value
        if len(a.signature) == 1 and a.signature.max_arity == 2:
            return LeftNormalBand(a.size, a.tables[0])
    raise UsageError(f"cannot read a binary table from a {doc.kind} document")


def cmd_check(args, out: Out) -> int:
    doc = _load(args.file, validate=False)
    what = args.what
    if what == "lnb":
        return _check_result(out, what, validate_lnb(_band_from(doc)))
    if what == "ssl":
        b = _band_from(doc)
        return _check_result(out, what, validate_ssl(SupSemilattice(b.size, b.table)))
    if what == "algebra":
        if doc.kind not in ("algebra", "plonka"):
            raise UsageError(f"expected an algebra document, got {doc.kind}")
        a = doc.value if doc.kind == "algebra" else doc.value.algebra
        problems = validate_algebra(a)
        check = Check.failed("well-formedness", None, problems[0]) if problems else Check.passed()
        return _check_result(out, what, check)
    if what == "plonka":
        if doc.kind != "plonka":
            raise UsageError(f"expected a plonka document, got {doc.kind}")
        p = doc.value
        problems = validate_algebra(p.algebra)
        if problems:
            return _check_result(out, what, Check.failed("well-formedness", None, problems[0]))
        check = validate_plonka(p.algebra, p.band)
        if check:
            bad = verify_derived_laws(p)
            if bad:
                check = Check.failed("derived law", None, bad[0])
        return _check_result(out, what, check)
    # system
    if doc.kind != "system":
        raise UsageError(f"expected a system document, got {doc.kind}")
    for i, a in enumerate(doc.value.algebras):
        problems = validate_algebra(a)
        if problems:
            return _check_result(out, what, Check.failed("well-formedness", (i,), problems[0]))
    return _check_result(out, what, validate_indsys(doc.value))


def cmd_sl(args, out: Out) -> int:
    doc = _load(args.file, kinds=("band", "plonka", "semilattice"))
    band = _band_from(doc)
    s, pr = sl_reflect(band)
    blocks = [tuple(x for x in band.elements if pr(x) == b) for b in s.elements]
    out.doc(Document("semilattice", s, _block_names(doc.names, blocks)),
            {"projection": list(pr.map)})
    return 0


def cmd_decompose(args, out: Out) -> int:
    doc = _load(args.file, kinds=("plonka",))
    d, dec = decompose_document(doc)
    out.doc(d, {"blocks": _jsonable(dec.blocks)})
    return 0


def cmd_sum(args, out: Out) -> int:
    out.doc(sum_document(_load(args.file, kinds=("system",))))
    return 0


def cmd_unit(args, out: Out) -> int:
    doc = _load(args.file, kinds=("system",))
    sdoc = sum_document(doc)
    tdoc, dec = decompose_document(sdoc)
    eta = unit(doc.value, sdoc.value, dec)
    out.doc(Document("morphism", eta, None, "system", doc, tdoc))
    return 0


def cmd_extend(args, out: Out) -> int:
    mdoc = _load(args.morphism, kinds=("morphism",))
    qdoc = _load(args.plonka, kinds=("plonka",))
    if mdoc.category != "system":
        raise UsageError("extend needs a system morphism")
    ext = universal_extension(mdoc.value, qdoc.value)
    out.doc(Document("morphism", ext, None, "plonka", sum_document(mdoc.source), qdoc))
    return 0


def cmd_roundtrip(args, out: Out) -> int:
    doc = _load(args.file, kinds=("system", "plonka"))
    rep = roundtrip_system(doc.value) if doc.kind == "system" else roundtrip_plonka(doc.value)
    iso = "isomorphism" if rep.counit_iso and rep.counit_inverse_plonka else "NOT an isomorphism"
    text = [f"counit: {iso}; triangles: {'pass' if rep.triangles else 'FAIL'}"]
    if rep.unit_iso is not None:
        text.append(f"unit: {'isomorphism' if rep.unit_iso else 'not an isomorphism'}")
    if doc.kind == "plonka":
        text.append(f"counit map: {list(counit(doc.value).map)}")
    out.report(text, {"ok": rep.ok, "counit_bijective": rep.counit_iso,
                      "counit_inverse_plonka": rep.counit_inverse_plonka,
                      "unit_isomorphism": rep.unit_iso, "triangles": rep.triangles})
    return 0 if rep.ok else 1


def cmd_verify_adjunction(args, out: Out) -> int:
    sdoc = _load(args.system, kinds=("system", "morphism"))
    if sdoc.kind == "system":
        if args.plonka:
            raise UsageError("pass either a system, or a system morphism and a plonka algebra")
        system = sdoc.value
        q = plonka_sum(system)
        m = unit(system, q)
    else:
        if sdoc.category != "system" or not args.plonka:
            raise UsageError("a system morphism must be followed by the target plonka algebra")
        m = sdoc.value
        system = m.source
        q = _load(args.plonka, kinds=("plonka",)).value
    rep = verify_adjunction(system, q, m, bound=args.bound)
    out.report(rep.lines() + [f"extension: {list(rep.extension)}"],
               {"ok": rep.ok, "factorization": rep.factorization, "candidates": rep.candidates,
                "solutions": rep.solutions, "unique": rep.unique,
                "triangle_is": rep.triangle_is, "triangle_pl": rep.triangle_pl,
                "extension": list(rep.extension)})
    return 0 if rep.ok else 1


def cmd_enumerate_plonka(args, out: Out) -> int:
    a = _load(args.file, kinds=("algebra",)).value
    ops = enumerate_plonka_operators(a, bound=args.bound)
    text = [f"{len(ops)} Płonka operator(s)"] + [json.dumps(b.nested()) for b in ops]
    out.report(text, {"count": len(ops), "operators": [b.nested() for b in ops]})
    return 0


def cmd_free_ssl(args, out: Out) -> int:
    if args.n < 0:
        raise UsageError("N must be non-negative")
    s, _ = free_ssl(args.n)
    names = ["{" + ",".join(map(str, sorted(subset_of(k)))) + "}" for k in s.elements]
    out.doc(Document("semilattice", s, names))
    return 0


def cmd_m_adjoint(args, out: Out) -> int:
    doc = _load(args.file, kinds=("algebra",))
    r = reflect_algebra(doc.value)
    blocks = r.congruence.blocks()
    names = ["{" + ",".join(_name(doc.names, x) for x in sorted(subset_of(b[0]))) + "}"
             for b in blocks]
    out.doc(Document("semilattice", r.semilattice, names), {"unit": list(r.unit)})
    return 0


def cmd_transpose(args, out: Out) -> int:
    mdoc = _load(args.morphism, kinds=("morphism",))
    xdoc = _load(args.xi, kinds=("morphism",))
    odoc = _load(args.other, kinds=("system",))
    if mdoc.category != "system" or xdoc.category != "semilattice":
        raise UsageError("transpose needs a system morphism and a semilattice morphism")
    m: SystemMorphism = mdoc.value
    if args.inverse:
        res = inverse_transpose(m, odoc.value, xdoc.value)
    else:
        res = residuated_transpose(m, odoc.value, xdoc.value)
    out.doc(Document("morphism", res, None, "system",
                     Document("system", res.source), Document("system", res.target)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="cap on enumerated carrier sizes (default 3)")
    p = _Parser(prog="plonka", description="Płonka sums, left normal bands and inductive systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="check the laws of a structure")
    c.add_argument("what", choices=["lnb", "plonka", "ssl", "algebra", "system"])
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    for name, func, helptext in [
        ("sl", cmd_sl, "semilattice reflection of a band"),
        ("decompose", cmd_decompose, "split a Płonka algebra into an inductive system"),
        ("sum", cmd_sum, "Płonka sum of an inductive system"),
        ("unit", cmd_unit, "unit morphism of a system into the decomposition of its sum"),
        ("roundtrip", cmd_roundtrip, "check unit, counit and triangle identities"),
        ("enumerate-plonka", cmd_enumerate_plonka, "list every Płonka operator of an algebra"),
        ("m-adjoint", cmd_m_adjoint, "semilattice reflection of an algebra"),
    ]:
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("extend", parents=[common], help="universal extension of a system morphism")
    s.add_argument("morphism")
    s.add_argument("plonka")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("verify-adjunction", parents=[common],
                       help="exhaustively check the universal property")
    s.add_argument("system", help="a system, or a system morphism into Is(q)")
    s.add_argument("plonka", nargs="?", help="the Płonka algebra q when a morphism is given")
    s.set_defaults(func=cmd_verify_adjunction)

    s = sub.add_parser("free-ssl", parents=[common], help="free semilattice on N generators")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_free_ssl)

    s = sub.add_parser("transpose", parents=[common],
                       help="transpose a system morphism along a residuated index map")
    s.add_argument("morphism")
    s.add_argument("xi")
    s.add_argument("other", help="the system B (forward) or A (with --inverse)")
    s.add_argument("--inverse", action="store_true")
    s.set_defaults(func=cmd_transpose)
    return p


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return 2
    except SystemExit as e:  # --help
        return 0 if not e.code else 2
    out = Out(args.json)
    try:
        code = args.func(args, out)
    except (ParseError, UsageError, OSError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    except ValidationError as e:
        print(f"fail: {e}", file=stderr)
        return 1
    except PlonkaError as e:
        print(f"error: {type(e).__name__}: {e}", file=stderr)
        return 1
    except RecursionError as e:
        print(f"error: {e}", file=stderr)
        return 2
    except Exception as e:  # never let a traceback escape
        print(f"internal error: {type(e).__name__}: {e}", file=stderr)
        return 1
    for line in out.lines:
        print(line, file=stdout)
    return code


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

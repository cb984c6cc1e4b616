import io
import json
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import (FIXTURES, SIG2, const_algebra, small_algebras, system_corpus,
                      two_chain_system)
from plonka.adjunction import plonka_sum, unit
from plonka.band import all_lnbs
from plonka.cli import run_command
from plonka.core import Signature
from plonka.errors import ParseError, ValidationError
from plonka.formats import Document, document_for, parse_document, serialize_document
from plonka.semilattice import SslMorphism, all_semilattices, chain
from plonka.systems import (InductiveSystem, identity_morphism, reindex,
                            system_morphisms_over)

FIXTURE_FILES = sorted(p for p in FIXTURES.iterdir() if p.is_file())


def run(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = run_command(list(argv), out, err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return str(FIXTURES / name)


# ---- parsing and serialization


def test_minimal_signature_document():
    doc = parse_document('{"kind": "signature", "symbols": [["σ", 2]]}')
    assert doc.kind == "signature" and str(doc.value) == "{σ/2}"


def test_two_chain_fixture_is_the_worked_example():
    doc = parse_document((FIXTURES / "twochain.sys").read_text())
    assert doc.value == two_chain_system()
    assert doc.names == {"index": None, "fibers": [["a"], ["b", "c"]]}


def test_associativity_failure_cites_triple():
    text = json.dumps({"kind": "semilattice", "size": 3,
                       "join": [[0, 2, 2], [2, 1, 0], [2, 0, 2]]})
    with pytest.raises(ValidationError) as exc:
        parse_document(text)
    check = exc.value.check
    assert check.law == "associativity" and len(check.witness) == 3


def test_parse_errors_have_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse_document('{\n  "kind": "band",\n  "size": 2,,\n}')
    assert exc.value.line == 3 and exc.value.column is not None


@pytest.mark.parametrize("text", [
    '{"kind": "band", "size": 1, "table": [[0]], "extra": 1}',
    '{"kind": "band", "size": 1}',
    '{"kind": "band", "size": 1, "table": [[true]]}',
    '{"kind": "band", "size": 1, "size": 1, "table": [[0]]}',
    '{"kind": "widget"}',
    '[1, 2]',
    '{"kind": "band", "size": 2, "table": [[0, 1]]}',
    '{"kind": "band", "size": 1, "table": [[0]], "names": ["a", "b"]}',
])
def test_strict_parse_rejections(text):
    with pytest.raises(ParseError):
        parse_document(text)


@pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.name)
def test_fixtures_are_canonical(path):
    text = path.read_text(encoding="utf-8")
    doc = parse_document(text, validate=path.name != "rightzero.alg")
    assert serialize_document(doc) == text


def test_sum_carrier_order():
    doc = parse_document((FIXTURES / "twochain.plonka").read_text())
    assert doc.names == ["(0,a)", "(1,b)", "(1,c)"]
    assert doc.value == plonka_sum(two_chain_system())


def test_equal_structures_serialize_identically():
    a = document_for(plonka_sum(two_chain_system()))
    b = document_for(plonka_sum(parse_document((FIXTURES / "twochain.sys").read_text()).value))
    assert serialize_document(a) == serialize_document(b)


def roundtrips(doc):
    text = serialize_document(doc)
    back = parse_document(text)
    assert back.value == doc.value
    assert serialize_document(back) == text


@settings(max_examples=80, deadline=None)
@given(small_algebras(max_size=4, sig=Signature.of(s=2, u=1, c=0)))
def test_random_algebras_roundtrip(a):
    roundtrips(document_for(a))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_semilattices_roundtrip(n):
    for s in all_semilattices(n)[:40]:
        roundtrips(document_for(s))


def test_bands_plonka_systems_and_morphisms_roundtrip():
    for n in (1, 2, 3):
        for b in all_lnbs(n):
            roundtrips(document_for(b))
    for s in system_corpus():
        roundtrips(document_for(s))
        q = plonka_sum(s)
        if q.size <= 4:
            roundtrips(document_for(q))
        roundtrips(document_for(unit(s)))
        roundtrips(document_for(identity_morphism(s)))
    c = chain(2)
    roundtrips(document_for(SslMorphism(c, c, (1, 1))))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(system_corpus()), st.lists(st.text(min_size=1, max_size=3), min_size=5,
                                                   max_size=5))
def test_names_roundtrip(sys, pool):
    fibers = [[pool[(i + x) % 5] for x in a.elements] for i, a in enumerate(sys.algebras)]
    doc = Document("system", sys, {"index": [pool[i] for i in sys.index.elements],
                                   "fibers": fibers})
    back = parse_document(serialize_document(doc))
    assert back.names == doc.names


# ---- CLI


def test_cli_examples():
    code, out, _ = run("check", "lnb", fx("leftzero.alg"))
    assert code == 0 and out.strip() == "pass"
    code, out, _ = run("check", "lnb", fx("rightzero.alg"))
    assert code == 1 and "D3 at (0,0,1)" in out
    code, out, _ = run("roundtrip", fx("twochain.sys"))
    assert code == 0 and "counit: isomorphism; triangles: pass" in out


def test_cli_json_check():
    code, out, _ = run("check", "lnb", fx("rightzero.alg"), "--json")
    data = json.loads(out)
    assert code == 1 and data["law"] == "D3" and data["witness"] == [0, 0, 1]


def test_cli_sum_decompose_roundtrip():
    code, summed, _ = run("sum", fx("twochain.sys"))
    assert code == 0
    assert summed == (FIXTURES / "twochain.plonka").read_text()
    code, dec, _ = run("decompose", "-", stdin=summed)
    assert code == 0
    relabeled = dec.replace('"(0,a)"', '"a"').replace('"(1,b)"', '"b"').replace('"(1,c)"', '"c"')
    assert relabeled == (FIXTURES / "twochain.sys").read_text()


def test_cli_document_commands(tmp_path):
    code, out, _ = run("unit", fx("twochain.sys"))
    assert code == 0
    m = parse_document(out)
    assert m.category == "system" and m.value.xi == (0, 1)
    morph = tmp_path / "unit.json"
    morph.write_text(out)
    code, out, _ = run("extend", str(morph), fx("twochain.plonka"))
    assert code == 0 and parse_document(out).value.map == (0, 1, 2)
    code, out, _ = run("verify-adjunction", str(morph), fx("twochain.plonka"))
    assert code == 0 and "uniqueness: pass (1 of 27 maps)" in out
    code, out, _ = run("verify-adjunction", fx("twochain.sys"), "--json")
    assert code == 0 and json.loads(out)["solutions"] == 1
    code, out, err = run("verify-adjunction", fx("twochain.sys"), "--bound", "2")
    assert code == 1 and "SearchSpaceTooLarge" in err
    code, out, _ = run("sl", fx("twochain.plonka"))
    assert code == 0 and parse_document(out).value == chain(2)
    code, out, _ = run("free-ssl", "2")
    assert code == 0 and parse_document(out).names == ["{0}", "{1}", "{0,1}"]
    code, out, _ = run("m-adjoint", fx("leftproj.alg"))
    assert code == 0 and parse_document(out).value.size == 1
    code, out, _ = run("enumerate-plonka", fx("leftproj.alg"), "--json")
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run("roundtrip", fx("twochain.plonka"), "--json")
    assert code == 0 and json.loads(out)["ok"]
    for what, path in [("ssl", "chain3.ssl"), ("system", "twochain.sys"),
                       ("plonka", "twochain.plonka"), ("algebra", "leftproj.alg")]:
        assert run("check", what, fx(path))[0] == 0


def test_cli_transpose(tmp_path):
    sys_ = two_chain_system()
    xi = SslMorphism(chain(1), chain(2), (1,))
    a = InductiveSystem.build(chain(1), SIG2, (const_algebra(1),), {})
    u = system_morphisms_over(reindex(sys_, xi), a, (0,))[0]
    (tmp_path / "u.json").write_text(serialize_document(document_for(u)))
    (tmp_path / "xi.json").write_text(serialize_document(document_for(xi)))
    (tmp_path / "b.json").write_text(serialize_document(document_for(sys_)))
    (tmp_path / "a.json").write_text(serialize_document(document_for(a)))
    code, out, err = run("transpose", str(tmp_path / "u.json"), str(tmp_path / "xi.json"),
                         str(tmp_path / "b.json"))
    assert code == 0, err
    (tmp_path / "v.json").write_text(out)
    code, out, err = run("transpose", str(tmp_path / "v.json"), str(tmp_path / "xi.json"),
                         str(tmp_path / "a.json"), "--inverse")
    assert code == 0, err
    assert parse_document(out).value == u


def test_cli_usage_errors(tmp_path):
    assert run()[0] == 2
    assert run("bogus")[0] == 2
    assert run("check", "lnb")[0] == 2
    assert run("check", "lnb", str(tmp_path / "missing"))[0] == 2
    assert run("free-ssl", "x")[0] == 2
    assert run("sum", fx("leftzero.alg"))[0] == 2
    assert run("--help")[0] == 0


def test_cli_validation_failure_exits_one():
    code, _, err = run("sum", "-", stdin=(FIXTURES / "twochain.sys").read_text().replace(
        '"0<1": [0]', '"0<1": [1]'))
    assert code == 1 and "homomorphism" in err


SEMANTIC_CORRUPTIONS = [
    ("twochain.sys", '"0<1": [0]', '"0<1": [7]'),
    ("twochain.sys", '"0<1": [0]', '"1<0": [0]'),
    ("twochain.sys", '"size": 2,\n    "join"', '"size": 3,\n    "join"'),
    ("twochain.sys", '"kind": "system"', '"kind": "systems"'),
    ("twochain.plonka", '"operator": [[0, 1, 1]', '"operator": [[1, 1, 1]'),
    ("twochain.plonka", '"size": 3', '"sizes": 3'),
    ("leftzero.alg", '[[0, 0], [1, 1]]', '[[0, 1], [0, 1]]'),
    ("chain3.ssl", '"join": [[0, 1, 2]', '"join": [[0, 2, 1]'),
]


@pytest.mark.parametrize("name,old,new", SEMANTIC_CORRUPTIONS)
def test_semantic_corruptions_fail_cleanly(name, old, new):
    text = (FIXTURES / name).read_text()
    assert old in text
    bad = text.replace(old, new)
    cmd = {"twochain.sys": "sum", "twochain.plonka": "decompose",
           "leftzero.alg": "sl", "chain3.ssl": "sl"}[name]
    code, _, err = run(cmd, "-", stdin=bad)
    assert code in (1, 2) and "internal error" not in err


def mutate(text, data):
    ops = data.draw(st.lists(st.tuples(st.sampled_from(["delete", "replace", "insert", "truncate"]),
                                       st.integers(0, max(len(text) - 1, 0)),
                                       st.sampled_from(list('0123456789[]{},:"ax -<'))),
                             min_size=1, max_size=3))
    for op, pos, ch in ops:
        pos = min(pos, len(text))
        if op == "delete":
            text = text[:pos] + text[pos + 1:]
        elif op == "replace":
            text = text[:pos] + ch + text[pos + 1:]
        elif op == "insert":
            text = text[:pos] + ch + text[pos:]
        else:
            text = text[:pos]
    return text


COMMANDS = {"twochain.sys": ["sum", "roundtrip", "unit", "check system"],
            "twochain.plonka": ["decompose", "roundtrip", "sl", "check plonka"],
            "leftzero.alg": ["check lnb", "sl"], "rightzero.alg": ["check lnb"],
            "chain3.ssl": ["check ssl", "sl"], "leftproj.alg": ["enumerate-plonka", "m-adjoint"]}


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(sorted(COMMANDS)), st.data())
def test_random_corruptions_never_crash(name, data):
    text = (FIXTURES / name).read_text()
    bad = mutate(text, data)
    cmd = data.draw(st.sampled_from(COMMANDS[name])).split()
    code, _, err = run(*cmd, "-", stdin=bad)
    assert code in (0, 1, 2)
    assert "internal error" not in err
    if code == 0 and not cmd[0] == "check":
        parse_document(bad)  # accepted input must really be a valid document


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "plonka", "check", "lnb", fx("rightzero.alg")],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "D3 at (0,0,1)" in proc.stdout

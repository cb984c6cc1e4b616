from itertools import product

import pytest

from conftest import SIG2, const_algebra, semilattices_upto, system_corpus, two_chain_system, vee
from plonka.core import Signature, compose
from plonka.errors import CompositionMismatch, ConstantInSignature, NotResiduated
from plonka.semilattice import (SslMorphism, SupSemilattice, chain, compose_ssl,
                                residual_left_adjoint, ssl_morphisms)
from plonka.systems import (InductiveSystem, SystemMorphism, canonical_comparison,
                            compose_system_morphisms, constant_final_system,
                            constant_initial_system, final_morphism, identity_morphism,
                            initial_morphism, inverse_transpose, reindex, residuated_transpose,
                            system_morphisms, system_morphisms_over, validate_indsys,
                            validate_system_morphism)

TWO = two_chain_system()
ONE = chain(1)


def single(a):
    return InductiveSystem.build(ONE, a.signature, (a,), {})


def collapse_to_top(sys: InductiveSystem) -> SystemMorphism:
    s = sys.index
    top = s.join_all(s.elements)
    return SystemMorphism(sys, sys, (top,) * s.size, tuple(sys.f(i, top) for i in s.elements))


def test_validate_examples():
    assert validate_indsys(single(const_algebra(2)))
    assert validate_indsys(TWO)
    bad = InductiveSystem.build(chain(2), SIG2, TWO.algebras, {(0, 1): (1,)})
    check = validate_indsys(bad)
    assert not check and check.law == "homomorphism" and check.witness == (0, 1)


def test_validate_catches_composition_and_missing_transitions():
    s = chain(3)
    a = const_algebra(2)
    missing = InductiveSystem.build(s, SIG2, (a, a, a), {(0, 1): (0, 1), (1, 2): (0, 1)})
    assert validate_indsys(missing).law == "transition missing"
    b = const_algebra(2)  # s constantly 0, so only maps fixing 0 are homomorphisms
    broken = InductiveSystem.build(s, SIG2, (b, b, b),
                                   {(0, 1): (0, 0), (1, 2): (0, 1), (0, 2): (0, 1)})
    assert validate_indsys(broken).law == "composition"


def test_morphism_examples():
    assert validate_system_morphism(identity_morphism(TWO))
    m = collapse_to_top(TWO)
    assert m.xi == (1, 1) and m.components == ((0,), (0, 1))
    assert validate_system_morphism(m)
    mm = compose_system_morphisms(m, m)
    assert mm.xi == (1, 1) and mm.components == ((0,), (0, 1))


def test_reindex_examples():
    assert reindex(TWO, SslMorphism(chain(2), chain(2), (0, 1))) == TWO
    const = reindex(TWO, SslMorphism(chain(2), chain(2), (1, 1)))
    assert const.algebras == (TWO.algebras[1],) * 2 and const.f(0, 1) == (0, 1)
    point = reindex(TWO, SslMorphism(ONE, chain(2), (0,)))
    assert point.algebras == (TWO.algebras[0],)


def test_constant_systems_examples():
    l2 = constant_initial_system(chain(2), SIG2)
    assert [a.size for a in l2.algebras] == [0, 0] and validate_indsys(l2)
    assert [a.size for a in constant_initial_system(ONE, SIG2).algebras] == [0]
    k2 = constant_final_system(chain(2), SIG2)
    assert [a.size for a in k2.algebras] == [1, 1] and k2.f(0, 1) == (0,)
    empty = constant_final_system(SupSemilattice(0, ()), SIG2)
    assert empty.algebras == ()
    with pytest.raises(ConstantInSignature):
        constant_initial_system(ONE, Signature.of(c=0))


def test_canonical_comparison_examples():
    for s in (chain(2), ONE):
        g = canonical_comparison(s, SIG2)
        assert all(c == () for c in g.components)
    xi = SslMorphism(ONE, chain(2), (1,))
    lhs = compose_system_morphisms(canonical_comparison(chain(2), SIG2), initial_morphism(xi, SIG2))
    rhs = compose_system_morphisms(final_morphism(xi, SIG2), canonical_comparison(ONE, SIG2))
    assert lhs == rhs


def test_compose_mismatch():
    with pytest.raises(CompositionMismatch):
        compose_system_morphisms(identity_morphism(TWO), identity_morphism(single(const_algebra(1))))


def test_transpose_examples():
    u = identity_morphism(TWO)
    ident = SslMorphism(chain(2), chain(2), (0, 1))
    assert residuated_transpose(u, TWO, ident).components == u.components
    a = single(const_algebra(1))
    xi = SslMorphism(ONE, chain(2), (1,))
    b_xi = reindex(TWO, xi)
    for u in system_morphisms_over(b_xi, a, (0,)):
        v = residuated_transpose(u, TWO, xi)
        expected = tuple(compose(u.components[0], TWO.f(p, 1)) for p in (0, 1))
        assert v.components == expected
    with pytest.raises(NotResiduated):
        residuated_transpose(identity_morphism(reindex(TWO, SslMorphism(ONE, chain(2), (0,)))),
                             TWO, SslMorphism(ONE, chain(2), (0,)))


# ---- properties


def all_indexes():
    return list(semilattices_upto(3)) + [vee()]


def test_reindex_is_functorial():
    for sys in system_corpus():
        p = sys.index
        for i in all_indexes():
            for xi2 in ssl_morphisms(i, p):
                for h in all_indexes():
                    if h.size > 2:
                        continue
                    for xi1 in ssl_morphisms(h, i):
                        assert (reindex(sys, compose_ssl(xi2, xi1))
                                == reindex(reindex(sys, xi2), xi1))


def test_composition_associative_and_unital():
    corpus = system_corpus()[:12]
    homs = {}
    for a, b in product(corpus, repeat=2):
        homs[a, b] = system_morphisms(a, b)[:3]
    for a, b, c, d in product(corpus[:6], repeat=4):
        for f in homs[a, b]:
            assert compose_system_morphisms(identity_morphism(b), f) == f
            assert compose_system_morphisms(f, identity_morphism(a)) == f
            for g in homs[b, c]:
                for h in homs[c, d]:
                    lhs = compose_system_morphisms(h, compose_system_morphisms(g, f))
                    rhs = compose_system_morphisms(compose_system_morphisms(h, g), f)
                    assert lhs == rhs


def test_initial_and_final_systems_are_adjoints():
    for b in system_corpus():
        p = b.index
        for i in all_indexes():
            li, ki = constant_initial_system(i, SIG2), constant_final_system(p, SIG2)
            for xi in ssl_morphisms(i, p):
                assert len(system_morphisms_over(li, b, xi.map)) == 1
            for xi in ssl_morphisms(p, i):
                assert len(system_morphisms_over(b, constant_final_system(i, SIG2), xi.map)) == 1
            assert ki.index == p and li.index == i


def residuated_pairs():
    out = []
    for i in all_indexes():
        for p in all_indexes():
            for xi in ssl_morphisms(i, p):
                zeta = residual_left_adjoint(xi)
                if zeta is not None:
                    out.append((xi, zeta))
    return out


def test_transpose_is_a_bijection():
    pairs = residuated_pairs()
    corpus = system_corpus()
    checked = set()
    for xi, zeta in pairs:
        a_cands = [s for s in corpus if s.index == xi.source][:2]
        b_cands = [s for s in corpus if s.index == xi.target][:2]
        for a, b in product(a_cands, b_cands):
            b_xi, a_zeta = reindex(b, xi), reindex(a, zeta)
            left = system_morphisms_over(b_xi, a, tuple(xi.source.elements))
            right = system_morphisms_over(b, a_zeta, tuple(xi.target.elements))
            phi = [residuated_transpose(u, b, xi, zeta) for u in left]
            assert sorted(v.components for v in phi) == sorted(v.components for v in right)
            assert len(set(v.components for v in phi)) == len(left)
            for u, v in zip(left, phi):
                assert inverse_transpose(v, a, xi, zeta) == u
            for v in right:
                assert residuated_transpose(inverse_transpose(v, a, xi, zeta), b, xi, zeta) == v
            checked.add(xi.map + (-1,) + tuple(xi.source.table) + tuple(xi.target.table))
    assert len(checked) >= 5

"""Inductive systems of algebras indexed by finite sup-semilattices.

A morphism ``(xi, u)`` from a system over ``I`` to a system over ``P`` pairs a
join morphism ``xi: I -> P`` with components ``u[i]: A_i -> B_xi(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .core import FiniteAlgebra, Homomorphism, Signature, check_homomorphism, compose
from .errors import (Check, CompositionMismatch, ConstantInSignature, InvalidSystem,
                     NotResiduated)
from .semilattice import (SslMorphism, SupSemilattice, check_ssl_morphism,
                          residual_left_adjoint, ssl_morphisms, validate_ssl)


@dataclass(frozen=True)
class InductiveSystem:
    index: SupSemilattice
    signature: Signature
    algebras: tuple[FiniteAlgebra, ...]
    transitions: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "algebras", tuple(self.algebras))
        trans = {tuple(k): tuple(v) for k, v in dict(self.transitions).items()}
        object.__setattr__(self, "transitions", dict(sorted(trans.items())))

    @classmethod
    def build(cls, index: SupSemilattice, signature: Signature,
              algebras: Sequence[FiniteAlgebra],
              transitions: Mapping[tuple[int, int], Sequence[int]]) -> InductiveSystem:
        """Fill in identities for ``i <= i`` when they are missing."""
        trans = dict(transitions)
        for i in index.elements:
            trans.setdefault((i, i), tuple(range(algebras[i].size)))
        return cls(index, signature, tuple(algebras), trans)

    def f(self, i: int, j: int) -> tuple[int, ...]:
        return self.transitions[(i, j)]

    def transition(self, i: int, j: int) -> Homomorphism:
        return Homomorphism(self.algebras[i], self.algebras[j], self.f(i, j))

    def __hash__(self):
        return hash((self.index, self.signature, self.algebras,
                     tuple(self.transitions.items())))


@dataclass(frozen=True)
class SystemMorphism:
    source: InductiveSystem
    target: InductiveSystem
    xi: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(self.xi))
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))

    @property
    def xi_morphism(self) -> SslMorphism:
        return SslMorphism(self.source.index, self.target.index, self.xi)


def validate_indsys(sys: InductiveSystem) -> Check:
    s = sys.index
    check = validate_ssl(s)
    if not check:
        return Check.failed("index " + check.law, check.witness, check.detail)
    if len(sys.algebras) != s.size:
        return Check.failed("fibers", None, f"{len(sys.algebras)} algebras for {s.size} indices")
    for i, a in enumerate(sys.algebras):
        if a.signature != sys.signature:
            return Check.failed("signature", (i,))
    pairs = s.comparable_pairs()
    for key in sys.transitions:
        if key not in pairs:
            return Check.failed("transition index", key, "transition for an incomparable pair")
    for i, j in pairs:
        if (i, j) not in sys.transitions:
            return Check.failed("transition missing", (i, j))
    for i in s.elements:
        if sys.f(i, i) != tuple(sys.algebras[i].elements):
            return Check.failed("identity", (i,))
    for i, j in pairs:
        check = check_homomorphism(sys.f(i, j), sys.algebras[i], sys.algebras[j])
        if not check:
            return Check.failed("homomorphism", (i, j), str(check))
    for i, j in pairs:
        for k in s.elements:
            if s.leq(j, k) and compose(sys.f(j, k), sys.f(i, j)) != sys.f(i, k):
                return Check.failed("composition", (i, j, k))
    return Check.passed()


def require_valid(sys: InductiveSystem) -> InductiveSystem:
    check = validate_indsys(sys)
    if not check:
        raise InvalidSystem(str(check))
    return sys


def validate_system_morphism(m: SystemMorphism) -> Check:
    a, b = m.source, m.target
    check = check_ssl_morphism(m.xi, a.index, b.index)
    if not check:
        return Check.failed("xi " + check.law, check.witness)
    if len(m.components) != a.index.size:
        return Check.failed("components", None, "one component per source index required")
    for i, u in enumerate(m.components):
        check = check_homomorphism(u, a.algebras[i], b.algebras[m.xi[i]])
        if not check:
            return Check.failed("component homomorphism", (i,), str(check))
    for i, j in a.index.comparable_pairs():
        lhs = compose(m.components[j], a.f(i, j))
        rhs = compose(b.f(m.xi[i], m.xi[j]), m.components[i])
        if lhs != rhs:
            return Check.failed("naturality", (i, j))
    return Check.passed()


def identity_morphism(sys: InductiveSystem) -> SystemMorphism:
    return SystemMorphism(sys, sys, tuple(sys.index.elements),
                          tuple(tuple(a.elements) for a in sys.algebras))


def reindex(sys: InductiveSystem, xi: SslMorphism) -> InductiveSystem:
    """Pull ``sys`` (over ``P``) back along ``xi: I -> P``."""
    s = xi.source
    algebras = tuple(sys.algebras[xi(i)] for i in s.elements)
    trans = {(i, j): sys.f(xi(i), xi(j)) for i, j in s.comparable_pairs()}
    return InductiveSystem(s, sys.signature, algebras, trans)


def compose_system_morphisms(m2: SystemMorphism, m1: SystemMorphism) -> SystemMorphism:
    if m1.target != m2.source:
        raise CompositionMismatch("target of the first morphism is not the source of the second")
    xi = tuple(m2.xi[p] for p in m1.xi)
    comps = tuple(compose(m2.components[m1.xi[i]], m1.components[i])
                  for i in m1.source.index.elements)
    return SystemMorphism(m1.source, m2.target, xi, comps)


def constant_initial_system(s: SupSemilattice, sig: Signature) -> InductiveSystem:
    """Empty algebra at every index (the initial algebra of a constant-free signature)."""
    if sig.has_constants:
        raise ConstantInSignature("the initial algebra of a signature with constants is infinite in general")
    empty = FiniteAlgebra(sig, 0, tuple(() for _ in sig))
    return InductiveSystem(s, sig, (empty,) * s.size,
                           {p: () for p in s.comparable_pairs()})


def final_algebra(sig: Signature) -> FiniteAlgebra:
    return FiniteAlgebra(sig, 1, tuple((0,) for _ in sig))


def constant_final_system(s: SupSemilattice, sig: Signature) -> InductiveSystem:
    return InductiveSystem(s, sig, (final_algebra(sig),) * s.size,
                           {p: (0,) for p in s.comparable_pairs()})


def initial_morphism(xi: SslMorphism, sig: Signature) -> SystemMorphism:
    """``L(xi)``."""
    return SystemMorphism(constant_initial_system(xi.source, sig),
                          constant_initial_system(xi.target, sig),
                          xi.map, ((),) * xi.source.size)


def final_morphism(xi: SslMorphism, sig: Signature) -> SystemMorphism:
    """``K(xi)``."""
    return SystemMorphism(constant_final_system(xi.source, sig),
                          constant_final_system(xi.target, sig),
                          xi.map, ((0,),) * xi.source.size)


def canonical_comparison(s: SupSemilattice, sig: Signature) -> SystemMorphism:
    """``gamma_s: L(s) -> K(s)``: identity on the index, empty maps on fibers."""
    m = SystemMorphism(constant_initial_system(s, sig), constant_final_system(s, sig),
                       tuple(s.elements), ((),) * s.size)
    assert validate_system_morphism(m)
    return m


def homomorphisms(a: FiniteAlgebra, b: FiniteAlgebra) -> list[tuple[int, ...]]:
    return [f for f in product(range(b.size), repeat=a.size) if check_homomorphism(f, a, b)]


def system_morphisms_over(src: InductiveSystem, tgt: InductiveSystem,
                          xi: Sequence[int]) -> list[SystemMorphism]:
    """Every morphism ``src -> tgt`` lying over the given index map."""
    xi = tuple(xi)
    per_index = [homomorphisms(a, tgt.algebras[xi[i]]) for i, a in enumerate(src.algebras)]
    out = []
    for comps in product(*per_index):
        m = SystemMorphism(src, tgt, xi, comps)
        if validate_system_morphism(m):
            out.append(m)
    return out


def system_morphisms(src: InductiveSystem, tgt: InductiveSystem) -> list[SystemMorphism]:
    out = []
    for xi in ssl_morphisms(src.index, tgt.index):
        out.extend(system_morphisms_over(src, tgt, xi.map))
    return out


def _residual(xi: SslMorphism, zeta: SslMorphism | None) -> SslMorphism:
    if zeta is None:
        zeta = residual_left_adjoint(xi)
    if zeta is None:
        raise NotResiduated(f"{xi.map} has no residual")
    return zeta


def residuated_transpose(u: SystemMorphism, b: InductiveSystem, xi: SslMorphism,
                         zeta: SslMorphism | None = None) -> SystemMorphism:
    """``u: B_xi -> A`` over ``I`` to its transpose ``B -> A_zeta`` over ``P``.

    Component at ``p`` is ``u[zeta(p)] . g[p, xi(zeta(p))]``.
    """
    zeta = _residual(xi, zeta)
    a = u.target
    comps = tuple(compose(u.components[zeta(p)], b.f(p, xi(zeta(p))))
                  for p in b.index.elements)
    v = SystemMorphism(b, reindex(a, zeta), tuple(b.index.elements), comps)
    assert validate_system_morphism(v), "transpose is not a morphism"
    return v


def inverse_transpose(v: SystemMorphism, a: InductiveSystem, xi: SslMorphism,
                      zeta: SslMorphism | None = None) -> SystemMorphism:
    """``v: B -> A_zeta`` over ``P`` back to ``B_xi -> A`` over ``I``.

    Component at ``i`` is ``f[zeta(xi(i)), i] . v[xi(i)]``.
    """
    zeta = _residual(xi, zeta)
    b = v.source
    comps = tuple(compose(a.f(zeta(xi(i)), i), v.components[xi(i)])
                  for i in a.index.elements)
    u = SystemMorphism(reindex(b, xi), a, tuple(a.index.elements), comps)
    assert validate_system_morphism(u), "inverse transpose is not a morphism"
    return u

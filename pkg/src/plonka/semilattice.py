"""Finite sup-semilattices, join morphisms, residuation, and the reflection of
constant-free algebras into semilattices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable, Sequence

from .core import (Congruence, FiniteAlgebra, Signature, check_homomorphism,
                   flat_index, generated_congruence, quotient_algebra, tuples)
from .errors import Check, ConstantInSignature, NotAHomomorphism

JOIN = Signature((("join", 2),))


@dataclass(frozen=True)
class SupSemilattice:
    size: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))

    @classmethod
    def from_nested(cls, rows: Sequence[Sequence[int]]) -> SupSemilattice:
        return cls(len(rows), tuple(x for r in rows for x in r))

    @classmethod
    def from_function(cls, n: int, f) -> SupSemilattice:
        return cls(n, tuple(f(i, j) for i, j in tuples(n, 2)))

    @property
    def elements(self) -> range:
        return range(self.size)

    def join(self, i: int, j: int) -> int:
        return self.table[i * self.size + j]

    def join_all(self, xs: Iterable[int]) -> int:
        return reduce(self.join, xs)

    def leq(self, i: int, j: int) -> bool:
        return self.join(i, j) == j

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All ``(i, j)`` with ``i <= j``, lexicographically."""
        return [(i, j) for i in self.elements for j in self.elements if self.leq(i, j)]

    def nested(self) -> list[list[int]]:
        n = self.size
        return [list(self.table[i * n:(i + 1) * n]) for i in range(n)]

    def as_algebra(self) -> FiniteAlgebra:
        return FiniteAlgebra(JOIN, self.size, (self.table,))


def chain(n: int) -> SupSemilattice:
    return SupSemilattice.from_function(n, max)


def validate_ssl(s: SupSemilattice) -> Check:
    n = s.size
    if len(s.table) != n * n or any(not 0 <= v < n for v in s.table):
        return Check.failed("totality", None, "join table is not a total map into the carrier")
    j = s.join
    for x in range(n):
        if j(x, x) != x:
            return Check.failed("idempotence", (x,))
    for x, y in tuples(n, 2):
        if j(x, y) != j(y, x):
            return Check.failed("commutativity", (x, y))
    for x, y, z in tuples(n, 3):
        if j(x, j(y, z)) != j(j(x, y), z):
            return Check.failed("associativity", (x, y, z))
    return Check.passed()


@dataclass(frozen=True)
class SslMorphism:
    source: SupSemilattice
    target: SupSemilattice
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, i: int) -> int:
        return self.map[i]


def check_ssl_morphism(xi: Sequence[int], s: SupSemilattice, t: SupSemilattice) -> Check:
    if len(xi) != s.size or any(not 0 <= y < t.size for y in xi):
        return Check.failed("totality", tuple(xi))
    for i, j in tuples(s.size, 2):
        if xi[s.join(i, j)] != t.join(xi[i], xi[j]):
            return Check.failed("join preservation", (i, j))
    return Check.passed()


def identity_ssl_morphism(s: SupSemilattice) -> SslMorphism:
    return SslMorphism(s, s, tuple(s.elements))


def compose_ssl(g: SslMorphism, f: SslMorphism) -> SslMorphism:
    return SslMorphism(f.source, g.target, tuple(g.map[x] for x in f.map))


def ssl_morphisms(s: SupSemilattice, t: SupSemilattice) -> list[SslMorphism]:
    return [SslMorphism(s, t, m) for m in product(range(t.size), repeat=s.size)
            if check_ssl_morphism(m, s, t)]


def free_ssl(m: int) -> tuple[SupSemilattice, tuple[int, ...]]:
    """Nonempty subsets of ``range(m)`` under union.

    Element ``k`` is the subset with bitmask ``k + 1``.
    """
    size = 2 ** m - 1
    s = SupSemilattice.from_function(size, lambda a, b: ((a + 1) | (b + 1)) - 1)
    return s, tuple((1 << g) - 1 for g in range(m))


def subset_of(k: int) -> frozenset[int]:
    """Members of the free-semilattice element ``k``."""
    mask = k + 1
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def residual_left_adjoint(xi: SslMorphism) -> SslMorphism | None:
    """The residual of ``xi``, or None when ``xi`` is not residuated.

    For each ``p`` the residual picks the least ``i`` with ``p <= xi(i)``.
    """
    s, t = xi.source, xi.target
    zeta = []
    for p in t.elements:
        cands = [i for i in s.elements if t.leq(p, xi(i))]
        least = [i for i in cands if all(s.leq(i, c) for c in cands)]
        if not least:
            return None
        zeta.append(least[0])
    z = SslMorphism(t, s, tuple(zeta))
    isotone = all(s.leq(z(p), z(q)) for p in t.elements for q in t.elements if t.leq(p, q))
    if not isotone:
        return None
    if not all(s.leq(z(xi(i)), i) for i in s.elements):
        return None
    if not all(t.leq(p, xi(z(p))) for p in t.elements):
        return None
    return z


def join_algebra(s: SupSemilattice, sig: Signature) -> FiniteAlgebra:
    """Every symbol of arity ``k`` read as the ``k``-fold join."""
    if sig.has_constants:
        raise ConstantInSignature(f"{sig} has constants")
    tables = []
    for _, k in sig:
        tables.append(tuple(s.join_all(args) for args in tuples(s.size, k)))
    return FiniteAlgebra(sig, s.size, tuple(tables))


@dataclass(frozen=True)
class Reflection:
    """Semilattice reflection of an algebra, with the data it was built from."""

    free: SupSemilattice
    congruence: Congruence
    semilattice: SupSemilattice
    unit: tuple[int, ...]


def reflect_algebra(a: FiniteAlgebra) -> Reflection:
    if a.signature.has_constants:
        raise ConstantInSignature(f"{a.signature} has constants")
    free, gens = free_ssl(a.size)
    view = free.as_algebra()
    pairs = []
    for _, k, t in a.operations():
        for args in tuples(a.size, k):
            lhs = gens[t[flat_index(args, a.size)]]
            rhs = free.join_all(gens[x] for x in args)
            pairs.append((lhs, rhs))
    psi = generated_congruence(view, pairs)
    q, pr = quotient_algebra(view, psi)
    sl = SupSemilattice(q.size, q.tables[0])
    return Reflection(free, psi, sl, tuple(pr.map[g] for g in gens))


def ssl_reflection_of_algebra(a: FiniteAlgebra) -> tuple[SupSemilattice, tuple[int, ...]]:
    r = reflect_algebra(a)
    return r.semilattice, r.unit


def factor_through_reflection(f: Sequence[int], a: FiniteAlgebra,
                              target: SupSemilattice) -> SslMorphism:
    """The join morphism out of the reflection of ``a`` that ``f`` factors through."""
    w = join_algebra(target, a.signature)
    check = check_homomorphism(f, a, w)
    if not check:
        raise NotAHomomorphism(str(check))
    r = reflect_algebra(a)
    flat = [None] * r.semilattice.size
    for k in r.free.elements:
        value = target.join_all(f[x] for x in sorted(subset_of(k)))
        block = r.congruence.labels[k]
        if flat[block] is None:
            flat[block] = value
        elif flat[block] != value:
            raise AssertionError("reflection congruence not inside the kernel of the extension")
    fb = SslMorphism(r.semilattice, target, tuple(flat))
    assert check_ssl_morphism(fb.map, r.semilattice, target)
    assert all(fb(r.unit[x]) == f[x] for x in a.elements)
    return fb


def all_semilattices(n: int) -> list[SupSemilattice]:
    """Every join table on ``range(n)``, lexicographically (not up to isomorphism)."""
    if n == 0:
        return [SupSemilattice(0, ())]
    out = []
    free = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for vals in product(range(n), repeat=len(free)):
        table = [0] * (n * n)
        for x in range(n):
            table[x * n + x] = x
        for (i, j), v in zip(free, vals):
            table[i * n + j] = table[j * n + i] = v
        s = SupSemilattice(n, tuple(table))
        if validate_ssl(s):
            out.append(s)
    return out

"""Płonka operators on constant-free algebras."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .band import (LeftNormalBand, all_lnbs, check_band_morphism, induced_relation,
                   right_fold, validate_lnb)
from .core import (FiniteAlgebra, check_compatible, check_homomorphism, flat_index,
                   power_algebra, tuples)
from .errors import (CarrierTooLarge, Check, ConstantInSignature, NotAPlonkaAlgebra,
                     SignatureMismatch)

DEFAULT_BOUND = 3


@dataclass(frozen=True)
class PlonkaAlgebra:
    algebra: FiniteAlgebra
    band: LeftNormalBand

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def elements(self) -> range:
        return self.algebra.elements

    @property
    def signature(self):
        return self.algebra.signature

    def d(self, x: int, y: int) -> int:
        return self.band.d(x, y)


@dataclass(frozen=True)
class PlonkaMorphism:
    source: PlonkaAlgebra
    target: PlonkaAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]


@dataclass(frozen=True)
class TensorObject:
    """``(A, F, D)``: an algebra with a band structure ``D`` that is a homomorphism ``A^2 -> A``."""

    algebra: FiniteAlgebra
    band: LeftNormalBand


def _as_band(a: FiniteAlgebra, d) -> LeftNormalBand:
    if isinstance(d, LeftNormalBand):
        return d
    return LeftNormalBand(a.size, tuple(d))


def validate_plonka(a: FiniteAlgebra, d: LeftNormalBand | Sequence[int]) -> Check:
    """D1-D5 checked exhaustively; the first violation is reported."""
    if a.signature.has_constants:
        raise ConstantInSignature(f"{a.signature} has constants")
    b = _as_band(a, d)
    if b.size != a.size:
        return Check.failed("totality", None, "operator and algebra carriers differ")
    check = validate_lnb(b)
    if not check:
        return check
    n = a.size
    dd = b.d
    for s, k, t in a.operations():
        for xs in tuples(n, k):
            fx = t[flat_index(xs, n)]
            for y in range(n):
                if dd(fx, y) != t[flat_index([dd(x, y) for x in xs], n)]:
                    return Check.failed("D4", (s, xs, y))
    for s, k, t in a.operations():
        for xs in tuples(n, k):
            fx = t[flat_index(xs, n)]
            dn = right_fold(b, xs)
            for y in range(n):
                if dd(y, fx) != dd(y, dn):
                    return Check.failed("D5", (s, xs, y))
    return Check.passed()


def plonka_algebra(a: FiniteAlgebra, d: LeftNormalBand | Sequence[int]) -> PlonkaAlgebra:
    b = _as_band(a, d)
    check = validate_plonka(a, b)
    if not check:
        raise NotAPlonkaAlgebra(str(check))
    return PlonkaAlgebra(a, b)


def _maps(m: int, n: int):
    return tuples(n, m)


def verify_derived_laws(p: PlonkaAlgebra) -> list[str]:
    """Exhaustive re-check of the identities every Płonka operator satisfies.

    Absorption of an argument, one-slot and all-slot distribution, absorption
    of reindexed iterates, the constant-iterate identity, and compatibility
    of the induced relation with the algebra operations. Returns violations.
    """
    a, b = p.algebra, p.band
    n = a.size
    d = b.d
    out = []
    max_m = a.signature.max_arity + 1
    for s, k, t in a.operations():
        def f(xs):
            return t[flat_index(xs, n)]
        for xs in tuples(n, k):
            fx = f(xs)
            for j in range(k):
                if d(fx, xs[j]) != fx:
                    out.append(f"argument absorption fails: {s}{xs}, k={j}")
                for y in range(n):
                    alt = xs[:j] + (d(xs[j], y),) + xs[j + 1:]
                    if d(fx, y) != f(alt):
                        out.append(f"one-slot distribution fails: {s}{xs}, k={j}, y={y}")
            for ys in tuples(n, k):
                if d(fx, f(ys)) != f(tuple(d(x, y) for x, y in zip(xs, ys))):
                    out.append(f"operator not a homomorphism A^2->A: {s}{xs}, {s}{ys}")
            for m in range(1, max_m + 1):
                for phi in _maps(m, k):
                    if d(fx, right_fold(b, tuple(xs[i] for i in phi))) != fx:
                        out.append(f"reindexed iterate absorption fails: {s}{xs}, phi={phi}")
            dn = right_fold(b, xs)
            if d(fx, f((dn,) * k)) != fx:
                out.append(f"constant-iterate identity fails: {s}{xs}")
    phi = induced_relation(b)
    check = check_compatible(a, phi.labels)
    if not check:
        out.append(f"induced relation not a congruence of the algebra: {check}")
    return out


def check_tensor_object(t: TensorObject) -> Check:
    check = validate_lnb(t.band)
    if not check:
        return check
    sq = power_algebra(t.algebra, 2)
    return check_homomorphism(t.band.table, sq, t.algebra)


def tensor_embed(p: PlonkaAlgebra) -> TensorObject:
    t = TensorObject(p.algebra, p.band)
    check = check_tensor_object(t)
    assert check, f"Płonka operator is not a homomorphism A^2 -> A: {check}"
    return t


def check_tensor_morphism(h: Sequence[int], s: TensorObject, t: TensorObject) -> Check:
    check = check_homomorphism(h, s.algebra, t.algebra)
    if not check:
        return check
    return check_band_morphism(h, s.band, t.band)


def enumerate_plonka_operators(a: FiniteAlgebra, bound: int = DEFAULT_BOUND) -> list[LeftNormalBand]:
    """Every Płonka operator for ``a``, in lexicographic table order."""
    if a.signature.has_constants:
        raise ConstantInSignature(f"{a.signature} has constants")
    if a.size > bound:
        raise CarrierTooLarge(f"carrier {a.size} exceeds bound {bound}")
    # tables failing D1-D3 cannot pass, and all_lnbs keeps lexicographic order
    return [b for b in all_lnbs(a.size) if validate_plonka(a, b)]


def check_plonka_morphism(h: Sequence[int], p: PlonkaAlgebra, q: PlonkaAlgebra) -> Check:
    if p.signature != q.signature:
        raise SignatureMismatch(f"{p.signature} vs {q.signature}")
    check = check_homomorphism(h, p.algebra, q.algebra)
    if not check:
        return check
    return check_band_morphism(h, p.band, q.band)


def identity_plonka_morphism(p: PlonkaAlgebra) -> PlonkaMorphism:
    return PlonkaMorphism(p, p, tuple(p.elements))


def compose_plonka(g: PlonkaMorphism, f: PlonkaMorphism) -> PlonkaMorphism:
    return PlonkaMorphism(f.source, g.target, tuple(g.map[x] for x in f.map))

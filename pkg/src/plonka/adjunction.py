"""Płonka sums of inductive systems, the decomposition of Płonka algebras into
inductive systems, and the adjunction between the two constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from .band import (BandMorphism, LeftNormalBand, band_morphism_to_sl_morphism,
                   induced_relation, sl_reflect)
from .core import FiniteAlgebra, check_homomorphism, subalgebra, tuples
from .errors import (ConstantInSignature, EmptyFiber, InvalidMorphism, InvalidSystem,
                     NotAPlonkaAlgebra, NotAPlonkaMorphism, SearchSpaceTooLarge,
                     TargetMismatch)
from .plonka_algebra import (PlonkaAlgebra, PlonkaMorphism, check_plonka_morphism,
                             validate_plonka)
from .semilattice import SupSemilattice
from .systems import (InductiveSystem, SystemMorphism, compose_system_morphisms,
                      identity_morphism, validate_indsys, validate_system_morphism)

DEFAULT_SEARCH_BOUND = 6


class SumElement(NamedTuple):
    index: int
    value: int


def sum_elements(sys: InductiveSystem) -> list[SumElement]:
    """Carrier of the Płonka sum, index-major."""
    return [SumElement(i, x) for i, a in enumerate(sys.algebras) for x in a.elements]


def plonka_sum(sys: InductiveSystem) -> PlonkaAlgebra:
    """Disjoint union of the fibers; operations are evaluated at the join of
    the argument indices after pushing each argument along its transition."""
    if sys.signature.has_constants:
        raise ConstantInSignature(f"{sys.signature} has constants")
    check = validate_indsys(sys)
    if not check:
        raise InvalidSystem(str(check))
    s = sys.index
    elems = sum_elements(sys)
    pos = {e: k for k, e in enumerate(elems)}
    n = len(elems)
    tables = []
    for name, k in sys.signature:
        row = []
        for args in tuples(n, k):
            es = [elems[a] for a in args]
            top = s.join_all(e.index for e in es)
            fiber = sys.algebras[top]
            vals = [sys.f(e.index, top)[e.value] for e in es]
            row.append(pos[SumElement(top, fiber.apply(name, vals))])
        tables.append(tuple(row))
    alg = FiniteAlgebra(sys.signature, n, tuple(tables))
    d = []
    for (j, x), (k, _) in product(elems, repeat=2):
        jk = s.join(j, k)
        d.append(pos[SumElement(jk, sys.f(j, jk)[x])])
    band = LeftNormalBand(n, tuple(d))
    check = validate_plonka(alg, band)
    assert check, f"Płonka sum violates {check}"
    return PlonkaAlgebra(alg, band)


@dataclass(frozen=True)
class Decomposition:
    """A Płonka algebra split into the blocks of its induced relation.

    ``blocks[b]`` lists the original elements of block ``b`` in ascending
    order; local element ``x`` of ``system.algebras[b]`` is ``blocks[b][x]``.
    """

    semilattice: SupSemilattice
    system: InductiveSystem
    blocks: tuple[tuple[int, ...], ...]
    projection: tuple[int, ...]
    local: tuple[int, ...] = field(repr=False)

    @property
    def classes(self) -> tuple[FiniteAlgebra, ...]:
        return self.system.algebras

    def embed(self, block: int, x: int) -> int:
        return self.blocks[block][x]


def decompose(p: PlonkaAlgebra) -> Decomposition:
    check = validate_plonka(p.algebra, p.band)
    if not check:
        raise NotAPlonkaAlgebra(str(check))
    phi = induced_relation(p.band)
    blocks = phi.blocks()
    sl, _ = sl_reflect(p.band)
    d = p.d
    local = [0] * p.size
    algebras = []
    for b in blocks:
        sub, members = subalgebra(p.algebra, b)
        algebras.append(sub)
        for i, x in enumerate(members):
            local[x] = i
    trans = {}
    for bx, by in sl.comparable_pairs():
        candidates = {tuple(local[d(z, y)] for z in blocks[bx]) for y in blocks[by]}
        assert len(candidates) == 1, "transition depends on the chosen representative"
        f = candidates.pop()
        assert all(phi.labels[d(z, blocks[by][0])] == by for z in blocks[bx])
        trans[(bx, by)] = f
    system = InductiveSystem(sl, p.signature, tuple(algebras), trans)
    check = validate_indsys(system)
    assert check, f"decomposition is not an inductive system: {check}"
    return Decomposition(sl, system, tuple(blocks), phi.labels, tuple(local))


def is_on_morphism(h: PlonkaMorphism, src: Decomposition | None = None,
                   tgt: Decomposition | None = None) -> SystemMorphism:
    """``(Sl(h), t(h))``: the block map plus the restrictions of ``h`` to blocks."""
    check = check_plonka_morphism(h.map, h.source, h.target)
    if not check:
        raise NotAPlonkaMorphism(str(check))
    src = src or decompose(h.source)
    tgt = tgt or decompose(h.target)
    xi = band_morphism_to_sl_morphism(BandMorphism(h.source.band, h.target.band, h.map))
    comps = []
    for b, members in enumerate(src.blocks):
        images = [h(x) for x in members]
        assert all(tgt.projection[y] == xi(b) for y in images)
        comps.append(tuple(tgt.local[y] for y in images))
    m = SystemMorphism(src.system, tgt.system, xi.map, tuple(comps))
    check = validate_system_morphism(m)
    assert check, f"Is(h) is not a system morphism: {check}"
    return m


def unit(sys: InductiveSystem, total: PlonkaAlgebra | None = None,
         dec: Decomposition | None = None) -> SystemMorphism:
    """``eta: sys -> Is(Pl(sys))``: index ``i`` goes to the block of its fiber,
    and ``z`` in fiber ``i`` goes to ``(i, z)`` inside that block."""
    for i, a in enumerate(sys.algebras):
        if a.size == 0:
            raise EmptyFiber(f"fiber {i} is empty; the unit needs a point in every fiber")
    total = total or plonka_sum(sys)
    dec = dec or decompose(total)
    elems = sum_elements(sys)
    pos = {e: k for k, e in enumerate(elems)}
    alpha = tuple(dec.projection[pos[SumElement(i, 0)]] for i in sys.index.elements)
    comps = []
    for i, a in enumerate(sys.algebras):
        ks = [pos[SumElement(i, z)] for z in a.elements]
        assert all(dec.projection[k] == alpha[i] for k in ks)
        comps.append(tuple(dec.local[k] for k in ks))
    m = SystemMorphism(sys, dec.system, alpha, tuple(comps))
    check = validate_system_morphism(m)
    assert check, f"unit is not a system morphism: {check}"
    return m


def universal_extension(m: SystemMorphism, q: PlonkaAlgebra,
                        dec: Decomposition | None = None) -> PlonkaMorphism:
    """``(xi, u)#``: ``(x, j) -> u_j(x)`` read inside ``q``."""
    dec = dec or decompose(q)
    if m.target != dec.system:
        raise TargetMismatch("morphism target is not the decomposition of the given algebra")
    check = validate_system_morphism(m)
    if not check:
        raise InvalidMorphism(str(check))
    sys = m.source
    hmap = tuple(dec.embed(m.xi[e.index], m.components[e.index][e.value])
                 for e in sum_elements(sys))
    total = plonka_sum(sys)
    ext = PlonkaMorphism(total, q, hmap)
    check = check_plonka_morphism(hmap, total, q)
    assert check, f"extension is not a Płonka morphism: {check}"
    if all(a.size for a in sys.algebras):
        tdec = decompose(total)
        back = compose_system_morphisms(is_on_morphism(ext, tdec, dec), unit(sys, total, tdec))
        assert back == m, "extension does not factor the given morphism"
    return ext


def counit(q: PlonkaAlgebra, dec: Decomposition | None = None) -> PlonkaMorphism:
    """``epsilon_q: Pl(Is(q)) -> q``; always a bijection."""
    dec = dec or decompose(q)
    e = universal_extension(identity_morphism(dec.system), q, dec)
    assert sorted(e.map) == list(q.elements), "counit is not bijective"
    return e


def pl_on_morphism(m: SystemMorphism) -> PlonkaMorphism:
    """``Pl(xi, u)``: ``(x, i) -> (u_i(x), xi(i))``."""
    check = validate_system_morphism(m)
    if not check:
        raise InvalidMorphism(str(check))
    src, tgt = plonka_sum(m.source), plonka_sum(m.target)
    pos = {e: k for k, e in enumerate(sum_elements(m.target))}
    hmap = tuple(pos[SumElement(m.xi[e.index], m.components[e.index][e.value])]
                 for e in sum_elements(m.source))
    out = PlonkaMorphism(src, tgt, hmap)
    check = check_plonka_morphism(hmap, src, tgt)
    assert check, f"Pl(m) is not a Płonka morphism: {check}"
    return out


def inverse_map(f: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for x, y in enumerate(f):
        inv[y] = x
    return tuple(inv)


def is_system_isomorphism(m: SystemMorphism) -> bool:
    if sorted(m.xi) != list(m.target.index.elements):
        return False
    return all(sorted(u) == list(m.target.algebras[m.xi[i]].elements)
               for i, u in enumerate(m.components))


@dataclass
class AdjunctionReport:
    factorization: bool = False
    candidates: int = 0
    solutions: int = 0
    unique: bool = False
    triangle_is: bool = False
    triangle_pl: bool = False
    extension: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.factorization and self.unique and self.triangle_is and self.triangle_pl

    def lines(self) -> list[str]:
        def pf(b):
            return "pass" if b else "FAIL"
        return [f"factorization: {pf(self.factorization)}",
                f"uniqueness: {pf(self.unique)} ({self.solutions} of {self.candidates} maps)",
                f"triangle Is(eps).eta = id: {pf(self.triangle_is)}",
                f"triangle eps.Pl(eta) = id: {pf(self.triangle_pl)}"] + self.notes


def triangle_identities(sys: InductiveSystem, q: PlonkaAlgebra) -> tuple[bool, bool]:
    """``Is(eps_q) . eta_Is(q) = id`` and ``eps_Pl(sys) . Pl(eta_sys) = id``."""
    dq = decompose(q)
    eta_is = unit(dq.system)
    total_is = plonka_sum(dq.system)
    eps_q = counit(q, dq)
    first = compose_system_morphisms(is_on_morphism(eps_q, decompose(total_is), dq), eta_is)
    ok1 = first == identity_morphism(dq.system)

    total = plonka_sum(sys)
    eta = unit(sys, total)
    pl_eta = pl_on_morphism(eta)
    eps = counit(total)
    ok2 = tuple(eps.map[y] for y in pl_eta.map) == tuple(total.elements)
    return ok1, ok2


def verify_adjunction(sys: InductiveSystem, q: PlonkaAlgebra, m: SystemMorphism,
                      bound: int = DEFAULT_SEARCH_BOUND) -> AdjunctionReport:
    """Factorization, uniqueness by exhaustive search, and both triangle identities."""
    for i, a in enumerate(sys.algebras):
        if a.size == 0:
            raise EmptyFiber(f"fiber {i} is empty")
    total = plonka_sum(sys)
    if total.size > bound or q.size > bound:
        raise SearchSpaceTooLarge(
            f"carriers {total.size} and {q.size} exceed the search bound {bound}")
    if m.source != sys:
        raise TargetMismatch("morphism source is not the given system")
    report = AdjunctionReport()
    dq = decompose(q)
    tdec = decompose(total)
    eta = unit(sys, total, tdec)
    ext = universal_extension(m, q, dq)
    report.extension = ext.map
    report.factorization = compose_system_morphisms(is_on_morphism(ext, tdec, dq), eta) == m
    sols = []
    for h in product(range(q.size), repeat=total.size):
        report.candidates += 1
        if not check_homomorphism(h, total.algebra, q.algebra):
            continue
        if not check_plonka_morphism(h, total, q):
            continue
        hm = PlonkaMorphism(total, q, h)
        if compose_system_morphisms(is_on_morphism(hm, tdec, dq), eta) == m:
            sols.append(h)
    report.solutions = len(sols)
    report.unique = sols == [ext.map]
    report.triangle_is, report.triangle_pl = triangle_identities(sys, q)
    return report


@dataclass
class RoundTripReport:
    counit_iso: bool
    counit_inverse_plonka: bool
    unit_iso: bool | None
    triangles: bool

    @property
    def ok(self) -> bool:
        return (self.counit_iso and self.counit_inverse_plonka and self.triangles
                and self.unit_iso is not False)


def roundtrip_plonka(q: PlonkaAlgebra) -> RoundTripReport:
    dq = decompose(q)
    eps = counit(q, dq)
    total = plonka_sum(dq.system)
    bij = sorted(eps.map) == list(q.elements)
    inv_ok = bij and bool(check_plonka_morphism(inverse_map(eps.map), q, total))
    eta = unit(dq.system, total)
    t1, t2 = triangle_identities(dq.system, q)
    return RoundTripReport(bij, inv_ok, is_system_isomorphism(eta), t1 and t2)


def roundtrip_system(sys: InductiveSystem) -> RoundTripReport:
    total = plonka_sum(sys)
    rep = roundtrip_plonka(total)
    eta = unit(sys, total)
    t1, t2 = triangle_identities(sys, total)
    return RoundTripReport(rep.counit_iso, rep.counit_inverse_plonka,
                           is_system_isomorphism(eta), t1 and t2)

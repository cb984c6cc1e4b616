"""Left normal bands and their reflection into sup-semilattices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .core import Congruence, FiniteAlgebra, Signature, check_compatible, tuples
from .errors import (Check, IterateMismatch, NotALnb, NotAHomomorphism,
                     TargetNotASemilatticeBand)
from .semilattice import SslMorphism, SupSemilattice, check_ssl_morphism, validate_ssl

BAND = Signature((("d", 2),))


@dataclass(frozen=True)
class LeftNormalBand:
    size: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))

    @classmethod
    def from_nested(cls, rows: Sequence[Sequence[int]]) -> LeftNormalBand:
        return cls(len(rows), tuple(x for r in rows for x in r))

    @classmethod
    def from_function(cls, n: int, f) -> LeftNormalBand:
        return cls(n, tuple(f(x, y) for x, y in tuples(n, 2)))

    @property
    def elements(self) -> range:
        return range(self.size)

    def d(self, x: int, y: int) -> int:
        return self.table[x * self.size + y]

    def nested(self) -> list[list[int]]:
        n = self.size
        return [list(self.table[i * n:(i + 1) * n]) for i in range(n)]

    def as_algebra(self) -> FiniteAlgebra:
        return FiniteAlgebra(BAND, self.size, (self.table,))


@dataclass(frozen=True)
class BandMorphism:
    source: LeftNormalBand
    target: LeftNormalBand
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]


def validate_lnb(b: LeftNormalBand) -> Check:
    return _validate_table(b.size, b.table)


@lru_cache(maxsize=4096)
def _validate_table(n: int, table: tuple[int, ...]) -> Check:
    # the same few tables are re-checked many times during enumeration
    if len(table) != n * n or any(not 0 <= v < n for v in table):
        return Check.failed("totality", None, "table is not a total map into the carrier")

    def d(x, y):
        return table[x * n + y]
    for x in range(n):
        if d(x, x) != x:
            return Check.failed("D1", (x,))
    for x, y, z in tuples(n, 3):
        if d(x, d(y, z)) != d(d(x, y), z):
            return Check.failed("D2", (x, y, z))
    for x, y, z in tuples(n, 3):
        if d(x, d(y, z)) != d(x, d(z, y)):
            return Check.failed("D3", (x, y, z))
    return Check.passed()


def check_band_morphism(h: Sequence[int], b: LeftNormalBand, c: LeftNormalBand) -> Check:
    if len(h) != b.size or any(not 0 <= y < c.size for y in h):
        return Check.failed("totality", tuple(h))
    for x, y in tuples(b.size, 2):
        if c.d(h[x], h[y]) != h[b.d(x, y)]:
            return Check.failed("band morphism", (x, y))
    return Check.passed()


def right_fold(b: LeftNormalBand, xs: Sequence[int]) -> int:
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = b.d(x, acc)
    return acc


def left_fold(b: LeftNormalBand, xs: Sequence[int]) -> int:
    acc = xs[0]
    for x in xs[1:]:
        acc = b.d(acc, x)
    return acc


def iterate_d(b: LeftNormalBand, xs: Sequence[int]) -> int:
    """``D_n(xs)``; the right and left iterates must agree."""
    if not xs:
        raise ValueError("iterate needs at least one argument")
    r = right_fold(b, xs)
    if r != left_fold(b, xs):
        raise IterateMismatch(f"folds of {tuple(xs)} disagree")
    return r


def induced_relation(b: LeftNormalBand) -> Congruence:
    """``x ~ y`` iff ``d(x,y) = x`` and ``d(y,x) = y``, as a congruence of ``(A, d)``."""
    check = validate_lnb(b)
    if not check:
        raise NotALnb(str(check))
    n = b.size
    rel = [[b.d(x, y) == x and b.d(y, x) == y for y in range(n)] for x in range(n)]
    labels = [min(y for y in range(n) if rel[x][y]) for x in range(n)]
    for x, y in tuples(n, 2):
        assert rel[x][y] == rel[y][x], "induced relation not symmetric"
        assert rel[x][y] == (labels[x] == labels[y]), "induced relation not transitive"
    alg = b.as_algebra()
    assert check_compatible(alg, labels), "induced relation not compatible with d"
    return Congruence(alg, tuple(labels))


def ssl_to_band(s: SupSemilattice) -> LeftNormalBand:
    return LeftNormalBand(s.size, s.table)


def sl_reflect(b: LeftNormalBand) -> tuple[SupSemilattice, BandMorphism]:
    """Blocks of the induced relation, joined by ``[x] v [y] = [d(x,y)]``."""
    phi = induced_relation(b)
    blocks = phi.blocks()
    m = len(blocks)
    table = []
    for bx, by in tuples(m, 2):
        vals = {phi.labels[b.d(x, y)] for x in blocks[bx] for y in blocks[by]}
        assert len(vals) == 1, "block join depends on representatives"
        table.append(vals.pop())
    s = SupSemilattice(m, tuple(table))
    check = validate_ssl(s)
    assert check, f"block quotient is not a semilattice: {check}"
    pr = BandMorphism(b, ssl_to_band(s), phi.labels)
    assert check_band_morphism(pr.map, b, pr.target)
    return s, pr


def factor_through_sl(h: BandMorphism) -> SslMorphism:
    """The join morphism ``Sl(source) -> I`` with ``h = h_flat . pr``."""
    target = SupSemilattice(h.target.size, h.target.table)
    if not validate_ssl(target):
        raise TargetNotASemilatticeBand("target band is not commutative")
    check = check_band_morphism(h.map, h.source, h.target)
    if not check:
        raise NotAHomomorphism(str(check))
    sl, pr = sl_reflect(h.source)
    flat: list[int | None] = [None] * sl.size
    for x in h.source.elements:
        block = pr(x)
        if flat[block] is None:
            flat[block] = h(x)
        elif flat[block] != h(x):
            raise AssertionError("induced relation not inside the kernel of h")
    out = SslMorphism(sl, target, tuple(flat))
    assert check_ssl_morphism(out.map, sl, target)
    return out


def band_morphism_to_sl_morphism(h: BandMorphism) -> SslMorphism:
    """``Sl(h)``: ``[x] -> [h(x)]``."""
    _, pr_t = sl_reflect(h.target)
    composite = BandMorphism(h.source, pr_t.target, tuple(pr_t(y) for y in h.map))
    return factor_through_sl(composite)


@lru_cache(maxsize=None)
def all_lnbs(n: int) -> tuple[LeftNormalBand, ...]:
    """Every left normal band on ``range(n)`` in lexicographic table order."""
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    out = []
    for vals in product(range(n), repeat=len(off)):
        table = [0] * (n * n)
        for x in range(n):
            table[x * n + x] = x
        for (x, y), v in zip(off, vals):
            table[x * n + y] = v
        b = LeftNormalBand(n, tuple(table))
        if validate_lnb(b):
            out.append(b)
    return tuple(out)


def reindexings(m: int, n: int):
    """All maps ``range(m) -> range(n)``."""
    return product(range(n), repeat=m)


def verify_band_laws(b: LeftNormalBand, max_len: int = 3) -> list[str]:
    """Exhaustively re-check the derived identities of a left normal band.

    Covers absorption of iterates (the iterate is always the left argument:
    ``d(x, D_n(xs)) = D_n(xs)`` fails already for left-zero bands), its
    reindexed form, agreement of left and right iterates, congruence of the induced relation for every iterate, and
    ``(d(x,y), d(y,x))`` being related. Returns the violations found.
    """
    out = []
    n = b.size
    d = b.d
    phi = induced_relation(b)
    lab = phi.labels
    for length in range(1, max_len + 1):
        for xs in tuples(n, length):
            r, l = right_fold(b, xs), left_fold(b, xs)
            if r != l:
                out.append(f"left/right iterates differ at {xs}")
            for k in range(length):
                if d(r, xs[k]) != r:
                    out.append(f"right absorption fails at {xs}, k={k}")
                if d(l, xs[k]) != l:
                    out.append(f"left absorption fails at {xs}, k={k}")
            for m in range(1, max_len + 1):
                for phi_map in reindexings(m, length):
                    ys = tuple(xs[j] for j in phi_map)
                    rm, lm = right_fold(b, ys), left_fold(b, ys)
                    if d(r, rm) != r or d(r, lm) != r:
                        out.append(f"reindexed absorption (right) fails at {xs}, {phi_map}")
                    if d(l, rm) != l or d(l, lm) != l:
                        out.append(f"reindexed absorption (left) fails at {xs}, {phi_map}")
    for length in range(1, max_len + 1):
        for xs in tuples(n, length):
            for ys in tuples(n, length):
                if all(lab[x] == lab[y] for x, y in zip(xs, ys)):
                    if lab[right_fold(b, xs)] != lab[right_fold(b, ys)]:
                        out.append(f"induced relation not a congruence for D_{length} at {xs}, {ys}")
    for x, y in tuples(n, 2):
        if lab[d(x, y)] != lab[d(y, x)]:
            out.append(f"(d(x,y), d(y,x)) unrelated at {(x, y)}")
    return out

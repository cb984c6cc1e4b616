"""Finite signatures, algebras, homomorphisms, congruences and quotients.

Carriers are always ``range(n)``. An operation of arity ``k`` is stored as a
flat row-major tuple of length ``n**k``; the entry for ``(a0, ..., ak-1)``
lives at index ``a0*n**(k-1) + ... + ak-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import Check, NotACongruence, NotRefinement, SignatureMismatch


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(s), int(k)) for s, k in self.symbols))
        names = [s for s, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")
        for s, k in self.symbols:
            if k < 0:
                raise ValueError(f"negative arity for {s!r}")

    @classmethod
    def of(cls, **arities: int) -> Signature:
        return cls(tuple(arities.items()))

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, name: object) -> bool:
        return any(s == name for s, _ in self.symbols)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.symbols)

    def arity(self, name: str) -> int:
        for s, k in self.symbols:
            if s == name:
                return k
        raise KeyError(name)

    def position(self, name: str) -> int:
        return self.names.index(name)

    @property
    def max_arity(self) -> int:
        return max((k for _, k in self.symbols), default=0)

    @property
    def has_constants(self) -> bool:
        return any(k == 0 for _, k in self.symbols)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{s}/{k}" for s, k in self.symbols) + "}"


def restrict_nonzero(sig: Signature) -> Signature:
    """Drop every constant symbol, keeping the order of the rest."""
    return Signature(tuple((s, k) for s, k in sig if k != 0))


def flat_index(args: Sequence[int], n: int) -> int:
    i = 0
    for a in args:
        i = i * n + a
    return i


def tuples(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return product(range(n), repeat=k)


@dataclass(frozen=True)
class FiniteAlgebra:
    signature: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "tables", tuple(tuple(t) for t in self.tables))

    @classmethod
    def from_functions(cls, sig: Signature, n: int,
                       ops: Mapping[str, Callable[..., int]]) -> FiniteAlgebra:
        tables = []
        for s, k in sig:
            f = ops[s]
            tables.append(tuple(f(*args) for args in tuples(n, k)))
        return cls(sig, n, tuple(tables))

    @classmethod
    def from_nested(cls, sig: Signature, n: int, ops: Mapping[str, object]) -> FiniteAlgebra:
        """Build from nested lists (row-major); an arity-0 table is a bare int."""
        tables = []
        for s, k in sig:
            tables.append(tuple(_flatten(ops[s], k)))
        return cls(sig, n, tuple(tables))

    @property
    def elements(self) -> range:
        return range(self.size)

    def table(self, name: str) -> tuple[int, ...]:
        return self.tables[self.signature.position(name)]

    def apply(self, name: str, args: Sequence[int]) -> int:
        return self.table(name)[flat_index(args, self.size)]

    def nested_table(self, name: str):
        k = self.signature.arity(name)
        return _nest(self.table(name), self.size, k)

    def operations(self) -> Iterator[tuple[str, int, tuple[int, ...]]]:
        for (s, k), t in zip(self.signature, self.tables):
            yield s, k, t


def _flatten(obj, depth: int) -> list:
    if depth == 0:
        if isinstance(obj, (list, tuple)):
            raise ValueError("constant table must be a single integer")
        return [obj]
    if not isinstance(obj, (list, tuple)):
        raise ValueError("table nesting shallower than the arity")
    out = []
    for row in obj:
        out.extend(_flatten(row, depth - 1))
    return out


def _nest(flat: Sequence[int], n: int, k: int):
    if k == 0:
        return flat[0]
    if k == 1:
        return list(flat)
    step = n ** (k - 1)
    return [_nest(flat[i * step:(i + 1) * step], n, k - 1) for i in range(n)]


def validate_algebra(a: FiniteAlgebra) -> list[str]:
    """Every malformation of ``a``; an empty list means well-formed."""
    problems = []
    if a.size < 0:
        return [f"negative carrier size {a.size}"]
    if len(a.tables) != len(a.signature):
        problems.append(f"{len(a.tables)} tables for {len(a.signature)} symbols")
    n = a.size
    for (s, k), t in zip(a.signature, a.tables):
        if k == 0 and n == 0:
            problems.append(f"constant {s} cannot be interpreted in an empty carrier")
            continue
        expected = n ** k
        if len(t) > expected:
            problems.append(f"{s}: {len(t) - expected} surplus table entries")
        for idx, args in enumerate(tuples(n, k)):
            if idx >= len(t):
                problems.append(f"{s}{_fmt(args)} missing")
            elif not (isinstance(t[idx], int) and 0 <= t[idx] < n):
                problems.append(f"{s}{_fmt(args)} = {t[idx]} outside carrier")
    return problems


def _fmt(args) -> str:
    return "(" + ",".join(map(str, args)) + ")"


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]


def check_homomorphism(f: Sequence[int], a: FiniteAlgebra, b: FiniteAlgebra) -> Check:
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a.signature} vs {b.signature}")
    if len(f) != a.size or any(not 0 <= y < b.size for y in f):
        return Check.failed("totality", tuple(f), "map is not a total function into the target")
    for (s, k), ta, tb in zip(a.signature, a.tables, b.tables):
        for idx, args in enumerate(tuples(a.size, k)):
            if f[ta[idx]] != tb[flat_index([f[x] for x in args], b.size)]:
                return Check.failed(s, args)
    return Check.passed()


def identity_homomorphism(a: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(a, a, tuple(a.elements))


def compose(g: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """The map ``g . f``."""
    return tuple(g[y] for y in f)


def generated_subalgebra(a: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    closed = set(seed)
    for x in closed:
        if not 0 <= x < a.size:
            raise ValueError(f"seed element {x} outside carrier")
    while True:
        new = set()
        for _, k, t in a.operations():
            for args in product(sorted(closed), repeat=k):
                y = t[flat_index(args, a.size)]
                if y not in closed:
                    new.add(y)
        if not new:
            return frozenset(closed)
        closed |= new


def subalgebra(a: FiniteAlgebra, subset: Iterable[int]) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """The algebra carried by a closed subset, plus its inclusion map.

    Local element ``i`` is the ``i``-th smallest member of ``subset``.
    """
    members = tuple(sorted(set(subset)))
    local = {x: i for i, x in enumerate(members)}
    m = len(members)
    tables = []
    for _, k, t in a.operations():
        row = []
        for args in tuples(m, k):
            y = t[flat_index([members[i] for i in args], a.size)]
            if y not in local:
                raise ValueError(f"subset {members} is not closed")
            row.append(local[y])
        tables.append(tuple(row))
    return FiniteAlgebra(a.signature, m, tuple(tables)), members


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if x < y:
            x, y = y, x
        self.parent[x] = y
        return True


def canonical_labels(labels: Sequence) -> tuple[int, ...]:
    """Relabel blocks 0, 1, ... in order of their least member."""
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    algebra: FiniteAlgebra
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.algebra.size:
            raise ValueError("partition must label every carrier element")
        object.__setattr__(self, "labels", canonical_labels(self.labels))

    @classmethod
    def from_blocks(cls, a: FiniteAlgebra, blocks: Iterable[Iterable[int]]) -> Congruence:
        labels = [None] * a.size
        for b, block in enumerate(blocks):
            for x in block:
                if labels[x] is not None:
                    raise ValueError(f"element {x} in two blocks")
                labels[x] = b
        if any(lab is None for lab in labels):
            raise ValueError("blocks do not cover the carrier")
        return cls(a, tuple(labels))

    @classmethod
    def identity(cls, a: FiniteAlgebra) -> Congruence:
        return cls(a, tuple(a.elements))

    @classmethod
    def total(cls, a: FiniteAlgebra) -> Congruence:
        return cls(a, (0,) * a.size)

    @property
    def num_blocks(self) -> int:
        return max(self.labels, default=-1) + 1

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, lab in enumerate(self.labels):
            out[lab].append(x)
        return [tuple(b) for b in out]

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def refines(self, other: Congruence) -> bool:
        return all(self.labels[x] != self.labels[y] or other.labels[x] == other.labels[y]
                   for x in self.algebra.elements for y in self.algebra.elements)


def check_compatible(a: FiniteAlgebra, labels: Sequence[int]) -> Check:
    """Compatibility of a partition with every operation of ``a``."""
    n = a.size
    for s, k, t in a.operations():
        for pos in range(k):
            for args in tuples(n, k):
                x = args[pos]
                for y in range(x + 1, n):
                    if labels[x] != labels[y]:
                        continue
                    alt = args[:pos] + (y,) + args[pos + 1:]
                    if labels[t[flat_index(args, n)]] != labels[t[flat_index(alt, n)]]:
                        return Check.failed(s, (args, alt))
    return Check.passed()


def generated_congruence(a: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``.

    Union-find seeded with the pairs; every pair that enters the relation is
    pushed through all one-slot translations of the basic operations until no
    new merges happen.
    """
    n = a.size
    uf = UnionFind(n)
    work: deque[tuple[int, int]] = deque()
    for x, y in pairs:
        if uf.union(x, y):
            work.append((x, y))
    ops = list(a.operations())
    while work:
        x, y = work.popleft()
        for _, k, t in ops:
            for pos in range(k):
                for rest in tuples(n, k - 1):
                    left = rest[:pos] + (x,) + rest[pos:]
                    right = rest[:pos] + (y,) + rest[pos:]
                    u, v = t[flat_index(left, n)], t[flat_index(right, n)]
                    if uf.union(u, v):
                        work.append((u, v))
    return Congruence(a, tuple(uf.find(x) for x in range(n)))


def quotient_algebra(a: FiniteAlgebra, phi: Congruence) -> tuple[FiniteAlgebra, Homomorphism]:
    check = check_compatible(a, phi.labels)
    if not check:
        raise NotACongruence(str(check))
    reps = [b[0] for b in phi.blocks()]
    m = len(reps)
    tables = []
    for _, k, t in a.operations():
        tables.append(tuple(phi.labels[t[flat_index([reps[i] for i in args], a.size)]]
                            for args in tuples(m, k)))
    q = FiniteAlgebra(a.signature, m, tuple(tables))
    pr = Homomorphism(a, q, phi.labels)
    assert check_homomorphism(pr.map, a, q)
    return q, pr


def factor_map(a: FiniteAlgebra, phi: Congruence, psi: Congruence) -> Homomorphism:
    """The map ``A/phi -> A/psi`` through which ``pr_psi`` factors."""
    if not phi.refines(psi):
        raise NotRefinement("phi is not contained in psi")
    qphi, _ = quotient_algebra(a, phi)
    qpsi, _ = quotient_algebra(a, psi)
    m = tuple(psi.labels[b[0]] for b in phi.blocks())
    return Homomorphism(qphi, qpsi, m)


def power_algebra(a: FiniteAlgebra, k: int) -> FiniteAlgebra:
    """Coordinatewise ``k``-th power; element ``i`` is the ``i``-th tuple in lex order."""
    if k < 1:
        raise ValueError("power exponent must be positive")
    n = a.size
    points = list(tuples(n, k))
    m = len(points)
    tables = []
    for _, ar, t in a.operations():
        row = []
        for args in tuples(m, ar):
            coords = [points[i] for i in args]
            row.append(flat_index([t[flat_index([c[j] for c in coords], n)] for j in range(k)], n))
        tables.append(tuple(row))
    return FiniteAlgebra(a.signature, m, tuple(tables))


def projection_map(n: int, k: int, coordinate: int) -> tuple[int, ...]:
    return tuple(p[coordinate] for p in tuples(n, k))


def all_maps(n: int, m: int) -> Iterator[tuple[int, ...]]:
    return product(range(m), repeat=n)

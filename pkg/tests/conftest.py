from __future__ import annotations

from functools import lru_cache
from itertools import product
from pathlib import Path

import pytest
from hypothesis import strategies as st

from plonka.core import FiniteAlgebra, Signature, tuples
from plonka.semilattice import SupSemilattice, chain, validate_ssl
from plonka.systems import InductiveSystem, homomorphisms, validate_indsys

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "plonka" / "fixtures"

SIG2 = Signature.of(s=2)
SIG1 = Signature.of(s=1)


def const_algebra(n: int, value: int = 0, sig: Signature = SIG2) -> FiniteAlgebra:
    return FiniteAlgebra.from_functions(sig, n, {s: (lambda *a: value) for s in sig.names})


def two_chain_system() -> InductiveSystem:
    """A0 = {a}, A1 = {b, c}, s constantly b, f01(a) = b."""
    return InductiveSystem.build(chain(2), SIG2, (const_algebra(1), const_algebra(2)),
                                 {(0, 1): (0,)})


def vee() -> SupSemilattice:
    """Two atoms 0, 1 below a top 2."""
    return SupSemilattice.from_function(3, lambda x, y: x if x == y else 2)


def meet_table(n: int) -> tuple[int, ...]:
    return tuple(min(x, y) for x, y in tuples(n, 2))


def left_zero(n: int) -> tuple[int, ...]:
    return tuple(x for x, _ in tuples(n, 2))


def right_zero(n: int) -> tuple[int, ...]:
    return tuple(y for _, y in tuples(n, 2))


# small binary algebras used as fibers
FIBER_POOL = (
    const_algebra(1),
    const_algebra(2, 0),
    FiniteAlgebra.from_functions(SIG2, 2, {"s": max}),
    FiniteAlgebra.from_functions(SIG2, 2, {"s": lambda x, y: x}),
    FiniteAlgebra.from_functions(SIG2, 2, {"s": lambda x, y: 1 - x}),
)


def brute_systems(index: SupSemilattice, fibers) -> list[InductiveSystem]:
    """Every inductive system over ``index`` with the given fibers (brute force)."""
    pairs = [(i, j) for i, j in index.comparable_pairs() if i != j]
    options = [homomorphisms(fibers[i], fibers[j]) for i, j in pairs]
    out = []
    for choice in product(*options):
        sys = InductiveSystem.build(index, SIG2, fibers, dict(zip(pairs, choice)))
        if validate_indsys(sys):
            out.append(sys)
    return out


@lru_cache(maxsize=None)
def system_corpus() -> tuple[InductiveSystem, ...]:
    """Deterministic systems with index <= 3 elements and fibers of size 1 or 2."""
    out: list[InductiveSystem] = []
    indexes = [chain(1), chain(2), chain(3), vee()]
    for s in indexes:
        for combo in product(range(len(FIBER_POOL)), repeat=s.size):
            fibers = tuple(FIBER_POOL[c] for c in combo)
            if sum(a.size for a in fibers) > 5:
                continue
            systems = brute_systems(s, fibers)
            out.extend(systems[:1])
    # keep the corpus small but varied: every index shape is represented
    picked = []
    for s in indexes:
        mine = [x for x in out if x.index == s]
        step = max(1, len(mine) // 6)
        picked.extend(mine[::step][:6])
    return tuple(picked)


def corpus_ids():
    return [f"sys{k}" for k in range(len(system_corpus()))]


@st.composite
def small_algebras(draw, max_size: int = 3, sig: Signature = SIG2):
    n = draw(st.integers(1, max_size))
    tables = []
    for _, k in sig:
        tables.append(tuple(draw(st.lists(st.integers(0, n - 1), min_size=n ** k,
                                          max_size=n ** k))))
    return FiniteAlgebra(sig, n, tuple(tables))


@lru_cache(maxsize=None)
def semilattices_upto(n: int) -> tuple[SupSemilattice, ...]:
    from plonka.semilattice import all_semilattices
    return tuple(s for m in range(1, n + 1) for s in all_semilattices(m) if validate_ssl(s))


# ---- acceptance summary: one line per criterion

ACCEPTANCE: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    detail = dict(item.user_properties).get("detail", "")
    if report.failed:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else detail
    ACCEPTANCE[mark.args[0]] = f"{'PASS' if report.passed else 'FAIL'}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n}: {ACCEPTANCE[n]}")

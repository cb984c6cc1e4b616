"""Terms over a signature, their evaluation, parsing and bounded enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence, Union

from .core import FiniteAlgebra, Signature, flat_index
from .errors import ArityError, ParseError, SignatureMismatch


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Op:
    symbol: str
    args: tuple[Term, ...] = ()


Term = Union[Var, Op]


def height(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(height(c) for c in t.args)


def format_term(t: Term, varnames: Sequence[str] | None = None) -> str:
    if isinstance(t, Var):
        return varnames[t.index] if varnames else f"x{t.index}"
    if not t.args:
        return t.symbol
    return f"{t.symbol}(" + ",".join(format_term(c, varnames) for c in t.args) + ")"


def parse_term(text: str, sig: Signature, varnames: Sequence[str]) -> Term:
    """Parse prefix notation ``f(t, ..., t)``; whitespace is ignored.

    Constants may be written bare or with empty parentheses.
    """
    vars_ = {v: i for i, v in enumerate(varnames)}
    arity = dict(sig.symbols)
    clash = set(vars_) & set(arity)
    if clash:
        raise ValueError(f"names used both as variable and symbol: {sorted(clash)}")
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def name():
        nonlocal pos
        skip()
        start = pos
        while pos < len(text) and not text[pos].isspace() and text[pos] not in "(),":
            pos += 1
        if start == pos:
            raise ParseError("expected a name", position=start)
        return text[start:pos], start

    def term() -> Term:
        nonlocal pos
        ident, at = name()
        skip()
        has_parens = pos < len(text) and text[pos] == "("
        if ident in vars_:
            if has_parens:
                raise ParseError(f"variable {ident!r} applied to arguments", position=pos)
            return Var(vars_[ident])
        if ident not in arity:
            raise ParseError(f"unknown name {ident!r}", position=at)
        args: list[Term] = []
        if has_parens:
            pos += 1
            skip()
            if pos < len(text) and text[pos] == ")":
                pos += 1
            else:
                while True:
                    args.append(term())
                    skip()
                    if pos >= len(text):
                        raise ParseError("unterminated argument list", position=pos)
                    if text[pos] == ",":
                        pos += 1
                        continue
                    if text[pos] == ")":
                        pos += 1
                        break
                    raise ParseError(f"unexpected {text[pos]!r}", position=pos)
        if len(args) != arity[ident]:
            raise ArityError(ident, arity[ident], len(args))
        return Op(ident, tuple(args))

    t = term()
    skip()
    if pos != len(text):
        raise ParseError(f"trailing input {text[pos:]!r}", position=pos)
    return t


def evaluate_term(t: Term, a: FiniteAlgebra, env: Sequence[int] | Mapping[int, int],
                  sig: Signature | None = None) -> int:
    """Fold ``t`` into ``a``: variables through ``env``, symbols through tables."""
    if sig is not None and sig != a.signature:
        raise SignatureMismatch(f"{sig} vs {a.signature}")
    if isinstance(t, Var):
        return env[t.index]
    vals = [evaluate_term(c, a, env) for c in t.args]
    try:
        table = a.table(t.symbol)
    except ValueError:
        raise SignatureMismatch(f"symbol {t.symbol!r} not in {a.signature}") from None
    return table[flat_index(vals, a.size)]


def enumerate_terms(sig: Signature, nvars: int, depth: int) -> list[Term]:
    """All terms of height at most ``depth``.

    Order: by height; within a height, variables first, then symbols in
    signature order with children in lexicographic order of their position
    in the list so far.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    seen: list[Term] = [Var(i) for i in range(nvars)] + [Op(s) for s, k in sig if k == 0]
    for h in range(1, depth + 1):
        new: list[Term] = []
        for s, k in sig:
            if k == 0:
                continue
            for args in product(seen, repeat=k):
                if max(height(c) for c in args) == h - 1:
                    new.append(Op(s, tuple(args)))
        seen = seen + new
    return seen

"""Exception types and the pass/fail result used by every law checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


def format_witness(w: Any) -> str:
    if isinstance(w, (tuple, list)):
        return "(" + ",".join(format_witness(x) for x in w) + ")"
    return str(w)


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive law check.

    Truthy iff the check passed. On failure ``law`` names the violated
    condition and ``witness`` holds the first offending argument tuple.
    """

    ok: bool
    law: str | None = None
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        s = f"{self.law} at {format_witness(self.witness)}"
        if self.detail:
            s += f": {self.detail}"
        return s

    @classmethod
    def passed(cls) -> Check:
        return cls(True)

    @classmethod
    def failed(cls, law: str, witness: Any = None, detail: str = "") -> Check:
        return cls(False, law, witness, detail)


class PlonkaError(Exception):
    pass


class SignatureMismatch(PlonkaError):
    pass


class ConstantInSignature(PlonkaError):
    pass


class NotACongruence(PlonkaError):
    pass


class NotRefinement(PlonkaError):
    pass


class NotAHomomorphism(PlonkaError):
    pass


class IterateMismatch(PlonkaError):
    pass


class NotALnb(PlonkaError):
    pass


class TargetNotASemilatticeBand(PlonkaError):
    pass


class NotAPlonkaAlgebra(PlonkaError):
    pass


class NotAPlonkaMorphism(PlonkaError):
    pass


class CarrierTooLarge(PlonkaError):
    pass


class SearchSpaceTooLarge(PlonkaError):
    pass


class InvalidSystem(PlonkaError):
    pass


class InvalidMorphism(PlonkaError):
    pass


class CompositionMismatch(PlonkaError):
    pass


class NotResiduated(PlonkaError):
    pass


class EmptyFiber(PlonkaError):
    pass


class TargetMismatch(PlonkaError):
    pass


class ArityError(PlonkaError):
    def __init__(self, symbol: str, expected: int, got: int):
        super().__init__(f"symbol {symbol!r} expects {expected} argument(s), got {got}")
        self.symbol = symbol
        self.expected = expected
        self.got = got


class ParseError(PlonkaError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 position: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif position is not None:
            where = f"position {position}: "
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column
        self.position = position


class ValidationError(PlonkaError):
    def __init__(self, check: Check, what: str = ""):
        prefix = f"{what}: " if what else ""
        super().__init__(prefix + str(check))
        self.check = check

"""Propositional formula AST, text parser and printer.

Grammar (ASCII; the Unicode connectives are accepted as synonyms)::

    iff     := implies ( "<->" implies )*          left-associative
    implies := or ( "->" implies )?                right-associative
    or      := and ( "|" and )*
    and     := unary ( "&" unary )*
    unary   := ("!" | "~") unary | atom | "true" | "false" | "(" iff ")"
    atom    := [A-Za-z][A-Za-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class FormulaError(ValueError):
    """Base class for formula construction and parsing errors."""


class ParseError(FormulaError):
    def __init__(self, message: str, text: str, position: int, expected: tuple[str, ...] = ()):
        self.text = text
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)

    def caret(self) -> str:
        """Two-line diagnostic pointing at the offending column."""
        return f"{self.text}\n{' ' * self.position}^"


class UnknownAtomError(FormulaError):
    def __init__(self, atom: str, position: int | None = None):
        self.atom = atom
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown atom {atom!r}{where}")


class ReservedAtomError(FormulaError):
    def __init__(self, atom: str, prefix: str, position: int | None = None):
        self.atom = atom
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"atom {atom!r} uses the reserved prefix {prefix!r}{where}")


class Formula:
    """Base class of the AST. Nodes are immutable and compare structurally."""

    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def implies(self, other: Formula) -> Formula:
        return Implies(self, other)

    def iff(self, other: Formula) -> Formula:
        return Iff(self, other)

    def atoms(self) -> frozenset[str]:
        return frozenset(_atoms(self))

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


TOP = Top()
BOTTOM = Bottom()

_BINARY = (And, Or, Implies, Iff)


def _atoms(f: Formula) -> Iterator[str]:
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node.name
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, _BINARY):
            stack.append(node.right)
            stack.append(node.left)


def conjoin(parts: list[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    if not parts:
        return TOP
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disjoin(parts: list[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is ``false``."""
    if not parts:
        return BOTTOM
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def map_atoms(f: Formula, fn) -> Formula:
    """Rebuild ``f`` with every atom node replaced by ``fn(atom)``."""
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, Not):
        return Not(map_atoms(f.arg, fn))
    if isinstance(f, _BINARY):
        return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))
    return f


# ---------------------------------------------------------------- printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}

_UNICODE = {"not": "¬", And: " ∧ ", Or: " ∨ ", Implies: " → ", Iff: " ↔ ", Top: "⊤", Bottom: "⊥"}
_ASCII = {"not": "!", And: " & ", Or: " | ", Implies: " -> ", Iff: " <-> ", Top: "true", Bottom: "false"}


def to_text(f: Formula, ascii: bool = True) -> str:
    """Print with the fewest parentheses that re-parse to the same tree."""
    sym = _ASCII if ascii else _UNICODE
    return _show(f, sym)


def _show(f: Formula, sym: dict) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, (Top, Bottom)):
        return sym[type(f)]
    if isinstance(f, Not):
        inner = _show(f.arg, sym)
        if isinstance(f.arg, _BINARY):
            inner = f"({inner})"
        return sym["not"] + inner
    kind = type(f)
    prec = _PREC[kind]
    left, right = _show(f.left, sym), _show(f.right, sym)
    lp = _PREC.get(type(f.left), 9)
    rp = _PREC.get(type(f.right), 9)
    if kind is Implies:
        # right-associative
        if lp <= prec:
            left = f"({left})"
        if rp < prec:
            right = f"({right})"
    else:
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
    return left + sym[kind] + right


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<iff><->|↔)|(?P<imp>->|→)|(?P<and>&|∧)|(?P<or>\||∨)|(?P<not>!|~|¬)"
    r"|(?P<lpar>\()|(?P<rpar>\))|(?P<top>⊤)|(?P<bot>⊥)|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "name" and value in ("true", "false"):
            kind = "top" if value == "true" else "bot"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, atoms, reserved_prefix: str | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.atoms = atoms
        self.reserved_prefix = reserved_prefix

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"unexpected {found}", self.text, pos, expected)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek()[0] != "eof":
            self.fail(("'&'", "'|'", "'->'", "'<->'", "end of input"))
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.peek()[0] == "iff":
            self.take()
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.peek()[0] == "imp":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "or":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "and":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "not":
            self.take()
            return Not(self.unary())
        if kind == "top":
            self.take()
            return TOP
        if kind == "bot":
            self.take()
            return BOTTOM
        if kind == "lpar":
            self.take()
            f = self.iff()
            if self.peek()[0] != "rpar":
                self.fail(("')'",))
            self.take()
            return f
        if kind == "name":
            self.take()
            if self.reserved_prefix and value.startswith(self.reserved_prefix):
                raise ReservedAtomError(value, self.reserved_prefix, pos)
            if value.startswith("_"):
                raise ParseError(f"invalid atom {value!r}", self.text, pos, ("atom",))
            if self.atoms is not None and value not in self.atoms:
                raise UnknownAtomError(value, pos)
            return Atom(value)
        self.fail(("atom", "'true'", "'false'", "'!'", "'('"))


def parse_formula(text: str, atoms=None, reserved_prefix: str | None = "_x") -> Formula:
    """Parse ``text``; when ``atoms`` is given every atom must belong to it."""
    return _Parser(text, None if atoms is None else frozenset(atoms), reserved_prefix).parse()

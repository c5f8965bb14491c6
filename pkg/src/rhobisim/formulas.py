"""Modal formula syntax trees and the text syntax used on the command line.

Grammar (loosest binding first)::

    phi ::= phi '|' phi
          | phi '&' phi
          | phi '+' phi
          | '!' phi | '<' a '>' phi | '[' a ']' phi | 'box' phi | 'dia' phi
          | r '*' phi
          | 'T' | 'F' | '0' | ident | '(' phi ')'

``r`` is an integer or ``p/q``; ``ident`` is an atomic proposition (for the
linear logics the termination predicate is written ``p``).  ``box``/``dia``
are the unlabelled modalities, valid whenever the model has one label.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class FormulaSyntaxError(ValueError):
    pass


class Formula:
    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def depth(self) -> int:
        own = 1 if isinstance(self, (Dia, Box)) else 0
        return own + max((c.depth() for c in self.children()), default=0)


@dataclass(frozen=True)
class Top(Formula):
    def __str__(self):
        return "T"


@dataclass(frozen=True)
class Bot(Formula):
    def __str__(self):
        return "F"


@dataclass(frozen=True)
class Zero(Formula):
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Dia(Formula):
    label: str | None
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"dia {self.arg}" if self.label is None else f"<{self.label}>{self.arg}"


@dataclass(frozen=True)
class Box(Formula):
    label: str | None
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"box {self.arg}" if self.label is None else f"[{self.label}]{self.arg}"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"!{self.arg}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Scale(Formula):
    coeff: Fraction
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self):
        c = self.coeff
        num = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        return f"{num} * {self.arg}"


@dataclass(frozen=True)
class Add(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} + {self.right})"


def conj(fs: list[Formula]) -> Formula:
    if not fs:
        return Top()
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(fs: list[Formula]) -> Formula:
    if not fs:
        return Bot()
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def word(labels, tail: Formula) -> Formula:
    """<a1>...<ak> tail."""
    out = tail
    for a in reversed(list(labels)):
        out = Dia(a, out)
    return out


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern always matches
            raise FormulaSyntaxError(f"cannot tokenize at {pos}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        t = self.peek()
        if t is None or (expect is not None and t != expect):
            raise FormulaSyntaxError(f"expected {expect or 'a token'}, got {t!r}")
        self.i += 1
        return t

    def parse(self) -> Formula:
        f = self.disj()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}")
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.sum()
        while self.peek() == "&":
            self.take()
            f = And(f, self.sum())
        return f

    def sum(self):
        f = self.unary()
        while self.peek() == "+":
            self.take()
            f = Add(f, self.unary())
        return f

    def label(self, close: str) -> str:
        t = self.take()
        if not re.fullmatch(r"[A-Za-z0-9_]+", t):
            raise FormulaSyntaxError(f"bad label {t!r}")
        self.take(close)
        return t

    def unary(self):
        t = self.peek()
        if t == "!":
            self.take()
            return Not(self.unary())
        if t == "<":
            self.take()
            return Dia(self.label(">"), self.unary())
        if t == "[":
            self.take()
            return Box(self.label("]"), self.unary())
        if t == "box":
            self.take()
            return Box(None, self.unary())
        if t == "dia":
            self.take()
            return Dia(None, self.unary())
        if t is not None and t[0].isdigit() and self.peek(1) == "*":
            self.take()
            self.take("*")
            return Scale(Fraction(t), self.unary())
        if t == "-" and self.peek(1) is not None and self.peek(1)[0].isdigit() and self.peek(2) == "*":
            self.take()
            num = self.take()
            self.take("*")
            return Scale(-Fraction(num), self.unary())
        return self.atom()

    def atom(self):
        t = self.take()
        if t == "(":
            f = self.disj()
            self.take(")")
            return f
        if t == "T":
            return Top()
        if t == "F":
            return Bot()
        if t == "0":
            return Zero()
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t) and t not in ("box", "dia"):
            return Atom(t)
        raise FormulaSyntaxError(f"unexpected {t!r}")


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()

"""Formulas of 2Int: AST, concrete syntax, substitution, strong-negation expansion.

Concrete syntax (ASCII, with Unicode aliases accepted on input)::

    T  F  ~A  A & B  A | B  A -> B  A -< B

``~`` binds tightest, then ``&``, then ``|``; ``->`` and ``-<`` are loosest.
``&`` and ``|`` associate to the left, ``->`` and ``-<`` to the right, and
``->`` may not be mixed with ``-<`` at the same level without parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not IDENT.fullmatch(self.name) or self.name in ("T", "F"):
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Or:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Imp:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Coimp:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Snot:
    arg: Formula


Formula = Union[Atom, Top, Bot, And, Or, Imp, Coimp, Snot]
BINARY = (And, Or, Imp, Coimp)

IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")

SYMBOLS = {And: "&", Or: "|", Imp: "->", Coimp: "-<"}


class ParseError(ValueError):
    """Malformed formula text.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"at byte {offset}: {detail}")


# ---------------------------------------------------------------- lexer

_ALIASES = {
    "⊤": "T", "⊥": "F", "∧": "&", "∨": "|", "→": "->", "⤙": "-<",
    "∼": "~", "~": "~", "&": "&", "|": "|", "(": "(", ")": ")",
}


def _tokenize(text):
    """Return a list of (kind, value, byte_offset); kind is 'op', 'id' or 'end'."""
    tokens = []
    i = 0
    n = len(text)
    byte = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            byte += len(ch.encode())
            continue
        if text.startswith("->", i) or text.startswith("-<", i):
            tokens.append(("op", text[i:i + 2], byte))
            i += 2
            byte += 2
            continue
        if ch in _ALIASES:
            tokens.append(("op", _ALIASES[ch], byte))
            i += 1
            byte += len(ch.encode())
            continue
        m = IDENT.match(text, i)
        if m:
            word = m.group()
            if word in ("T", "F"):
                tokens.append(("op", word, byte))
            else:
                tokens.append(("id", word, byte))
            i = m.end()
            byte += len(word)
            continue
        raise ParseError(f"unexpected character {ch!r}", byte,
                         ("atom", "T", "F", "~", "("))
    tokens.append(("end", "", byte))
    return tokens


# ---------------------------------------------------------------- parser

_PRIMARY_START = ("atom", "T", "F", "~", "(")


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, expected):
        raise ParseError(message, self.peek()[2], expected)

    def formula(self):
        operands = [self.disjunction()]
        arrows = []
        while self.peek()[0] == "op" and self.peek()[1] in ("->", "-<"):
            tok = self.take()
            if arrows and tok[1] != arrows[0][1]:
                raise ParseError("cannot mix '->' and '-<' without parentheses",
                                 tok[2], (arrows[0][1], "("))
            arrows.append(tok)
            operands.append(self.disjunction())
        f = operands.pop()
        cls = Imp if arrows and arrows[0][1] == "->" else Coimp
        while operands:
            f = cls(operands.pop(), f)
        return f

    def disjunction(self):
        left = self.conjunction()
        while self.peek()[:2] == ("op", "|"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek()[:2] == ("op", "&"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "~":
            self.take()
            return Snot(self.unary())
        return self.primary()

    def primary(self):
        kind, val, _ = self.peek()
        if kind == "id":
            self.take()
            return Atom(val)
        if kind == "op" and val == "T":
            self.take()
            return Top()
        if kind == "op" and val == "F":
            self.take()
            return Bot()
        if kind == "op" and val == "(":
            self.take()
            inner = self.formula()
            if self.peek()[:2] != ("op", ")"):
                self.fail("unclosed parenthesis", (")", "&", "|", "->", "-<"))
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of input", _PRIMARY_START)
        self.fail(f"unexpected token {val!r}", _PRIMARY_START)


def parse(text: str) -> Formula:
    """Parse formula text; raises ParseError on malformed input."""
    p = _Parser(text)
    f = p.formula()
    kind, val, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", off,
                         ("end of input", "&", "|", "->", "-<"))
    return f


# ---------------------------------------------------------------- printer

_LEVEL = {Snot: 3, And: 2, Or: 1, Imp: 0, Coimp: 0}


def _level(f):
    return _LEVEL.get(type(f), 4)


def _wrap(child, parent, side):
    """Text for `child` as the `side` operand of binary `parent`."""
    text = to_text(child)
    if not isinstance(child, BINARY):
        return text
    pc, cc = type(parent), type(child)
    if _level(child) < _level(parent):
        need = True
    elif _level(child) > _level(parent):
        # & inside | is bracketed for readability
        need = pc is Or and cc is And
    elif pc in (Imp, Coimp):
        # only the right operand may continue the same arrow chain
        need = not (side == "r" and cc is pc)
    else:
        need = side == "r"
    return f"({text})" if need else text


def to_text(f: Formula) -> str:
    """Render `f` in ASCII concrete syntax; parse(to_text(f)) == f."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Snot):
        arg = to_text(f.arg)
        if isinstance(f.arg, BINARY):
            arg = f"({arg})"
        return "~" + arg
    if isinstance(f, BINARY):
        return f"{_wrap(f.l, f, 'l')} {SYMBOLS[type(f)]} {_wrap(f.r, f, 'r')}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- operations

def substitute(f: Formula, p: str, g: Formula) -> Formula:
    """Replace every occurrence of atom `p` in `f` by `g`."""
    if isinstance(f, Atom):
        return g if f.name == p else f
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Snot):
        return Snot(substitute(f.arg, p, g))
    return type(f)(substitute(f.l, p, g), substitute(f.r, p, g))


def definiens(a: Formula) -> Formula:
    """(a & (a -> (a -< a))) | ((a -> a) -< a), the formula standing in for ~a."""
    return Or(And(a, Imp(a, Coimp(a, a))), Coimp(Imp(a, a), a))


def expand_strong_negation(f: Formula) -> Formula:
    """Rewrite every ~X (innermost first) into definiens(X)."""
    if isinstance(f, Snot):
        return definiens(expand_strong_negation(f.arg))
    if isinstance(f, BINARY):
        return type(f)(expand_strong_negation(f.l), expand_strong_negation(f.r))
    return f


def has_snot(f: Formula) -> bool:
    if isinstance(f, Snot):
        return True
    if isinstance(f, BINARY):
        return has_snot(f.l) or has_snot(f.r)
    return False


def subformulas(f: Formula) -> set:
    out = {f}
    if isinstance(f, Snot):
        out |= subformulas(f.arg)
    elif isinstance(f, BINARY):
        out |= subformulas(f.l) | subformulas(f.r)
    return out


def size(f: Formula) -> int:
    if isinstance(f, Snot):
        return 1 + size(f.arg)
    if isinstance(f, BINARY):
        return 1 + size(f.l) + size(f.r)
    return 1


def depth(f: Formula) -> int:
    if isinstance(f, Snot):
        return 1 + depth(f.arg)
    if isinstance(f, BINARY):
        return 1 + max(depth(f.l), depth(f.r))
    return 0


_ORDER = {Bot: 0, Top: 1, Atom: 2, Snot: 3, And: 4, Or: 5, Imp: 6, Coimp: 7}


def sort_key(f: Formula):
    """Total order on formulas: by size, then constructor, then children."""
    if isinstance(f, Atom):
        return (1, 2, f.name)
    if isinstance(f, (Top, Bot)):
        return (1, _ORDER[type(f)])
    if isinstance(f, Snot):
        return (size(f), 3, sort_key(f.arg))
    return (size(f), _ORDER[type(f)], sort_key(f.l), sort_key(f.r))

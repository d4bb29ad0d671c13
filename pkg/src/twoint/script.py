"""The ``.2int`` proof-script format.

A script is an optional judgment followed by one tree expression::

    ; comments run to end of line
    (judgment (gamma) (delta a) proof "(a & (a -> (a -< a))) | ((a -> a) -< a)")
    (rule orI2+ "(a & (a -> (a -< a))) | ((a -> a) -< a)"
      (rule coimpI+ "(a -> a) -< a"
        (rule impI+ :label 1 "a -> a" (assume* 1 a))
        (counter a)))

Leaves are ``(assume f)``, ``(counter f)``, ``(assume* n f)`` and
``(counter* n f)``.  Nodes are ``(rule name [:dashed m] [:label n] [:mode m]
conclusion premise...)``.  A formula is a bare symbol (``a``, ``T``,
``~a``) or a double-quoted string.  ``:mode`` is only needed when a node's
line differs from what its rule concludes; the printer emits it in that case
alone, so every tree survives a print/parse roundtrip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import formula as fm
from .derived import DerivedRuleId, TEMPLATES
from .kernel import (
    DASHED, RULES, Judgment, LeafCtx, LeafDischarged, Mode, Node, RuleId,
)

RULE_NAMES = {r.value: r for r in RuleId}
RULE_NAMES.update({r.value: r for r in DerivedRuleId})


class ScriptError(ValueError):
    """Malformed script; `line` and `column` are 1-based."""

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class UnknownRuleName(ScriptError):
    pass


# ---------------------------------------------------------------- s-expressions

@dataclass(frozen=True)
class Sym:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class Str:
    text: str
    line: int
    col: int


@dataclass
class SList:
    items: list
    line: int
    col: int


_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|"|[^\s()";]+')


def read_sexprs(text):
    """Parse all top-level s-expressions in `text`."""
    stack = [SList([], 1, 1)]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        col = m.start() - line_start + 1
        if tok[0].isspace() or tok[0] == ";":
            pass
        elif tok == "(":
            stack.append(SList([], line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ScriptError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].items.append(done)
        elif tok == '"':
            raise ScriptError("unterminated string", line, col)
        elif tok[0] == '"':
            body = re.sub(r"\\(.)", r"\1", tok[1:-1])
            stack[-1].items.append(Str(body, line, col))
        else:
            stack[-1].items.append(Sym(tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = m.start() + tok.rindex("\n") + 1
    if len(stack) > 1:
        s = stack[-1]
        raise ScriptError("unclosed '('", s.line, s.col)
    return stack[0].items


# ---------------------------------------------------------------- parsing

def _formula(x):
    if isinstance(x, SList):
        raise ScriptError("expected a formula (symbol or string), found a list", x.line, x.col)
    try:
        return fm.parse(x.text)
    except fm.ParseError as e:
        raise ScriptError(f"bad formula {x.text!r}: {e}", x.line, x.col) from None


def _mode(x):
    if isinstance(x, Sym) and x.text in ("proof", "dual"):
        return Mode(x.text)
    raise ScriptError("expected 'proof' or 'dual'", getattr(x, "line", 0), getattr(x, "col", 0))


def _label(x):
    if isinstance(x, Sym) and x.text.isdigit() and int(x.text) > 0:
        return int(x.text)
    raise ScriptError("expected a positive integer label", getattr(x, "line", 0), getattr(x, "col", 0))


def _head(x):
    if not isinstance(x, SList) or not x.items or not isinstance(x.items[0], Sym):
        raise ScriptError("expected a form like (name ...)", getattr(x, "line", 0), getattr(x, "col", 0))
    return x.items[0].text


def parse_judgment_sexpr(x) -> Judgment:
    if _head(x) != "judgment" or len(x.items) != 5:
        raise ScriptError("judgment must be (judgment (gamma f ...) (delta f ...) proof|dual f)",
                          x.line, x.col)
    _, g, d, mode, goal = x.items
    if _head(g) != "gamma" or _head(d) != "delta":
        raise ScriptError("judgment needs (gamma ...) then (delta ...)", x.line, x.col)
    return Judgment({_formula(f) for f in g.items[1:]}, {_formula(f) for f in d.items[1:]},
                    _mode(mode), _formula(goal))


def _tree(x):
    head = _head(x)
    args = x.items[1:]
    if head in ("assume", "counter"):
        if len(args) != 1:
            raise ScriptError(f"({head} f) takes one formula", x.line, x.col)
        return LeafCtx(_formula(args[0]), Mode.PROOF if head == "assume" else Mode.DUAL)
    if head in ("assume*", "counter*"):
        if len(args) != 2:
            raise ScriptError(f"({head} label f) takes a label and a formula", x.line, x.col)
        mode = Mode.PROOF if head == "assume*" else Mode.DUAL
        return LeafDischarged(_formula(args[1]), mode, _label(args[0]))
    if head != "rule":
        raise ScriptError(f"unknown form {head!r}", x.line, x.col)
    if not args or not isinstance(args[0], Sym):
        raise ScriptError("(rule name ...) needs a rule name", x.line, x.col)
    name = args[0]
    rule = RULE_NAMES.get(name.text)
    if rule is None:
        raise UnknownRuleName(f"unknown rule name {name.text!r}", name.line, name.col)
    rest = args[1:]
    opts = {}
    while rest and isinstance(rest[0], Sym) and rest[0].text.startswith(":"):
        key = rest[0].text
        if key not in (":dashed", ":label", ":mode") or len(rest) < 2:
            raise ScriptError(f"bad option {key!r}", rest[0].line, rest[0].col)
        if key in opts:
            raise ScriptError(f"option {key} given twice", rest[0].line, rest[0].col)
        opts[key] = _label(rest[1]) if key == ":label" else _mode(rest[1])
        rest = rest[2:]
    if not rest:
        raise ScriptError("rule is missing its conclusion formula", x.line, x.col)
    conclusion = _formula(rest[0])
    premises = tuple(_tree(p) for p in rest[1:])
    dashed = opts.get(":dashed")
    mode = opts.get(":mode")
    if mode is None:
        mode = _default_mode(rule, dashed, premises)
    if dashed is None and isinstance(rule, RuleId) and RULES[rule].dashed:
        dashed = _infer_dashed(rule, mode, premises, opts, x)
    return Node(rule, conclusion, mode, premises, dashed, opts.get(":label"))


def _dashed_premise_modes(rule, premises):
    desc = RULES[rule]
    return [p.mode for line, p in zip(desc.premises, premises) if line.mode == DASHED]


def _infer_dashed(rule, mode, premises, opts, x):
    """Instantiation for a dashed rule written without :dashed.

    Taken from the first dashed premise (or the explicit :mode); if the
    premises disagree the checker reports DashedNonUniform.
    """
    if ":mode" in opts:
        return mode
    seen = _dashed_premise_modes(rule, premises)
    if seen:
        return seen[0]
    raise ScriptError(f"{rule.value} needs :dashed proof|dual (nothing to infer it from)",
                      x.line, x.col)


def _default_mode(rule, dashed, premises):
    if isinstance(rule, DerivedRuleId):
        return TEMPLATES[rule].conclusion_mode
    want = RULES[rule].conclusion.mode
    if want != DASHED:
        return want
    if dashed is not None:
        return dashed
    seen = _dashed_premise_modes(rule, premises)
    return seen[0] if seen else Mode.PROOF


def parse_script(text):
    """Parse a script into (judgment or None, tree)."""
    if text.startswith("﻿"):
        text = text[1:]
    forms = read_sexprs(text.replace("\r\n", "\n"))
    if not forms:
        raise ScriptError("empty script")
    judgment = None
    if isinstance(forms[0], SList) and forms[0].items and _head(forms[0]) == "judgment":
        judgment = parse_judgment_sexpr(forms[0])
        forms = forms[1:]
    if len(forms) != 1:
        where = forms[1] if len(forms) > 1 else None
        raise ScriptError("a script holds exactly one tree after the optional judgment",
                          getattr(where, "line", 0), getattr(where, "col", 0))
    return judgment, _tree(forms[0])


def parse_judgment(text) -> Judgment:
    """Judgment from an s-expression or the compact form ``a, b ; c |-+ goal``.

    In the compact form ``|-+`` asks for a proof and ``|--`` for a dual
    proof; either context may be empty.
    """
    text = text.strip()
    if text.startswith("("):
        forms = read_sexprs(text)
        if len(forms) != 1:
            raise ScriptError("expected a single (judgment ...) form")
        return parse_judgment_sexpr(forms[0])
    m = re.fullmatch(r"(.*?)\|-([+-])(.*)", text, re.S)
    if not m:
        raise ScriptError("expected 'gamma ; delta |-+ goal' or 'gamma ; delta |-- goal'")
    ctx, sign, goal = m.groups()
    gamma_text, sep, delta_text = ctx.partition(";")

    def fs(part):
        items = [p.strip() for p in part.split(",")]
        try:
            return {fm.parse(p) for p in items if p}
        except fm.ParseError as e:
            raise ScriptError(f"bad formula in context: {e}") from None

    try:
        g = fm.parse(goal)
    except fm.ParseError as e:
        raise ScriptError(f"bad goal formula: {e}") from None
    return Judgment(fs(gamma_text), fs(delta_text) if sep else set(),
                    Mode.PROOF if sign == "+" else Mode.DUAL, g)


# ---------------------------------------------------------------- printing

_BARE = re.compile(r"[A-Za-z0-9_~]+")


def formula_token(f) -> str:
    text = fm.to_text(f)
    if _BARE.fullmatch(text):
        return text
    return '"' + text + '"'


def judgment_text(j: Judgment) -> str:
    g = " ".join(formula_token(f) for f in sorted(j.gamma, key=fm.sort_key))
    d = " ".join(formula_token(f) for f in sorted(j.delta, key=fm.sort_key))
    gamma = f"(gamma {g})" if g else "(gamma)"
    delta = f"(delta {d})" if d else "(delta)"
    return f"(judgment {gamma} {delta} {j.mode.value} {formula_token(j.goal)})"


def tree_text(t, indent=0) -> str:
    pad = "  " * indent
    if isinstance(t, LeafCtx):
        return f"{pad}({'assume' if t.mode is Mode.PROOF else 'counter'} {formula_token(t.formula)})"
    if isinstance(t, LeafDischarged):
        kw = "assume*" if t.mode is Mode.PROOF else "counter*"
        return f"{pad}({kw} {t.label} {formula_token(t.formula)})"
    parts = [f"rule {t.rule.value}"]
    if t.dashed_mode is not None:
        parts.append(f":dashed {t.dashed_mode.value}")
    if t.label is not None:
        parts.append(f":label {t.label}")
    if t.mode is not _default_mode(t.rule, t.dashed_mode, t.premises):
        parts.append(f":mode {t.mode.value}")
    parts.append(formula_token(t.conclusion))
    head = pad + "(" + " ".join(parts)
    if not t.premises:
        return head + ")"
    body = "\n".join(tree_text(p, indent + 1) for p in t.premises)
    return head + "\n" + body + ")"


def print_script(tree, judgment=None) -> str:
    out = []
    if judgment is not None:
        out.append(judgment_text(judgment))
    out.append(tree_text(tree))
    return "\n".join(out) + "\n"

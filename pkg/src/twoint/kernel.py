"""Bilateral natural deduction for 2Int: rule catalog, proof trees, checker.

A derivation line is either a proof (single line) or a dual proof (double
line).  Four rules (orE+, andE-, botE+, topE-) carry dashed lines; a dashed
rule stands for two rules, one with every dashed line read as a single line
and one with every dashed line read as a double line.  A node of such a rule
records which reading it uses in ``dashed_mode``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .formula import And, Atom, Bot, Coimp, Formula, Imp, Or, Top, sort_key, to_text


class Mode(enum.Enum):
    PROOF = "proof"
    DUAL = "dual"

    @property
    def flipped(self):
        return Mode.DUAL if self is Mode.PROOF else Mode.PROOF


# Line mode of a dashed position in a rule schema.
DASHED = "dashed"


class RuleId(enum.Enum):
    AndIPos = "andI+"
    AndE1Pos = "andE1+"
    AndE2Pos = "andE2+"
    OrI1Pos = "orI1+"
    OrI2Pos = "orI2+"
    OrEPos = "orE+"
    ImpIPos = "impI+"
    ImpEPos = "impE+"
    CoimpIPos = "coimpI+"
    CoimpE1Pos = "coimpE1+"
    CoimpE2Pos = "coimpE2+"
    TopIPos = "topI+"
    BotEPos = "botE+"
    AndI1Neg = "andI1-"
    AndI2Neg = "andI2-"
    AndENeg = "andE-"
    OrINeg = "orI-"
    OrE1Neg = "orE1-"
    OrE2Neg = "orE2-"
    ImpINeg = "impI-"
    ImpE1Neg = "impE1-"
    ImpE2Neg = "impE2-"
    CoimpINeg = "coimpI-"
    CoimpENeg = "coimpE-"
    TopENeg = "topE-"
    BotINeg = "botI-"


# ---------------------------------------------------------------- schemas

@dataclass(frozen=True)
class Meta:
    """Schematic letter in a rule pattern."""
    name: str


A, B, C = Meta("A"), Meta("B"), Meta("C")


@dataclass(frozen=True)
class Line:
    shape: object
    mode: Union[Mode, str]


@dataclass(frozen=True)
class Discharge:
    kind: Mode  # PROOF for an assumption [X], DUAL for a counter-assumption
    shape: object
    premise: int


@dataclass(frozen=True)
class RuleDescriptor:
    id: RuleId
    premises: tuple
    conclusion: Line
    discharges: tuple = ()

    @property
    def dashed(self):
        return any(l.mode == DASHED for l in (*self.premises, self.conclusion))

    @property
    def name(self):
        return self.id.value


def _rule(rid, premises, conclusion, discharges=()):
    return RuleDescriptor(rid, tuple(Line(*p) for p in premises), Line(*conclusion),
                          tuple(Discharge(*d) for d in discharges))


P, D, X = Mode.PROOF, Mode.DUAL, DASHED
R = RuleId

_CATALOG = (
    _rule(R.AndIPos, [(A, P), (B, P)], (And(A, B), P)),
    _rule(R.AndE1Pos, [(And(A, B), P)], (A, P)),
    _rule(R.AndE2Pos, [(And(A, B), P)], (B, P)),
    _rule(R.OrI1Pos, [(A, P)], (Or(A, B), P)),
    _rule(R.OrI2Pos, [(B, P)], (Or(A, B), P)),
    _rule(R.OrEPos, [(Or(A, B), P), (C, X), (C, X)], (C, X), [(P, A, 1), (P, B, 2)]),
    _rule(R.ImpIPos, [(B, P)], (Imp(A, B), P), [(P, A, 0)]),
    _rule(R.ImpEPos, [(Imp(A, B), P), (A, P)], (B, P)),
    _rule(R.CoimpIPos, [(A, P), (B, D)], (Coimp(A, B), P)),
    _rule(R.CoimpE1Pos, [(Coimp(A, B), P)], (A, P)),
    _rule(R.CoimpE2Pos, [(Coimp(A, B), P)], (B, D)),
    _rule(R.TopIPos, [], (Top(), P)),
    _rule(R.BotEPos, [(Bot(), P)], (A, X)),
    _rule(R.AndI1Neg, [(A, D)], (And(A, B), D)),
    _rule(R.AndI2Neg, [(B, D)], (And(A, B), D)),
    _rule(R.AndENeg, [(And(A, B), D), (C, X), (C, X)], (C, X), [(D, A, 1), (D, B, 2)]),
    _rule(R.OrINeg, [(A, D), (B, D)], (Or(A, B), D)),
    _rule(R.OrE1Neg, [(Or(A, B), D)], (A, D)),
    _rule(R.OrE2Neg, [(Or(A, B), D)], (B, D)),
    _rule(R.ImpINeg, [(A, P), (B, D)], (Imp(A, B), D)),
    _rule(R.ImpE1Neg, [(Imp(A, B), D)], (A, P)),
    _rule(R.ImpE2Neg, [(Imp(A, B), D)], (B, D)),
    _rule(R.CoimpINeg, [(A, D)], (Coimp(A, B), D), [(D, B, 0)]),
    _rule(R.CoimpENeg, [(Coimp(A, B), D), (B, D)], (A, D)),
    _rule(R.TopENeg, [(Top(), D)], (A, X)),
    _rule(R.BotINeg, [], (Bot(), D)),
)
del P, D, X, R

RULES = {d.id: d for d in _CATALOG}


def rule_catalog():
    """All 26 rule descriptors, positive rules first, in a fixed order."""
    return list(_CATALOG)


def match(pattern, f, binding) -> bool:
    """First-order match of `pattern` against ground `f`, extending `binding`."""
    if isinstance(pattern, Meta):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, (Top, Bot)):
        return True
    if isinstance(pattern, Atom):
        return pattern == f
    return match(pattern.l, f.l, binding) and match(pattern.r, f.r, binding)


def instantiate(pattern, binding):
    if isinstance(pattern, Meta):
        return binding[pattern.name]
    if isinstance(pattern, (And, Or, Imp, Coimp)):
        return type(pattern)(instantiate(pattern.l, binding), instantiate(pattern.r, binding))
    return pattern


def pattern_text(pattern) -> str:
    """Render a schema with its metavariables as upper-case letters."""
    return to_text(_metas_as_atoms(pattern))


def _metas_as_atoms(p):
    if isinstance(p, Meta):
        return Atom(p.name)
    if isinstance(p, (And, Or, Imp, Coimp)):
        return type(p)(_metas_as_atoms(p.l), _metas_as_atoms(p.r))
    return p


# ---------------------------------------------------------------- trees

@dataclass(frozen=True)
class LeafCtx:
    """Open hypothesis: a member of Gamma (proof) or Delta (dual)."""
    formula: Formula
    mode: Mode


@dataclass(frozen=True)
class LeafDischarged:
    """Bracketed hypothesis: [A]^label (proof) or a counter-assumption (dual)."""
    formula: Formula
    mode: Mode
    label: int


@dataclass(frozen=True)
class Node:
    rule: object  # RuleId, or a derived-rule id before elaboration
    conclusion: Formula
    mode: Mode
    premises: tuple = ()
    dashed_mode: Optional[Mode] = None
    label: Optional[int] = None


ProofTree = Union[LeafCtx, LeafDischarged, Node]


@dataclass(frozen=True)
class Judgment:
    gamma: frozenset
    delta: frozenset
    mode: Mode
    goal: Formula

    def __post_init__(self):
        object.__setattr__(self, "gamma", frozenset(self.gamma))
        object.__setattr__(self, "delta", frozenset(self.delta))

    def __str__(self):
        sign = "+" if self.mode is Mode.PROOF else "-"
        return f"({_ctx_text(self.gamma)}; {_ctx_text(self.delta)}) |-{sign} {to_text(self.goal)}"


def _ctx_text(fs):
    return "{" + ", ".join(to_text(f) for f in sorted(fs, key=sort_key)) + "}"


def subtrees(tree, path=()):
    """Yield (path, subtree) pairs in pre-order."""
    yield path, tree
    if isinstance(tree, Node):
        for i, p in enumerate(tree.premises):
            yield from subtrees(p, path + (i,))


def at_path(tree, path):
    for i in path:
        tree = tree.premises[i]
    return tree


def replace_at(tree, path, new):
    if not path:
        return new
    i = path[0]
    premises = list(tree.premises)
    premises[i] = replace_at(premises[i], path[1:], new)
    return Node(tree.rule, tree.conclusion, tree.mode, tuple(premises),
                tree.dashed_mode, tree.label)


def height(tree) -> int:
    if isinstance(tree, Node) and tree.premises:
        return 1 + max(height(p) for p in tree.premises)
    return 1


def labels(tree) -> set:
    """Every label occurring in the tree, on binders or on leaves."""
    out = set()
    for _, t in subtrees(tree):
        if isinstance(t, Node) and t.label is not None:
            out.add(t.label)
        elif isinstance(t, LeafDischarged):
            out.add(t.label)
    return out


def max_label(tree) -> int:
    return max(labels(tree), default=0)


def map_formulas(tree, fn):
    """Apply `fn` to every formula in the tree."""
    if isinstance(tree, LeafCtx):
        return LeafCtx(fn(tree.formula), tree.mode)
    if isinstance(tree, LeafDischarged):
        return LeafDischarged(fn(tree.formula), tree.mode, tree.label)
    return Node(tree.rule, fn(tree.conclusion), tree.mode,
                tuple(map_formulas(p, fn) for p in tree.premises),
                tree.dashed_mode, tree.label)


def relabel(tree, mapping):
    """Rename labels per `mapping` (labels not in it are kept)."""
    if isinstance(tree, LeafCtx):
        return tree
    if isinstance(tree, LeafDischarged):
        return LeafDischarged(tree.formula, tree.mode, mapping.get(tree.label, tree.label))
    lab = mapping.get(tree.label, tree.label) if tree.label is not None else None
    return Node(tree.rule, tree.conclusion, tree.mode,
                tuple(relabel(p, mapping) for p in tree.premises), tree.dashed_mode, lab)


# ---------------------------------------------------------------- checking

class Code(str, enum.Enum):
    UnknownRuleShape = "UnknownRuleShape"
    ModeMismatch = "ModeMismatch"
    DashedNonUniform = "DashedNonUniform"
    UnboundDischargeLabel = "UnboundDischargeLabel"
    WrongBracketKind = "WrongBracketKind"
    LeafNotInContext = "LeafNotInContext"
    RootMismatch = "RootMismatch"
    DuplicateLabel = "DuplicateLabel"
    UnusedContextFormula = "UnusedContextFormula"


@dataclass(frozen=True)
class Violation:
    path: tuple
    code: Code
    message: str

    def to_json(self):
        return {"path": list(self.path), "code": self.code.value, "message": self.message}


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)
    used_gamma: set = field(default_factory=set)
    used_delta: set = field(default_factory=set)

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self):
        return {v.code for v in self.violations}

    def to_json(self):
        return {
            "valid": self.valid,
            "violations": [v.to_json() for v in self.violations],
            "used_gamma": [to_text(f) for f in sorted(self.used_gamma, key=sort_key)],
            "used_delta": [to_text(f) for f in sorted(self.used_delta, key=sort_key)],
        }


class UnboundDischargeLabel(ValueError):
    def __init__(self, path, label):
        self.path = path
        self.label = label
        super().__init__(f"label {label} at {list(path)} has no discharging rule in scope")


def _conclusion(tree):
    return tree.formula if not isinstance(tree, Node) else tree.conclusion


def _partial_binding(desc, t):
    """Bindings a malformed node still determines: its conclusion first, then
    each premise that agrees with what is bound so far."""
    binding = {}
    lines = [(desc.conclusion.shape, t.conclusion)]
    lines += [(l.shape, _conclusion(p)) for l, p in zip(desc.premises, t.premises)]
    for shape, f in lines:
        trial = dict(binding)
        if match(shape, f, trial):
            binding = trial
    return binding


class _Checker:
    def __init__(self, judgment):
        self.j = judgment
        self.report = CheckReport()

    def flag(self, path, code, message):
        self.report.violations.append(Violation(tuple(path), code, message))

    def leaf_ctx(self, t, path):
        if t.mode is Mode.PROOF:
            if t.formula in self.j.gamma:
                if t.formula != Top():
                    self.report.used_gamma.add(t.formula)
            elif t.formula != Top():
                self.flag(path, Code.LeafNotInContext,
                          f"single-line leaf {to_text(t.formula)} is not in Gamma, discharged, or T")
        else:
            if t.formula in self.j.delta:
                if t.formula != Bot():
                    self.report.used_delta.add(t.formula)
            elif t.formula != Bot():
                self.flag(path, Code.LeafNotInContext,
                          f"double-line leaf {to_text(t.formula)} is not in Delta, discharged, or F")

    def leaf_discharged(self, t, path, scope):
        if t.label not in scope:
            self.flag(path, Code.UnboundDischargeLabel,
                      f"label {t.label} is not bound by a discharging rule on this branch")
            return
        licensed = scope[t.label]
        if licensed is None or (t.mode, t.formula) in licensed:
            return
        kind = "assumption" if t.mode is Mode.PROOF else "counter-assumption"
        allowed = ", ".join(
            ("[" if m is Mode.PROOF else "[[") + to_text(f) + ("]" if m is Mode.PROOF else "]]")
            for m, f in licensed) or "nothing"
        self.flag(path, Code.WrongBracketKind,
                  f"{kind} {to_text(t.formula)} with label {t.label} does not match "
                  f"what the binder discharges here ({allowed})")

    def node(self, t, path, scope):
        desc = RULES.get(t.rule)
        if desc is None:
            self.flag(path, Code.UnknownRuleShape,
                      f"{getattr(t.rule, 'value', t.rule)} is not a kernel rule")
            for i, p in enumerate(t.premises):
                self.visit(p, path + (i,), scope)
            return

        inst = None
        if desc.dashed:
            if t.dashed_mode is None:
                self.flag(path, Code.DashedNonUniform,
                          f"{desc.name} needs a dashed-line instantiation (proof or dual)")
            inst = t.dashed_mode or t.mode
        elif t.dashed_mode is not None:
            self.flag(path, Code.DashedNonUniform, f"{desc.name} has no dashed lines")

        def resolve(m):
            return inst if m == DASHED else m

        want = resolve(desc.conclusion.mode)
        if t.mode is not want:
            code = Code.DashedNonUniform if desc.conclusion.mode == DASHED else Code.ModeMismatch
            self.flag(path, code, f"{desc.name} concludes a {want.value} line, found {t.mode.value}")

        if t.label is not None and not desc.discharges:
            self.flag(path, Code.UnknownRuleShape, f"{desc.name} discharges nothing but carries label {t.label}")

        if len(t.premises) != len(desc.premises):
            self.flag(path, Code.UnknownRuleShape,
                      f"{desc.name} takes {len(desc.premises)} premise(s), found {len(t.premises)}")
            for i, p in enumerate(t.premises):
                self.visit(p, path + (i,), scope)
            return

        for i, (line, p) in enumerate(zip(desc.premises, t.premises)):
            want = resolve(line.mode)
            if p.mode is not want:
                code = Code.DashedNonUniform if line.mode == DASHED else Code.ModeMismatch
                self.flag(path + (i,), code,
                          f"premise {i + 1} of {desc.name} must be a {want.value} line, found {p.mode.value}")

        binding = {}
        ok = match(desc.conclusion.shape, t.conclusion, binding)
        if not ok:
            self.flag(path, Code.UnknownRuleShape,
                      f"conclusion {to_text(t.conclusion)} does not have the shape "
                      f"{pattern_text(desc.conclusion.shape)} required by {desc.name}")
        else:
            for i, (line, p) in enumerate(zip(desc.premises, t.premises)):
                if not match(line.shape, _conclusion(p), binding):
                    ok = False
                    self.flag(path, Code.UnknownRuleShape,
                              f"premise {i + 1} ({to_text(_conclusion(p))}) does not fit "
                              f"{pattern_text(line.shape)} in {desc.name}")
                    break

        for i, p in enumerate(t.premises):
            inner = scope
            if t.label is not None:
                attached = [d for d in desc.discharges if d.premise == i]
                if attached:
                    inner = dict(scope)
                    if not ok:
                        binding = _partial_binding(desc, t)
                    try:
                        inner[t.label] = {(d.kind, instantiate(d.shape, binding)) for d in attached}
                    except KeyError:
                        inner[t.label] = None  # undetermined; shape already reported at the binder
            self.visit(p, path + (i,), inner)

    def visit(self, t, path, scope):
        if isinstance(t, LeafCtx):
            self.leaf_ctx(t, path)
        elif isinstance(t, LeafDischarged):
            self.leaf_discharged(t, path, scope)
        else:
            self.node(t, path, scope)

    def run(self, tree):
        j = self.j
        if _conclusion(tree) != j.goal or tree.mode is not j.mode:
            self.flag((), Code.RootMismatch,
                      f"root is a {tree.mode.value} of {to_text(_conclusion(tree))}, "
                      f"expected a {j.mode.value} of {to_text(j.goal)}")
        seen = set()
        for path, t in subtrees(tree):
            if isinstance(t, Node) and t.label is not None:
                if t.label in seen:
                    self.flag(path, Code.DuplicateLabel, f"label {t.label} is bound by more than one rule")
                seen.add(t.label)
        self.visit(tree, (), {})
        self.report.violations.sort(key=lambda v: v.path)
        return self.report


def check(tree, j: Judgment) -> CheckReport:
    """Decide whether `tree` is a proof (or dual proof) of j.goal from (Gamma; Delta)."""
    return _Checker(j).run(tree)


def check_judgment_strictness(tree, j: Judgment) -> CheckReport:
    """Like check, but every member of Gamma and Delta must also be used."""
    report = check(tree, j)
    for f in sorted(j.gamma - report.used_gamma, key=sort_key):
        report.violations.append(Violation((), Code.UnusedContextFormula,
                                           f"assumption {to_text(f)} is never used"))
    for f in sorted(j.delta - report.used_delta, key=sort_key):
        report.violations.append(Violation((), Code.UnusedContextFormula,
                                           f"counter-assumption {to_text(f)} is never used"))
    return report


def open_hypotheses(tree):
    """(single-line open leaves minus T, double-line open leaves minus F).

    Raises UnboundDischargeLabel if a bracketed leaf has no binder in scope.
    """
    gamma, delta = set(), set()

    def walk(t, path, scope):
        if isinstance(t, LeafCtx):
            if t.mode is Mode.PROOF and t.formula != Top():
                gamma.add(t.formula)
            elif t.mode is Mode.DUAL and t.formula != Bot():
                delta.add(t.formula)
        elif isinstance(t, LeafDischarged):
            if t.label not in scope:
                raise UnboundDischargeLabel(path, t.label)
        else:
            desc = RULES.get(t.rule)
            for i, p in enumerate(t.premises):
                inner = scope
                if t.label is not None and desc is not None and any(
                        d.premise == i for d in desc.discharges):
                    inner = scope | {t.label}
                walk(p, path + (i,), inner)

    walk(tree, (), frozenset())
    return gamma, delta

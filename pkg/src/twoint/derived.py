"""Strong negation as a derived connective.

``~A`` abbreviates ``def(A) = (A & (A -> (A -< A))) | ((A -> A) -< A)``.
Each of the four ~-rules is a macro whose expansion is a fixed kernel
derivation over ``def(A)``; :func:`verify_definability` checks all four.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable

from .formula import And, Coimp, Imp, Snot, definiens, expand_strong_negation, to_text
from .kernel import (
    Judgment, LeafCtx, LeafDischarged, Mode, Node, RuleId, check,
    check_judgment_strictness, labels, map_formulas, max_label, relabel,
)

P, D = Mode.PROOF, Mode.DUAL


class DerivedRuleId(enum.Enum):
    SnotIPos = "snotI+"
    SnotINeg = "snotI-"
    SnotEPos = "snotE+"
    SnotENeg = "snotE-"


class PremiseShapeMismatch(ValueError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        super().__init__(f"at {list(self.path)}: {message}")


@dataclass(frozen=True)
class Hole:
    """Placeholder for the derived rule's premise inside a skeleton."""
    formula: object
    mode: Mode


@dataclass(frozen=True)
class ExpansionTemplate:
    id: DerivedRuleId
    premise_mode: Mode
    conclusion_mode: Mode
    premise_is_definiens: bool
    skeleton: Callable  # formula A -> tree with Hole leaves; labels start at 1

    def premise_formula(self, a):
        return definiens(a) if self.premise_is_definiens else a

    def conclusion_formula(self, a):
        return a if self.premise_is_definiens else definiens(a)


def _snot_i_pos(a):
    return Node(RuleId.OrI2Pos, definiens(a), P, (
        Node(RuleId.CoimpIPos, Coimp(Imp(a, a), a), P, (
            Node(RuleId.ImpIPos, Imp(a, a), P, (LeafDischarged(a, P, 1),), label=1),
            Hole(a, D),
        )),
    ))


def _snot_i_neg(a):
    # the right conjunct is refuted here, so this is andI2- (not andI1-)
    left = Node(RuleId.AndI2Neg, And(a, Imp(a, Coimp(a, a))), D, (
        Node(RuleId.ImpINeg, Imp(a, Coimp(a, a)), D, (
            Hole(a, P),
            Node(RuleId.CoimpINeg, Coimp(a, a), D, (LeafDischarged(a, D, 1),), label=1),
        )),
    ))
    right = Node(RuleId.CoimpINeg, Coimp(Imp(a, a), a), D, (
        Node(RuleId.ImpINeg, Imp(a, a), D, (Hole(a, P), LeafDischarged(a, D, 2))),
    ), label=2)
    return Node(RuleId.OrINeg, definiens(a), D, (left, right))


def _snot_e_pos(a):
    conj = And(a, Imp(a, Coimp(a, a)))
    left = Node(RuleId.CoimpE2Pos, a, D, (
        Node(RuleId.ImpEPos, Coimp(a, a), P, (
            Node(RuleId.AndE2Pos, Imp(a, Coimp(a, a)), P, (LeafDischarged(conj, P, 1),)),
            Node(RuleId.AndE1Pos, a, P, (LeafDischarged(conj, P, 1),)),
        )),
    ))
    right = Node(RuleId.CoimpE2Pos, a, D, (LeafDischarged(Coimp(Imp(a, a), a), P, 1),))
    return Node(RuleId.OrEPos, a, D, (Hole(definiens(a), P), left, right),
                dashed_mode=D, label=1)


def _snot_e_neg(a):
    major = Node(RuleId.OrE1Neg, And(a, Imp(a, Coimp(a, a))), D, (Hole(definiens(a), D),))
    second = Node(RuleId.ImpE1Neg, a, P, (
        Node(RuleId.CoimpENeg, Imp(a, a), D, (
            Node(RuleId.OrE2Neg, Coimp(Imp(a, a), a), D, (Hole(definiens(a), D),)),
            LeafDischarged(a, D, 1),
        )),
    ))
    third = Node(RuleId.ImpE1Neg, a, P, (LeafDischarged(Imp(a, Coimp(a, a)), D, 1),))
    return Node(RuleId.AndENeg, a, P, (major, second, third), dashed_mode=P, label=1)


TEMPLATES = {
    DerivedRuleId.SnotIPos: ExpansionTemplate(DerivedRuleId.SnotIPos, D, P, False, _snot_i_pos),
    DerivedRuleId.SnotINeg: ExpansionTemplate(DerivedRuleId.SnotINeg, P, D, False, _snot_i_neg),
    DerivedRuleId.SnotEPos: ExpansionTemplate(DerivedRuleId.SnotEPos, P, D, True, _snot_e_pos),
    DerivedRuleId.SnotENeg: ExpansionTemplate(DerivedRuleId.SnotENeg, D, P, True, _snot_e_neg),
}


def _fill(skel, premise, base):
    """Shift skeleton labels above `base` and plug copies of `premise` into holes.

    Copies after the first get fresh labels so binders stay unique.
    Returns (tree, highest label used).
    """
    top = base + max(_skeleton_labels(skel), default=0)
    plabels = sorted(labels(premise))
    copies = 0

    def go(t):
        nonlocal copies, top
        if isinstance(t, Hole):
            copies += 1
            if copies == 1 or not plabels:
                return premise
            mapping = {l: top + i + 1 for i, l in enumerate(plabels)}
            top += len(plabels)
            return relabel(premise, mapping)
        if isinstance(t, LeafDischarged):
            return LeafDischarged(t.formula, t.mode, t.label + base)
        if isinstance(t, LeafCtx):
            return t
        lab = t.label + base if t.label is not None else None
        return Node(t.rule, t.conclusion, t.mode, tuple(go(p) for p in t.premises),
                    t.dashed_mode, lab)

    tree = go(skel)
    return tree, top


def _skeleton_labels(t):
    if isinstance(t, Hole):
        return set()
    if isinstance(t, LeafDischarged):
        return {t.label}
    if isinstance(t, LeafCtx):
        return set()
    out = {t.label} if t.label is not None else set()
    for p in t.premises:
        out |= _skeleton_labels(p)
    return out


def _expand(template, a, premise, base, path=()):
    want_f = template.premise_formula(a)
    got_f = premise.conclusion if isinstance(premise, Node) else premise.formula
    if got_f != want_f or premise.mode is not template.premise_mode:
        raise PremiseShapeMismatch(
            f"{template.id.value} needs a {template.premise_mode.value} of {to_text(want_f)}, "
            f"got a {premise.mode.value} of {to_text(got_f)}", path)
    return _fill(template.skeleton(a), premise, base)


def expand_rule(rule: DerivedRuleId, a, premise, templates=None):
    """Kernel derivation standing in for one application of a ~-rule.

    `a` is the negated formula (Snot-free); `premise` must prove the
    ~-rule's premise with ~a read as def(a).
    """
    template = (templates or TEMPLATES)[rule]
    tree, _ = _expand(template, a, premise, max_label(premise))
    return tree


def elaborate(tree, templates=None):
    """Replace every ~-rule node by its expansion and every ~X by def(X)."""
    templates = templates or TEMPLATES
    counter = max_label(tree)

    def go(t, path):
        nonlocal counter
        if not isinstance(t, Node):
            return map_formulas(t, expand_strong_negation)
        premises = tuple(go(p, path + (i,)) for i, p in enumerate(t.premises))
        if not isinstance(t.rule, DerivedRuleId):
            return Node(t.rule, expand_strong_negation(t.conclusion), t.mode, premises,
                        t.dashed_mode, t.label)
        template = templates[t.rule]
        if len(premises) != 1:
            raise PremiseShapeMismatch(f"{t.rule.value} takes exactly one premise", path)
        if t.mode is not template.conclusion_mode:
            raise PremiseShapeMismatch(
                f"{t.rule.value} concludes a {template.conclusion_mode.value} line", path)
        if template.premise_is_definiens:
            a = expand_strong_negation(t.conclusion)
        elif isinstance(t.conclusion, Snot):
            a = expand_strong_negation(t.conclusion.arg)
        else:
            raise PremiseShapeMismatch(
                f"{t.rule.value} must conclude a strong negation, got {to_text(t.conclusion)}", path)
        out, counter = _expand(template, a, premises[0], counter, path + (0,))
        return out

    return go(tree, ())


def elaborate_judgment(j: Judgment) -> Judgment:
    e = expand_strong_negation
    return Judgment({e(f) for f in j.gamma}, {e(f) for f in j.delta}, j.mode, e(j.goal))


def canonical_instance(rule: DerivedRuleId, a, templates=None):
    """The hypothesis-leaf premise and target judgment used to verify `rule`."""
    template = (templates or TEMPLATES)[rule]
    pf = template.premise_formula(a)
    premise = LeafCtx(pf, template.premise_mode)
    gamma = {pf} if template.premise_mode is P else set()
    delta = {pf} if template.premise_mode is D else set()
    j = Judgment(gamma, delta, template.conclusion_mode, template.conclusion_formula(a))
    return premise, j


@dataclass
class RuleResult:
    rule: DerivedRuleId
    judgment: Judgment
    tree: object
    report: object
    strict_report: object

    @property
    def passed(self):
        return self.report.valid and self.strict_report.valid


@dataclass
class DefinabilityReport:
    results: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def holds(self):
        return len(self.results) == 4 and all(r.passed for r in self.results)

    def to_json(self):
        return {
            "holds": self.holds,
            "elapsed_s": self.elapsed,
            "rules": [
                {"rule": r.rule.value, "judgment": str(r.judgment), "pass": r.passed,
                 "violations": [v.to_json() for v in r.strict_report.violations]}
                for r in self.results
            ],
        }


def verify_definability(a=None, templates=None) -> DefinabilityReport:
    """Expand all four ~-rules over hypothesis leaves and check each result."""
    from .formula import Atom
    a = Atom("a") if a is None else a
    start = time.perf_counter()
    report = DefinabilityReport()
    for rule in DerivedRuleId:
        premise, j = canonical_instance(rule, a, templates)
        try:
            tree = expand_rule(rule, a, premise, templates)
        except PremiseShapeMismatch:
            tree = premise
        report.results.append(RuleResult(rule, j, tree, check(tree, j),
                                         check_judgment_strictness(tree, j)))
    report.elapsed = time.perf_counter() - start
    return report

import dataclasses
import random

import pytest

from twoint.derived import (
    TEMPLATES, DerivedRuleId, PremiseShapeMismatch, canonical_instance, elaborate,
    expand_rule, verify_definability,
)
from twoint.formula import (
    Atom, Bot, Imp, Snot, Top, definiens, expand_strong_negation, subformulas, substitute,
)
from twoint.kernel import (
    Code, Judgment, LeafCtx, Mode, Node, RuleId, check, check_judgment_strictness, height,
    map_formulas, subtrees,
)
from twoint.script import parse_script

from conftest import A, CORPUS, DEF_A, GOLDEN, load_golden
from gen import random_formula

P, D = Mode.PROOF, Mode.DUAL
IDS = {r.value: r for r in DerivedRuleId}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_expansion_equals_hand_encoded_derivation(name):
    tree, j = load_golden(name)
    premise, canon_j = canonical_instance(IDS[name], A)
    assert canon_j == j
    assert expand_rule(IDS[name], A, premise) == tree


def test_snot_i_pos_example():
    t = expand_rule(DerivedRuleId.SnotIPos, A, LeafCtx(A, D))
    assert check(t, Judgment(set(), {A}, P, DEF_A)).valid
    assert height(t) == 4


def test_premise_shape_mismatch():
    with pytest.raises(PremiseShapeMismatch):
        expand_rule(DerivedRuleId.SnotIPos, A, LeafCtx(A, P))
    with pytest.raises(PremiseShapeMismatch):
        expand_rule(DerivedRuleId.SnotEPos, A, LeafCtx(A, P))


def test_templates_use_no_constants():
    for rule in DerivedRuleId:
        premise, _ = canonical_instance(rule, A)
        tree = expand_rule(rule, A, premise)
        for _, t in subtrees(tree):
            f = t.conclusion if isinstance(t, Node) else t.formula
            assert not ({Top(), Bot()} & subformulas(f))
            assert not (isinstance(t, Node) and t.rule in (RuleId.TopIPos, RuleId.BotINeg))


def test_expansions_valid_for_random_formulas():
    rng = random.Random(3)
    for _ in range(60):
        a = random_formula(rng, 3)
        for rule in DerivedRuleId:
            premise, j = canonical_instance(rule, a)
            tree = expand_rule(rule, a, premise)
            assert check(tree, j).valid, (rule, a)


def test_expansion_over_compound_premise_keeps_labels_unique():
    # premise for snotI- is used twice; it carries its own binder
    b = Atom("b")
    prem = Node(RuleId.ImpIPos, Imp(b, b), P, (LeafCtx(b, P),), label=1)
    prem = Node(RuleId.ImpEPos, b, P, (prem, LeafCtx(b, P)))
    tree = expand_rule(DerivedRuleId.SnotINeg, b, prem)
    binders = [t.label for _, t in subtrees(tree) if isinstance(t, Node) and t.label is not None]
    assert len(binders) == len(set(binders)) == 4
    rep = check(tree, Judgment({b}, set(), D, definiens(b)))
    assert rep.valid, rep.violations


# ---------------------------------------------------------------- elaborate

def test_elaborate_identity_on_kernel_trees(golden):
    _, tree, _ = golden
    assert elaborate(tree) == tree


def test_elaborate_single_node():
    t = Node(DerivedRuleId.SnotIPos, Snot(A), P, (LeafCtx(A, D),))
    assert elaborate(t) == expand_rule(DerivedRuleId.SnotIPos, A, LeafCtx(A, D))


def test_elaborate_composition():
    j, tree = parse_script((CORPUS / "snot_roundtrip.2int").read_text())
    out = elaborate(tree)
    assert out.mode is tree.mode is D and out.conclusion == A
    assert check(out, j).valid
    assert check_judgment_strictness(out, j).valid


def test_elaborate_nested_negation():
    # ~~a from a: snotI+ over snotI- over a
    t = Node(DerivedRuleId.SnotIPos, Snot(Snot(A)), P, (
        Node(DerivedRuleId.SnotINeg, Snot(A), D, (LeafCtx(A, P),)),))
    out = elaborate(t)
    assert out.conclusion == expand_strong_negation(Snot(Snot(A)))
    assert check(out, Judgment({A}, set(), P, out.conclusion)).valid


def test_elaborate_reports_path():
    bad = Node(RuleId.OrI1Pos, Snot(A), P, (
        Node(DerivedRuleId.SnotIPos, Snot(A), P, (LeafCtx(A, P),)),))
    with pytest.raises(PremiseShapeMismatch) as e:
        elaborate(bad)
    assert e.value.path == (0, 0)
    with pytest.raises(PremiseShapeMismatch):
        elaborate(Node(DerivedRuleId.SnotIPos, A, P, (LeafCtx(A, D),)))


def test_elaborate_conclusion_correspondence():
    rng = random.Random(8)
    for _ in range(40):
        a = random_formula(rng, 2, snot=True)
        t = Node(DerivedRuleId.SnotENeg, a, P, (LeafCtx(Snot(a), D),))
        out = elaborate(t)
        assert out.mode is t.mode
        assert out.conclusion == expand_strong_negation(t.conclusion)
        j = Judgment(set(), {expand_strong_negation(Snot(a))}, P, out.conclusion)
        assert check(out, j).valid
        assert elaborate(out) == out


# ---------------------------------------------------------------- definability

def test_verify_definability():
    rep = verify_definability()
    assert rep.holds
    assert [r.rule for r in rep.results] == list(DerivedRuleId)
    assert rep.elapsed < 1.0


def test_verify_renamed_atom():
    assert verify_definability(Atom("q")).holds


def _swap_rule(tree, old, new):
    if isinstance(tree, Node):
        return Node(new if tree.rule is old else tree.rule, tree.conclusion, tree.mode,
                    tuple(_swap_rule(p, old, new) for p in tree.premises), tree.dashed_mode, tree.label)
    return tree


def test_corrupted_template_fails_only_that_rule():
    tpl = TEMPLATES[DerivedRuleId.SnotEPos]
    corrupted = dataclasses.replace(
        tpl, skeleton=lambda a: _swap_rule(tpl.skeleton(a), RuleId.CoimpE2Pos, RuleId.CoimpE1Pos))
    rep = verify_definability(templates={**TEMPLATES, DerivedRuleId.SnotEPos: corrupted})
    status = {r.rule: r.passed for r in rep.results}
    assert status == {DerivedRuleId.SnotIPos: True, DerivedRuleId.SnotINeg: True,
                      DerivedRuleId.SnotEPos: False, DerivedRuleId.SnotENeg: True}
    assert not rep.holds


def test_and_i1_neg_labelling_of_snot_i_neg_is_rejected():
    # the displayed derivation names the conjunction step andI1-; the tables say andI2-
    tree, j = load_golden("snotI-")
    mislabelled = _swap_rule(tree, RuleId.AndI2Neg, RuleId.AndI1Neg)
    assert Code.UnknownRuleShape in check(mislabelled, j).codes()


def test_substitution_closure_of_theorem():
    rng = random.Random(21)
    for _ in range(30):
        g = random_formula(rng, 3)
        for rule in DerivedRuleId:
            premise, j = canonical_instance(rule, A)
            tree = expand_rule(rule, A, premise)
            sub = lambda f: substitute(f, "a", g)
            j2 = Judgment({sub(f) for f in j.gamma}, {sub(f) for f in j.delta}, j.mode, sub(j.goal))
            assert check(map_formulas(tree, sub), j2).valid

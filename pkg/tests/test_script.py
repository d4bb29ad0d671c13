import pytest

from twoint.derived import DerivedRuleId
from twoint.formula import Atom, Imp, Top, parse
from twoint.kernel import Code, Judgment, LeafCtx, Mode, Node, RuleId, check
from twoint.script import (
    ScriptError, UnknownRuleName, parse_judgment, parse_script, print_script, read_sexprs,
)

from conftest import CORPUS, GOLDEN, load_golden
from gen import seeded

P, D = Mode.PROOF, Mode.DUAL
a = Atom("a")


def test_top_intro_script():
    j, t = parse_script("(judgment (gamma) (delta) proof T)\n(rule topI+ T)")
    assert j == Judgment(set(), set(), P, Top())
    assert t == Node(RuleId.TopIPos, Top(), P)
    assert check(t, j).valid


def test_snot_i_pos_encoding():
    text = '''(rule orI2+ "(a & (a -> (a -< a))) | ((a -> a) -< a)"
                (rule coimpI+ "(a -> a) -< a"
                  (rule impI+ :label 1 "a -> a" (assume* 1 a))
                  (counter a)))'''
    j, t = parse_script(text)
    assert j is None
    assert t == load_golden("snotI+")[0]


def test_all_rule_names_parse():
    for r in list(RuleId) + list(DerivedRuleId):
        _, t = parse_script(f"(rule {r.value} :dashed proof a)")
        assert t.rule is r


def test_unknown_rule_name():
    with pytest.raises(UnknownRuleName) as e:
        parse_script("(rule orI3+ a (assume a))")
    assert (e.value.line, e.value.column) == (1, 7)


@pytest.mark.parametrize("text", [
    "", "(rule", "(rule andI+)", "(assume)", "(assume* x a)", "(assume* 0 a)",
    '(assume "a ->")', "(rule orE+ :dashed maybe a)", "(frob a)", "(assume a) (assume a)",
    "(rule impI+ :label 1 :label 2 a)", '(assume "a)', ")",
])
def test_malformed(text):
    with pytest.raises(ScriptError):
        parse_script(text)


def test_error_location():
    with pytest.raises(ScriptError) as e:
        parse_script('(judgment (gamma) (delta) proof a)\n\n  (assume "a & ")')
    assert e.value.line == 3 and e.value.column == 11


def test_comments_crlf_and_bom():
    text = "﻿; a comment\r\n(judgment (gamma a) (delta) proof a) ; trailing\r\n(assume a)\r\n"
    j, t = parse_script(text)
    assert t == LeafCtx(a, P) and check(t, j).valid


def test_string_escapes():
    assert read_sexprs(r'("a \" b")')[0].items[0].text == 'a " b'


ORE = '''(judgment (gamma "a | a") (delta) {mode} a)
(rule orE+ :label 1 a
  (assume "a | a")
  {left}
  {right})'''


def test_dashed_inferred_when_branches_agree():
    text = ORE.format(mode="proof", left="(assume* 1 a)", right="(assume* 1 a)")
    j, t = parse_script(text)
    assert t.dashed_mode is P and t.mode is P
    assert check(t, j).valid


def test_dashed_inferred_dual():
    text = """(judgment (gamma "a | a" F) (delta a) dual a)
    (rule orE+ :label 1 a
      (assume "a | a")
      (rule botE+ :dashed dual a (assume F))
      (counter a))"""
    j, t = parse_script(text)
    assert t.dashed_mode is D and check(t, j).valid


def test_dashed_mixed_branches_rejected():
    text = ORE.format(mode="proof", left="(assume* 1 a)", right="(counter a)")
    text = text.replace("(delta)", "(delta a)")
    j, t = parse_script(text)
    rep = check(t, j)
    assert [v.code for v in rep.violations] == [Code.DashedNonUniform]
    assert rep.violations[0].path == (2,)


def test_dashed_needed_without_premises_to_infer_from():
    with pytest.raises(ScriptError):
        parse_script("(rule botE+ a (assume F))")


def test_judgment_forms():
    want = Judgment({a, parse("a & b")}, {parse("c")}, D, parse("a -> b"))
    assert parse_judgment('(judgment (gamma a "a & b") (delta c) dual "a -> b")') == want
    assert parse_judgment("a, a & b ; c |-- a -> b") == want
    assert parse_judgment("|-+ a -> a") == Judgment(set(), set(), P, Imp(a, a))
    assert parse_judgment(" ; a |-- a & b") == Judgment(set(), {a}, D, parse("a & b"))
    with pytest.raises(ScriptError):
        parse_judgment("a |= b")
    with pytest.raises(ScriptError):
        parse_judgment("a & ; |-+ b")


def test_golden_roundtrip(golden):
    _, tree, j = golden
    assert parse_script(print_script(tree, j)) == (j, tree)


def test_corpus_files_roundtrip():
    for path in CORPUS.glob("*.2int"):
        j, t = parse_script(path.read_text())
        assert parse_script(print_script(t, j)) == (j, t)


def test_random_tree_roundtrip():
    for tree, j in seeded(100, seed=2):
        assert parse_script(print_script(tree, j)) == (j, tree)


def test_mode_attribute_roundtrips_off_rule_modes():
    t = Node(RuleId.AndE1Pos, a, D, (LeafCtx(parse("a & b"), P),))
    text = print_script(t)
    assert ":mode dual" in text
    assert parse_script(text) == (None, t)

"""Proof checking for the bi-intuitionistic logic 2Int."""

from .formula import (
    And, Atom, Bot, Coimp, Formula, Imp, Or, ParseError, Snot, Top,
    definiens, expand_strong_negation, parse, substitute, to_text,
)
from .kernel import (
    CheckReport, Judgment, LeafCtx, LeafDischarged, Mode, Node, RuleDescriptor, RuleId,
    check, check_judgment_strictness, open_hypotheses, rule_catalog,
)
from .derived import DerivedRuleId, elaborate, expand_rule, verify_definability
from .search import SearchConfig, search
from .script import parse_script, print_script

__all__ = [
    "And", "Atom", "Bot", "Coimp", "Formula", "Imp", "Or", "ParseError", "Snot", "Top",
    "definiens", "expand_strong_negation", "parse", "substitute", "to_text",
    "CheckReport", "Judgment", "LeafCtx", "LeafDischarged", "Mode", "Node",
    "RuleDescriptor", "RuleId", "check", "check_judgment_strictness", "open_hypotheses",
    "rule_catalog", "DerivedRuleId", "elaborate", "expand_rule", "verify_definability",
    "SearchConfig", "search", "parse_script", "print_script",
]

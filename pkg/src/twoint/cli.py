"""Command-line interface: ``twoint <command> ...``.

Exit status is 0 for success (or a valid proof), 1 when a proof is checked
and found invalid or a search finds nothing, and 2 for parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formula as fm
from .derived import PremiseShapeMismatch, elaborate, elaborate_judgment, verify_definability
from .kernel import (
    DASHED, Code, Judgment, UnboundDischargeLabel, Violation, check,
    check_judgment_strictness, open_hypotheses, pattern_text, rule_catalog,
)
from .script import ScriptError, judgment_text, parse_judgment, parse_script, print_script
from .search import SearchConfig, search


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path):
    judgment, tree = parse_script(_read(path))
    try:
        tree = elaborate(tree)
    except PremiseShapeMismatch as e:
        raise UsageError(f"{path}: derived rule: {e}") from None
    if judgment is not None:
        judgment = elaborate_judgment(judgment)
    return judgment, tree


def cmd_check(args, out):
    judgment, tree = _load(args.file)
    inferred = judgment is None
    if inferred:
        try:
            gamma, delta = open_hypotheses(tree)
        except UnboundDischargeLabel:
            gamma, delta = set(), set()
        conclusion = tree.conclusion if hasattr(tree, "conclusion") else tree.formula
        judgment = Judgment(gamma, delta, tree.mode, conclusion)
    checker = check_judgment_strictness if args.strict else check
    report = checker(tree, judgment)
    if args.json:
        out.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        verdict = "valid" if report.valid else "INVALID"
        if inferred:
            out.write(f"inferred judgment: {judgment}\n")
        else:
            out.write(f"judgment: {judgment}\n")
        out.write(f"{verdict}\n")
        for v in report.violations:
            out.write(f"  at {_path_text(v)}: {v.code.value}: {v.message}\n")
    return 0 if report.valid else 1


def _path_text(v: Violation):
    return "root" if not v.path else "root/" + "/".join(str(i) for i in v.path)


def cmd_expand(args, out):
    f = fm.parse(args.formula)
    out.write(fm.to_text(fm.expand_strong_negation(f)) + "\n")
    return 0


def cmd_elaborate(args, out):
    judgment, tree = _load(args.file)
    out.write(print_script(tree, judgment))
    return 0


def cmd_search(args, out):
    j = elaborate_judgment(parse_judgment(args.judgment))
    if args.depth < 1:
        raise UsageError("--depth must be at least 1")
    tree = search(j, SearchConfig(depth_bound=args.depth))
    if args.json:
        out.write(json.dumps({
            "found": tree is not None,
            "judgment": judgment_text(j),
            "script": print_script(tree, j) if tree is not None else None,
        }, indent=2) + "\n")
    elif tree is None:
        out.write(f"no proof found within depth {args.depth} (this does not show underivability)\n")
    else:
        out.write(print_script(tree, j))
    return 0 if tree is not None else 1


def cmd_verify(args, out):
    report = verify_definability()
    if args.json:
        out.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status} {r.rule.value:7} {r.judgment}\n")
            for v in r.strict_report.violations:
                out.write(f"    at {_path_text(v)}: {v.code.value}: {v.message}\n")
    return 0 if report.holds else 1


def _line_text(line):
    mode = {"proof": "+", "dual": "-", DASHED: "+/-"}[getattr(line.mode, "value", line.mode)]
    return f"{pattern_text(line.shape)} {mode}"


def cmd_rules(args, out):
    rows = []
    for d in rule_catalog():
        premises = ", ".join(_line_text(l) for l in d.premises) or "-"
        discharges = ", ".join(
            ("[" if x.kind.value == "proof" else "[[") + pattern_text(x.shape)
            + ("]" if x.kind.value == "proof" else "]]") + f"@{x.premise + 1}"
            for x in d.discharges) or "-"
        rows.append((d.name, premises, _line_text(d.conclusion), discharges))
    header = ("rule", "premises", "conclusion", "discharges")
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(4)]
    for r in [header] + rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    out.write("(+ proof line, - dual line, +/- dashed; @n names the premise a bracket is discharged in)\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="twoint", description="Proof checker for the bi-intuitionistic logic 2Int.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check a .2int proof script")
    c.add_argument("file")
    c.add_argument("--strict", action="store_true", help="also require every context formula to be used")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("expand", help="rewrite strong negation into its 2Int definition")
    e.add_argument("formula")
    e.set_defaults(func=cmd_expand)

    el = sub.add_parser("elaborate", help="print a script with derived rules expanded")
    el.add_argument("file")
    el.set_defaults(func=cmd_elaborate)

    s = sub.add_parser("search", help="bounded proof search")
    s.add_argument("judgment", help="'a, b ; c |-+ goal' or '(judgment (gamma ...) (delta ...) proof goal)'")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-definability", help="check the four derived strong-negation rules")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rules", help="list the rule catalog")
    r.set_defaults(func=cmd_rules)
    return p


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args, out)
    except (fm.ParseError, ScriptError, UsageError) as e:
        err.write(f"twoint {args.command}: error: {e}\n")
        return 2


def main():
    sys.exit(run_cli())

"""Bounded backward proof search over the 2Int rule catalog.

Best effort only: a ``None`` result means nothing was found within the
bound, not that the judgment is underivable.  Elimination rules draw their
major premise from a finite candidate pool (by default the subformulas of
the judgment), which keeps branching finite at the price of completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .formula import sort_key, subformulas
from .kernel import (
    DASHED, Judgment, LeafCtx, LeafDischarged, Meta, Mode, Node, instantiate, match,
    relabel, rule_catalog, subtrees,
)


@dataclass(frozen=True)
class SearchConfig:
    depth_bound: int = 8
    # "subformula" or an explicit sequence of formulas
    candidate_pool: Union[str, Sequence] = "subformula"
    dashed_policy: str = "try-both"

    def __post_init__(self):
        if self.depth_bound < 1:
            raise ValueError("depth_bound must be at least 1")
        if self.dashed_policy != "try-both":
            raise ValueError(f"unsupported dashed policy {self.dashed_policy!r}")


def _metas(pattern, out):
    if isinstance(pattern, Meta):
        out.add(pattern.name)
    elif hasattr(pattern, "l"):
        _metas(pattern.l, out)
        _metas(pattern.r, out)
    return out


def _prepare(desc):
    """Metavariables the conclusion leaves open; these come from the pool."""
    free = set()
    for line in desc.premises:
        _metas(line.shape, free)
    free -= _metas(desc.conclusion.shape, set())
    if free:
        # every open letter occurs in the major (first) premise
        assert free <= _metas(desc.premises[0].shape, set()), desc.id
    return free


_CATALOG = [(d, _prepare(d)) for d in rule_catalog()]


def candidate_pool(j: Judgment):
    pool = set(subformulas(j.goal))
    for f in j.gamma | j.delta:
        pool |= subformulas(f)
    return sorted(pool, key=sort_key)


class _Search:
    def __init__(self, j, pool):
        self.j = j
        self.pool = pool
        self.failed = set()
        self.next_label = 0

    def prove(self, goal, mode, hyps, depth):
        if depth < 1:
            return None
        key = (goal, mode, frozenset(hyps), depth)
        if key in self.failed:
            return None
        tree = self._prove(goal, mode, hyps, depth)
        if tree is None:
            self.failed.add(key)
        return tree

    def _prove(self, goal, mode, hyps, depth):
        if mode is Mode.PROOF and goal in self.j.gamma:
            return LeafCtx(goal, mode)
        if mode is Mode.DUAL and goal in self.j.delta:
            return LeafCtx(goal, mode)
        if (mode, goal) in hyps:
            return LeafDischarged(goal, mode, hyps[(mode, goal)])
        for desc, free in _CATALOG:
            concl = desc.conclusion
            if concl.mode != DASHED and concl.mode is not mode:
                continue
            binding = {}
            if not match(concl.shape, goal, binding):
                continue
            for b in self._bindings(desc, free, binding):
                tree = self._apply(desc, b, goal, mode, hyps, depth)
                if tree is not None:
                    return tree
        return None

    def _bindings(self, desc, free, binding):
        if not free:
            yield binding
            return
        major = desc.premises[0].shape
        for f in self.pool:
            b = dict(binding)
            if match(major, f, b):
                yield b

    def _apply(self, desc, binding, goal, mode, hyps, depth):
        inst = mode if desc.dashed else None
        label = None
        if desc.discharges:
            self.next_label += 1
            label = self.next_label
        premises = []
        for i, line in enumerate(desc.premises):
            pmode = inst if line.mode == DASHED else line.mode
            inner = hyps
            attached = [d for d in desc.discharges if d.premise == i]
            if attached:
                inner = dict(hyps)
                for d in attached:
                    inner[(d.kind, instantiate(d.shape, binding))] = label
            sub = self.prove(instantiate(line.shape, binding), pmode, inner, depth - 1)
            if sub is None:
                return None
            premises.append(sub)
        return Node(desc.id, goal, mode, tuple(premises), inst, label)


def search(j: Judgment, cfg: Optional[SearchConfig] = None):
    """Find a tree checking against `j` with height at most cfg.depth_bound, or None.

    Iterative deepening: the first tree found has minimal height among those
    the pool allows.  Deterministic for fixed (j, cfg).
    """
    cfg = cfg or SearchConfig()
    if cfg.candidate_pool == "subformula":
        pool = candidate_pool(j)
    else:
        pool = sorted(set(cfg.candidate_pool), key=sort_key)
    s = _Search(j, pool)
    for depth in range(1, cfg.depth_bound + 1):
        tree = s.prove(j.goal, j.mode, {}, depth)
        if tree is not None:
            return _renumber(tree)
    return None


def _renumber(tree):
    """Relabel binders 1, 2, ... in pre-order."""
    mapping = {}
    for _, t in subtrees(tree):
        if isinstance(t, Node) and t.label is not None:
            mapping[t.label] = len(mapping) + 1
    return relabel(tree, mapping)

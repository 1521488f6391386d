"""Model checking for the full language.

Extensions are computed bottom-up as world bitmasks; shared subformulas are
evaluated once per ``Evaluator``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    Atom, B, Bot, D, DBold, DCaut, Formula, Iff, Imp, Inc, Not, Top, And, Or,
    as_formula, walk,
)
from .model import BeliefModel, Group, ModelError, from_mask


class BindingError(ValueError):
    """A formula names an agent the model does not have."""


@dataclass(frozen=True)
class Extension:
    formula: Formula
    worlds: frozenset[int]


class Evaluator:
    """Memoizing extension computer bound to one model.

    The memo is private to the instance, so separate evaluators can run
    concurrently on the same model.
    """

    def __init__(self, model: BeliefModel):
        self.model = model
        self._memo: dict[Formula, int] = {}
        self._groups: dict[tuple[str, ...], int] = {}

    def gmask(self, names: tuple[str, ...]) -> int:
        got = self._groups.get(names)
        if got is None:
            try:
                got = Group(tuple(self.model.agent_index(a) for a in names)).mask
            except ModelError as exc:
                raise BindingError(str(exc)) from None
            self._groups[names] = got
        return got

    def ext(self, f: Formula) -> int:
        memo = self._memo
        got = memo.get(f)
        if got is not None:
            return got
        # explicit post-order so deep translation outputs do not hit the recursion limit
        stack = [(f, False)]
        while stack:
            node, ready = stack.pop()
            if node in memo:
                continue
            kids = node.children()
            if not ready and any(k not in memo for k in kids):
                stack.append((node, True))
                stack.extend((k, False) for k in kids if k not in memo)
                continue
            memo[node] = self._step(node)
        return memo[f]

    def _step(self, node: Formula) -> int:
        m = self.model
        full = m.all_worlds
        memo = self._memo
        t = type(node)
        if t is Atom:
            return m.atom_mask(node.name)
        if t is Top:
            return full
        if t is Bot:
            return 0
        if t is Not:
            return full & ~memo[node.body]
        if t is And:
            return memo[node.left] & memo[node.right]
        if t is Or:
            return memo[node.left] | memo[node.right]
        if t is Imp:
            return (full & ~memo[node.left]) | memo[node.right]
        if t is Iff:
            return full & ~(memo[node.left] ^ memo[node.right])
        if t is Inc:
            g = self.gmask(node.group)
            return sum(1 << w for w in range(m.world_count) if not m.gcs(g, w))
        body = memo[node.body]
        out = 0
        if t is B:
            try:
                a = m.agent_index(node.agent)
            except ModelError as exc:
                raise BindingError(str(exc)) from None
            row = m.succ_table(a)
            for w in range(m.world_count):
                if not row[w] & ~body:
                    out |= 1 << w
            return out
        g = self.gmask(node.group)
        for w in range(m.world_count):
            if t is D:
                holds = not m.gcs(g, w) & ~body
            elif t is DCaut:
                holds = not m.cautious(g, w) & ~body
            elif t is DBold:
                holds = any(not core & ~body for core in m.cores(g, w))
            else:
                raise TypeError(f"unknown formula node {node!r}")
            if holds:
                out |= 1 << w
        return out


def extension_mask(m: BeliefModel, f: Formula | str) -> int:
    return Evaluator(m).ext(as_formula(f))


def extension(m: BeliefModel, f: Formula | str) -> Extension:
    f = as_formula(f)
    return Extension(f, from_mask(Evaluator(m).ext(f)))


def evaluate(m: BeliefModel, w: int | str, f: Formula | str) -> bool:
    """Truth of ``f`` at world ``w`` (index or name)."""
    w = m.world_index(w)
    return bool(Evaluator(m).ext(as_formula(f)) >> w & 1)


def valid_in_model(m: BeliefModel, f: Formula | str) -> bool:
    return Evaluator(m).ext(as_formula(f)) == m.all_worlds


def trace(m: BeliefModel, w: int | str, f: Formula | str) -> list[str]:
    """Human-readable lines: each distinct subformula's extension, then the
    maximally consistent subgroups at ``w`` for every group the formula uses."""
    f = as_formula(f)
    w = m.world_index(w)
    ev = Evaluator(m)
    ev.ext(f)
    nodes = list(walk(f))
    lines = []
    seen = set()
    for node in reversed(nodes):
        if node in seen:
            continue
        seen.add(node)
        worlds = ", ".join(m.world_names(ev.ext(node)))
        lines.append(f"[{worlds}]  {node}")
    groups = sorted({n.group for n in nodes if isinstance(n, (D, DCaut, DBold, Inc))})
    for names in groups:
        g = ev.gmask(names)
        family = [
            "{" + ",".join(m.agents[a] for a in Group.from_mask(h)) + "}" for h in m.mcs(g, w)
        ]
        lines.append(
            f"mcs {{{','.join(names)}}} at {m.worlds[w]}: " + (" ".join(family) if family else "none")
        )
    return lines

"""Syntactic translations between the distributed-belief languages.

Each translation rewrites innermost modalities first and keeps sharing: a
subtree that occurs several times in the input is rewritten once.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable

from .formula import (
    B, BOT, And, D, DBold, DCaut, Formula, Imp, Inc, LanguageTag, Not, Or,
    as_formula, conj, disj, in_language, language_of,
)


class LanguageError(ValueError):
    """The input formula is outside the translation's source language."""


def subgroups(group: tuple[str, ...]) -> list[tuple[str, ...]]:
    """Non-empty subgroups in lexicographic order of their sorted member lists."""
    out = [c for k in range(1, len(group) + 1) for c in combinations(group, k)]
    return sorted(out)


def _rewrite(f: Formula, rule: Callable[[Formula, Formula], Formula | None]) -> Formula:
    """Rebuild ``f`` bottom-up; ``rule(node, new_body)`` may replace modal nodes."""
    memo: dict[int, Formula] = {}

    def go(node):
        got = memo.get(id(node))
        if got is not None:
            return got
        kids = node.children()
        if not kids:
            got = rule(node, None) or node
        else:
            new = tuple(go(k) for k in kids)
            if isinstance(node, Not):
                got = node if new[0] is node.body else Not(new[0])
            elif hasattr(node, "body"):
                got = rule(node, new[0])
                if got is None:
                    got = node if new[0] is node.body else _with_body(node, new[0])
            else:
                got = node if all(a is b for a, b in zip(new, kids)) else type(node)(*new)
        memo[id(node)] = got
        return got

    return go(f)


def _with_body(node, body):
    if isinstance(node, B):
        return B(node.agent, body)
    return type(node)(node.group, body)


def _require(f: Formula, tag: LanguageTag) -> Formula:
    f = as_formula(f)
    if not in_language(f, tag):
        raise LanguageError(f"formula is in {language_of(f)}, expected {tag}")
    return f


def cautious_to_d(f: Formula | str) -> Formula:
    """Replace each DC{G}x by its distributed-belief definition over subgroups."""
    f = _require(f, LanguageTag.L_DCaut)

    def rule(node, body):
        if not isinstance(node, DCaut):
            return None
        g = node.group
        clauses = []
        for sub in subgroups(g):
            supers = [h for h in subgroups(g) if len(h) > len(sub) and set(sub) < set(h)]
            guard = And(Not(D(sub, BOT)), conj(D(h, BOT) for h in supers))
            clauses.append(Imp(guard, D(sub, body)))
        return conj(clauses)

    return _rewrite(f, rule)


def bold_to_d(f: Formula | str) -> Formula:
    """Replace each DB{G}x by: some consistent subgroup distributedly believes x."""
    f = _require(f, LanguageTag.L_DBold)

    def rule(node, body):
        if not isinstance(node, DBold):
            return None
        return disj(And(Not(D(sub, BOT)), D(sub, body)) for sub in subgroups(node.group))

    return _rewrite(f, rule)


def _d_rule(target):
    def rule(node, body):
        if isinstance(node, B):
            return Or(Inc((node.agent,)), target((node.agent,), body))
        if isinstance(node, D):
            return Or(Inc(node.group), target(node.group, body))
        return None

    return rule


def d_to_cautious_inc(f: Formula | str) -> Formula:
    """Replace each D{G}x (and B{a}x) by Inc{G} | DC{G}x."""
    return _rewrite(_require(f, LanguageTag.L_D), _d_rule(DCaut))


def d_to_bold_inc(f: Formula | str) -> Formula:
    """Replace each D{G}x (and B{a}x) by Inc{G} | DB{G}x."""
    return _rewrite(_require(f, LanguageTag.L_D), _d_rule(DBold))


def bold_to_cautious(f: Formula | str) -> Formula:
    """Replace each DB{G}x by a disjunction of consistent cautious beliefs over subgroups."""
    f = _require(f, LanguageTag.L_DBold)

    def rule(node, body):
        if not isinstance(node, DBold):
            return None
        return disj(And(DCaut(sub, body), Not(DCaut(sub, BOT))) for sub in subgroups(node.group))

    return _rewrite(f, rule)


# name -> (function, source language, target language)
TRANSLATIONS: dict[str, tuple[Callable[[Formula], Formula], LanguageTag, LanguageTag]] = {
    "cautious_to_d": (cautious_to_d, LanguageTag.L_DCaut, LanguageTag.L_D),
    "bold_to_d": (bold_to_d, LanguageTag.L_DBold, LanguageTag.L_D),
    "d_to_cautious_inc": (d_to_cautious_inc, LanguageTag.L_D, LanguageTag.L_DCaut_Inc),
    "d_to_bold_inc": (d_to_bold_inc, LanguageTag.L_D, LanguageTag.L_DBold_Inc),
    "bold_to_cautious": (bold_to_cautious, LanguageTag.L_DBold, LanguageTag.L_DCaut),
}

# command-line target names
CLI_TARGETS = {
    "D": None,
    "DfromDCaut": "cautious_to_d",
    "DfromDBold": "bold_to_d",
    "DCautInc": "d_to_cautious_inc",
    "DBoldInc": "d_to_bold_inc",
    "DCautFromDBold": "bold_to_cautious",
}


def to_d(f: Formula | str) -> Formula:
    """Translate a formula of L_D, L_DCaut or L_DBold into L_D."""
    f = as_formula(f)
    tag = language_of(f)
    if tag is LanguageTag.L_D:
        return f
    if tag is LanguageTag.L_DCaut:
        return cautious_to_d(f)
    if tag is LanguageTag.L_DBold:
        return bold_to_d(f)
    raise LanguageError(f"no translation into L_D from {tag}")


def translate_for_cli(f: Formula | str, target: str) -> Formula:
    if target not in CLI_TARGETS:
        raise LanguageError(f"unknown target {target!r}; choose from {', '.join(CLI_TARGETS)}")
    name = CLI_TARGETS[target]
    if name is None:
        return to_d(f)
    return TRANSLATIONS[name][0](f)

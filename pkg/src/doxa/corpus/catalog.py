"""Hand-encoded models with the verdicts they are known to produce.

Each fixture bundles one or more models with expectations that the checker,
bisimulation and frame modules can re-verify.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..bisim import BisimRelation, check_bisim, greatest_bisim
from ..frames import (
    check_neighbourhood, check_relational, group_property, instance_fails,
    neighbourhood_instance_fails,
)
from ..model import BeliefModel, Group
from ..semantics import evaluate


@dataclass(frozen=True)
class Truth:
    """``formula`` has truth value ``expected`` at ``world`` of model ``model``."""

    model: str
    world: str
    formula: str
    expected: bool

    def check(self, models):
        got = evaluate(models[self.model], self.world, self.formula)
        return got == self.expected, f"{self.model},{self.world} |= {self.formula}: {got}"


@dataclass(frozen=True)
class InGreatest:
    """Membership of ``pairs`` in the greatest bisimulation of ``kind``."""

    left: str
    right: str
    kind: str
    pairs: tuple[tuple[str, str], ...]
    expected: bool = True

    def check(self, models):
        z = greatest_bisim(models[self.left], models[self.right], self.kind)
        found = [p in z for p in self.pairs]
        ok = all(f == self.expected for f in found)
        return ok, f"{self.kind} greatest contains {list(self.pairs)}: {found}"


@dataclass(frozen=True)
class IsBisim:
    """``check_bisim`` verdict for an explicit relation."""

    left: str
    right: str
    kind: str
    pairs: tuple[tuple[str, str], ...]
    expected: bool = True

    def check(self, models):
        z = BisimRelation.named(models[self.left], models[self.right], self.pairs, self.kind)
        result = check_bisim(z)
        return result.ok == self.expected, f"{self.kind} relation {list(self.pairs)}: {result}"


@dataclass(frozen=True)
class Violation:
    """Group ``{a,b}`` breaks ``prop`` while every member satisfies ``member_conditions``.

    ``witness`` is the tuple cited for the frame, by world name, with a set of
    names for neighbourhood clauses; it must itself break the clause.
    """

    model: str
    notion: str
    prop: str
    member_conditions: tuple[str, ...]
    witness: tuple

    def check(self, models):
        m = models[self.model]
        gmask = Group(tuple(range(m.agent_count))).mask
        members_ok = True
        for a in range(m.agent_count):
            for cond in self.member_conditions:
                if cond.endswith("N"):
                    res = check_neighbourhood(m, a, cond)
                else:
                    res = check_relational(m.relations[a], range(m.world_count), cond)
                members_ok = members_ok and res.ok
        found = group_property(m, gmask, self.prop, self.notion)
        if self.notion == "cautious":
            rows = [m.cautious(gmask, w) for w in range(m.world_count)]
            cited = instance_fails(rows, self.prop, tuple(m.world_index(x) for x in self.witness))
        else:
            cores_at = [m.cores(gmask, w) for w in range(m.world_count)]
            w, names = self.witness
            u = sum(1 << m.world_index(x) for x in names)
            cited = neighbourhood_instance_fails(cores_at, m.world_count, self.prop, m.world_index(w), u)
        ok = members_ok and found is not None and cited
        return ok, f"{self.model} {self.notion} {self.prop}: members {members_ok}, found {found}, cited {cited}"


@dataclass
class Fixture:
    id: str
    models: dict[str, BeliefModel]
    points: dict[str, tuple[str, str]] = field(default_factory=dict)
    expectations: list = field(default_factory=list)

    def check(self) -> list[tuple[bool, str]]:
        return [e.check(self.models) for e in self.expectations]


def _model(agents: str, worlds: Iterable[str], edges: dict[str, str], valuation=None, points=None) -> BeliefModel:
    """Edges per agent as ``"w1>w2 w2>w2"`` strings."""
    relations = {a: [tuple(e.split(">")) for e in spec.split()] for a, spec in edges.items()}
    return BeliefModel(list(agents), list(worlds), relations, valuation or {}, points or {})


def _frame(pairs_a: str, pairs_b: str, n: int) -> BeliefModel:
    """Two-agent frame on worlds w1..wn, pairs written ``"12 22"``."""
    conv = lambda spec: " ".join(f"w{p[0]}>w{p[1]}" for p in spec.split())
    return _model("ab", [f"w{i}" for i in range(1, n + 1)], {"a": conv(pairs_a), "b": conv(pairs_b)})


def example_model() -> BeliefModel:
    loops = "w2>w2 w3>w3 w4>w4"
    return _model(
        "abc",
        ["w1", "w2", "w3", "w4"],
        {"a": "w1>w2 " + loops, "b": "w1>w3 w1>w1 " + loops, "c": "w1>w1 w1>w4 " + loops},
        {"p": ["w1", "w2", "w4"], "q": ["w1", "w3"]},
        {"main": "w1"},
    )


# the fourteen verdicts cited for the example model at w1
EXAMPLE_CLAIMS = (
    ("B{a}p & B{a}~q", True),
    ("(~B{b}p & ~B{b}~p) & B{b}q", True),
    ("B{c}p & (~B{c}q & ~B{c}~q)", True),
    ("DC{a,b}p", False),
    ("DC{a,b}q", False),
    ("D{a,b}p & D{a,b}q", True),
    ("D{a,b}bot", True),
    ("DC{a,b,c}p & ~DC{a,b,c}q", True),
    ("D{a,b,c}p & D{a,b,c}q & D{a,b,c}bot", True),
    ("DB{a,b}p & DB{a,b}q", True),
    ("DB{a,b}~q", True),
    ("DB{a,b}bot", False),
    ("DB{a,b}(q & ~q)", False),
    ("DB{a,b,c}(p & q)", True),
)


def fixture_example() -> Fixture:
    models = {"M": example_model()}
    exp = [Truth("M", "w1", f, v) for f, v in EXAMPLE_CLAIMS]
    exp.append(Truth("M", "w1", "DC{b}q", True))
    exp.append(Truth("M", "w1", "DC{a,b}q", False))
    return Fixture("example", models, {"main": ("M", "w1")}, exp)


def separation_models() -> tuple[BeliefModel, BeliefModel]:
    """Two points that only D{a,b}bot tells apart."""
    left = _model("ab", ["w", "u"], {"a": "w>u u>u", "b": "w>u u>u"}, {"p": ["w"]}, {"main": "w"})
    right = _model(
        "ab",
        ["w'", "u'1", "u'2"],
        {"a": "w'>u'1 u'1>u'1 u'2>u'2", "b": "w'>u'2 u'1>u'1 u'2>u'2"},
        {"p": ["w'"]},
        {"main": "w'"},
    )
    return left, right


SEPARATION_PAIRS = (("w", "w'"), ("u", "u'1"), ("u", "u'2"))


def fixture_separation() -> Fixture:
    left, right = separation_models()
    models = {"M": left, "M'": right}
    exp = [
        InGreatest("M", "M'", "cautious", SEPARATION_PAIRS),
        InGreatest("M", "M'", "bold", SEPARATION_PAIRS),
        InGreatest("M", "M'", "collective", (("w", "w'"),), expected=False),
        IsBisim("M", "M'", "cautious", SEPARATION_PAIRS),
        IsBisim("M", "M'", "bold_v1", SEPARATION_PAIRS),
        IsBisim("M", "M'", "bold_v2", SEPARATION_PAIRS),
        IsBisim("M", "M'", "collective", SEPARATION_PAIRS, expected=False),
        Truth("M", "w", "D{a,b}bot", False),
        Truth("M'", "w'", "D{a,b}bot", True),
    ]
    return Fixture("separation", models, {"left": ("M", "w"), "right": ("M'", "w'")}, exp)


def bold_cautious_models() -> tuple[BeliefModel, BeliefModel]:
    """Bold-bisimilar points that DC{a,b}p tells apart."""
    left = _model("ab", ["w", "u1", "u2", "u3"], {"a": "w>u1 w>u2", "b": "w>u3"}, {"p": ["u2", "u3"]}, {"main": "w"})
    right = _model(
        "ab",
        ["w'", "u'1", "u'2", "u'3"],
        {"a": "w'>u'1 w'>u'2", "b": "w'>u'2 w'>u'3"},
        {"p": ["u'2", "u'3"]},
        {"main": "w'"},
    )
    return left, right


BOLD_CAUTIOUS_PAIRS = (("w", "w'"), ("u1", "u'1"), ("u2", "u'2"), ("u3", "u'2"), ("u3", "u'3"))


def fixture_bold_cautious() -> Fixture:
    left, right = bold_cautious_models()
    models = {"M": left, "M'": right}
    exp = [
        InGreatest("M", "M'", "bold", BOLD_CAUTIOUS_PAIRS),
        InGreatest("M", "M'", "cautious", (("w", "w'"),), expected=False),
        IsBisim("M", "M'", "bold_v1", BOLD_CAUTIOUS_PAIRS),
        IsBisim("M", "M'", "bold_v2", BOLD_CAUTIOUS_PAIRS),
        Truth("M", "w", "DC{a,b}p", False),
        Truth("M'", "w'", "DC{a,b}p", True),
    ]
    return Fixture("bold-vs-cautious", models, {"left": ("M", "w"), "right": ("M'", "w'")}, exp)


def non_normal_models() -> tuple[BeliefModel, BeliefModel]:
    m1 = _model("ab", ["w1", "w2", "w3"], {"a": "w1>w2 w2>w2 w3>w3", "b": "w1>w3 w2>w2 w3>w3"}, {"p": ["w3"]})
    m2 = _model("a", ["w1", "w2", "w3"], {"a": "w1>w2 w1>w3 w2>w2 w3>w3"}, {"p": ["w3"]})
    return m1, m2


def fixture_non_normal() -> Fixture:
    m1, m2 = non_normal_models()
    models = {"M1": m1, "M2": m2}
    exp = [
        Truth("M1", "w1", "DB{a,b}(p -> q)", True),
        Truth("M1", "w1", "DB{a,b}p", True),
        Truth("M1", "w1", "DB{a,b}q", False),
        Truth("M1", "w1", "DB{a,b}(p -> q) -> (DB{a,b}p -> DB{a,b}q)", False),
        Truth("M2", "w1", "dDB{a}(p -> q)", True),
        Truth("M2", "w1", "dDB{a}p", True),
        Truth("M2", "w1", "dDB{a}q", False),
        Truth("M2", "w1", "dDB{a}(p -> q) -> (dDB{a}p -> dDB{a}q)", False),
    ]
    return Fixture("non-normal", models, {"M1": ("M1", "w1"), "M2": ("M2", "w1")}, exp)


def conjunction_model() -> BeliefModel:
    return _model("ab", ["w1", "w2"], {"a": "w1>w1 w2>w2", "b": "w1>w2 w2>w2"}, {"p": ["w1"], "q": ["w2"]})


def fixture_conjunction() -> Fixture:
    exp = [
        Truth("M", "w1", "DB{a,b}p & DB{a,b}q", True),
        Truth("M", "w1", "DB{a,b}(p & q)", False),
    ]
    return Fixture("conjunction", {"M": conjunction_model()}, {"main": ("M", "w1")}, exp)


# (name, R_a, R_b, worlds, violated property, member conditions, witness)
CAUTIOUS_FRAMES = (
    ("F1", "12 22 33", "11 23 33", 3, "t", ("l", "t", "e"), ("w1", "w2", "w3")),
    ("F2", "11 12 21 22", "22", 2, "s", ("t", "e", "s"), ("w1", "w2")),
    ("F3", "12 21 22 33", "13 31 33 22", 3, "s", ("l", "s"), ("w1", "w3")),
    ("F4", "12 22 33", "13 22 33", 3, "e", ("l", "t", "e"), ("w1", "w2", "w3")),
    ("F5", "11 12 13 21 22 23 31 32 33", "22", 3, "e", ("t", "s", "e"), ("w1", "w2", "w1")),
)

BOLD_FRAMES = (
    ("F1", "12 22", "11 22", 2, "lN", ("l", "t", "e", "lN"), ("w1", frozenset({"w2"}))),
    ("F2", "12 21", "11 22", 2, "lN", ("l", "s", "lN"), ("w1", frozenset({"w2"}))),
    ("F3", "13 12 23 33 44", "12 14 24 33 44", 4, "tN", ("l", "tN"), ("w1", frozenset({"w2"}))),
    ("F4", "12 21 22 33", "13 31 33 22", 3, "sN", ("l", "s", "sN"), ("w1", frozenset({"w1"}))),
    ("F5", "11 12 21 22", "22 23 32 33", 3, "sN", ("t", "e", "sN"), ("w1", frozenset({"w1", "w3"}))),
    ("F5", "11 12 21 22", "22 23 32 33", 3, "eN", ("t", "s", "eN"), ("w1", frozenset({"w2"}))),
    ("F6", "12 22 34 44", "13 24 33 44", 4, "eN", ("t", "l", "eN"), ("w1", frozenset({"w4"}))),
)


def counterexample_frame(notion: str, name: str) -> BeliefModel:
    table = CAUTIOUS_FRAMES if notion == "cautious" else BOLD_FRAMES
    for row in table:
        if row[0] == name:
            return _frame(row[1], row[2], row[3])
    raise KeyError(f"no {notion} frame {name}")


def fixture_frames(notion: str) -> Fixture:
    table = CAUTIOUS_FRAMES if notion == "cautious" else BOLD_FRAMES
    models = {}
    exp = []
    for name, ra, rb, n, prop, conds, witness in table:
        models[name] = _frame(ra, rb, n)
        exp.append(Violation(name, notion, prop, conds, witness))
    return Fixture(f"{notion}-frames", models, {}, exp)


def fixtures() -> list[Fixture]:
    return [
        fixture_example(),
        fixture_separation(),
        fixture_bold_cautious(),
        fixture_non_normal(),
        fixture_conjunction(),
        fixture_frames("cautious"),
        fixture_frames("bold"),
    ]

"""Bisimulations for the three distributed-belief languages.

Relations are held as per-world bitmasks: ``fwd[u]`` is the set of right-hand
worlds related to left world ``u`` and ``bwd[v]`` the converse.  The greatest
bisimulation is found by synchronous refinement; every round snapshot is
kept so that distinguishing formulas can be rebuilt from the round in which
a pair was deleted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .formula import And, Atom, DBold, DCaut, D, Formula, LanguageTag, Not, Or, conj, disj
from .model import BeliefModel, ModelError, iter_bits, submasks
from .semantics import Evaluator


class BisimKind(str, Enum):
    COLLECTIVE = "collective"
    CAUTIOUS = "cautious"
    BOLD_V1 = "bold_v1"
    BOLD_V2 = "bold_v2"

    @classmethod
    def parse(cls, value: "BisimKind | str") -> "BisimKind":
        if isinstance(value, BisimKind):
            return value
        if value == "bold":
            return cls.BOLD_V2
        return cls(value)

    def __str__(self):
        return self.value


LANGUAGE_KIND = {
    LanguageTag.L_D: BisimKind.COLLECTIVE,
    LanguageTag.L_DCaut: BisimKind.CAUTIOUS,
    LanguageTag.L_DBold: BisimKind.BOLD_V2,
}


@dataclass(frozen=True)
class BisimRelation:
    left: BeliefModel
    right: BeliefModel
    pairs: frozenset[tuple[int, int]]
    kind: BisimKind = BisimKind.COLLECTIVE

    def __post_init__(self):
        object.__setattr__(self, "kind", BisimKind.parse(self.kind))
        object.__setattr__(self, "pairs", frozenset(self.pairs))

    @classmethod
    def named(cls, left, right, pairs: Iterable[tuple[str, str]], kind) -> "BisimRelation":
        return cls(left, right, frozenset((left.world_index(a), right.world_index(b)) for a, b in pairs), kind)

    def __contains__(self, pair):
        a, b = pair
        return (self.left.world_index(a), self.right.world_index(b)) in self.pairs

    def named_pairs(self) -> list[tuple[str, str]]:
        return [(self.left.worlds[a], self.right.worlds[b]) for a, b in sorted(self.pairs)]

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    pair: tuple[int, int] | None = None
    clause: str | None = None
    group: tuple[str, ...] | None = None

    def __bool__(self):
        return self.ok


@dataclass
class _Failure:
    clause: str
    gmask: int
    # forth: left core/world that failed; back: right core/world
    detail: int


def _align(m1: BeliefModel, m2: BeliefModel) -> list[int]:
    """Right-hand agent index for each left agent, matched by name."""
    if set(m1.agents) != set(m2.agents):
        raise ModelError(f"agent sets differ: {list(m1.agents)} vs {list(m2.agents)}")
    return [m2.agent_index(a) for a in m1.agents]


class _Pairing:
    """Clause checks for one kind between two models."""

    def __init__(self, m1: BeliefModel, m2: BeliefModel, kind: BisimKind):
        self.m1, self.m2, self.kind = m1, m2, kind
        amap = _align(m1, m2)
        self.groups = [(g, sum(1 << amap[a] for a in iter_bits(g))) for g in submasks(m1.all_agents)]
        atoms = sorted(set(m1.atoms) | set(m2.atoms))
        self.atoms = atoms
        self.lab1 = [tuple(m1.atom_mask(p) >> w & 1 for p in atoms) for w in range(m1.world_count)]
        self.lab2 = [tuple(m2.atom_mask(p) >> w & 1 for p in atoms) for w in range(m2.world_count)]

    def group_names(self, g1: int) -> tuple[str, ...]:
        return tuple(self.m1.agents[a] for a in iter_bits(g1))

    def successors(self, w1, w2, g1, g2):
        if self.kind is BisimKind.COLLECTIVE:
            return self.m1.gcs(g1, w1), self.m2.gcs(g2, w2)
        return self.m1.cautious(g1, w1), self.m2.cautious(g2, w2)

    def violation(self, w1: int, w2: int, fwd, bwd, pairs=None) -> _Failure | None:
        """First clause failing at (w1, w2) for the relation given as masks."""
        if self.lab1[w1] != self.lab2[w2]:
            return _Failure("atom", 0, 0)
        for g1, g2 in self.groups:
            if self.kind in (BisimKind.COLLECTIVE, BisimKind.CAUTIOUS):
                s1, s2 = self.successors(w1, w2, g1, g2)
                for u in iter_bits(s1):
                    if not fwd[u] & s2:
                        return _Failure("forth", g1, u)
                for v in iter_bits(s2):
                    if not bwd[v] & s1:
                        return _Failure("back", g1, v)
            elif self.kind is BisimKind.BOLD_V2:
                c1 = self.m1.cores(g1, w1)
                c2 = self.m2.cores(g2, w2)
                for core in c1:
                    image = 0
                    for u in iter_bits(core):
                        image |= fwd[u]
                    if not any(not other & ~image for other in c2):
                        return _Failure("forth", g1, core)
                for core in c2:
                    image = 0
                    for v in iter_bits(core):
                        image |= bwd[v]
                    if not any(not other & ~image for other in c1):
                        return _Failure("back", g1, core)
            else:
                failure = self._v1(w1, w2, g1, g2, pairs)
                if failure:
                    return failure
        return None

    def _v1(self, w1, w2, g1, g2, pairs):
        """Subgroup-and-world formulation, checked pair by pair."""
        m1, m2 = self.m1, self.m2
        left = [m1.gcs(h, w1) for h in m1.mcs(g1, w1)]
        right = [m2.gcs(h, w2) for h in m2.mcs(g2, w2)]
        worlds1 = range(m1.world_count)
        worlds2 = range(m2.world_count)
        for h_set in left:
            ok = False
            for h2_set in right:
                covered = True
                for v in worlds2:
                    if h2_set >> v & 1 and not any(h_set >> u & 1 and (u, v) in pairs for u in worlds1):
                        covered = False
                        break
                if covered:
                    ok = True
                    break
            if not ok:
                return _Failure("forth", g1, h_set)
        for h2_set in right:
            ok = False
            for h_set in left:
                covered = True
                for u in worlds1:
                    if h_set >> u & 1 and not any(h2_set >> v & 1 and (u, v) in pairs for v in worlds2):
                        covered = False
                        break
                if covered:
                    ok = True
                    break
            if not ok:
                return _Failure("back", g1, h2_set)
        return None


def _masks(pairs, n1, n2):
    fwd = [0] * n1
    bwd = [0] * n2
    for a, b in pairs:
        fwd[a] |= 1 << b
        bwd[b] |= 1 << a
    return fwd, bwd


def check_bisim(z: BisimRelation) -> CheckResult:
    """Verify every clause of ``z.kind`` on every pair of ``z``.

    The empty relation is not accepted as a bisimulation.
    """
    m1, m2 = z.left, z.right
    if not z.pairs:
        return CheckResult(False, None, "empty", None)
    for a, b in z.pairs:
        if not (0 <= a < m1.world_count and 0 <= b < m2.world_count):
            raise ModelError(f"pair {(a, b)} out of range")
    pairing = _Pairing(m1, m2, z.kind)
    fwd, bwd = _masks(z.pairs, m1.world_count, m2.world_count)
    for pair in sorted(z.pairs):
        failure = pairing.violation(pair[0], pair[1], fwd, bwd, z.pairs)
        if failure:
            group = pairing.group_names(failure.gmask) if failure.gmask else None
            return CheckResult(False, pair, failure.clause, group)
    return CheckResult(True)


@dataclass
class Refinement:
    """The greatest bisimulation together with its deletion history."""

    pairing: _Pairing
    snapshots: list[frozenset[tuple[int, int]]] = field(default_factory=list)
    deleted_at: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def final(self) -> frozenset[tuple[int, int]]:
        return self.snapshots[-1]


def refine(m1: BeliefModel, m2: BeliefModel, kind: BisimKind | str) -> Refinement:
    kind = BisimKind.parse(kind)
    pairing = _Pairing(m1, m2, kind)
    n1, n2 = m1.world_count, m2.world_count
    everything = [(a, b) for a in range(n1) for b in range(n2)]
    current = frozenset(p for p in everything if pairing.lab1[p[0]] == pairing.lab2[p[1]])
    ref = Refinement(pairing, [current])
    for p in everything:
        if p not in current:
            ref.deleted_at[p] = 0
    rounds = 0
    while True:
        rounds += 1
        fwd, bwd = _masks(current, n1, n2)
        doomed = {p for p in current if pairing.violation(p[0], p[1], fwd, bwd, current)}
        if not doomed:
            return ref
        for p in doomed:
            ref.deleted_at[p] = rounds
        current = current - doomed
        ref.snapshots.append(current)


def greatest_bisim(m1: BeliefModel, m2: BeliefModel, kind: BisimKind | str) -> BisimRelation:
    """Largest bisimulation of the given kind (``bold`` means the core-image form)."""
    kind = BisimKind.parse(kind)
    return BisimRelation(m1, m2, refine(m1, m2, kind).final, kind)


class Distinguisher:
    """Builds formulas separating pairs outside the greatest bisimulation."""

    _MOD = {BisimKind.COLLECTIVE: D, BisimKind.CAUTIOUS: DCaut, BisimKind.BOLD_V2: DBold}

    def __init__(self, m1: BeliefModel, m2: BeliefModel, lang: LanguageTag | str):
        lang = LanguageTag(lang)
        if lang not in LANGUAGE_KIND:
            raise ValueError(f"no bisimulation for {lang}")
        self.m1, self.m2 = m1, m2
        self.kind = LANGUAGE_KIND[lang]
        self.mod = self._MOD[self.kind]
        self.ref = refine(m1, m2, self.kind)
        self._chi: dict[tuple[int, int], Formula] = {}
        self._ev1 = Evaluator(m1)
        self._ev2 = Evaluator(m2)

    def bisimilar(self, w1: int, w2: int) -> bool:
        return (w1, w2) in self.ref.final

    def formula(self, w1: int, w2: int) -> Formula | None:
        if self.bisimilar(w1, w2):
            return None
        f = self._build(w1, w2)
        if not (self._ev1.ext(f) >> w1 & 1) or self._ev2.ext(f) >> w2 & 1:
            raise AssertionError(f"distinguisher {f} failed verification at {(w1, w2)}")
        return f

    def _build(self, w1, w2) -> Formula:
        """Formula true at left ``w1`` and false at right ``w2``."""
        key = (w1, w2)
        got = self._chi.get(key)
        if got is not None:
            return got
        r = self.ref.deleted_at[key]
        pairing = self.ref.pairing
        if r == 0:
            got = self._atomic(w1, w2)
        else:
            before = self.ref.snapshots[r - 1]
            fwd, bwd = _masks(before, self.m1.world_count, self.m2.world_count)
            failure = pairing.violation(w1, w2, fwd, bwd, before)
            g1 = failure.gmask
            g2 = dict(pairing.groups)[g1]
            names = pairing.group_names(g1)
            if self.kind is BisimKind.BOLD_V2:
                got = self._bold(w1, w2, g1, g2, names, failure, fwd, bwd)
            else:
                got = self._relational(w1, w2, g1, g2, names, failure)
        self._chi[key] = got
        return got

    def _atomic(self, w1, w2):
        p1, p2 = self.ref.pairing.lab1[w1], self.ref.pairing.lab2[w2]
        for atom, a, b in zip(self.ref.pairing.atoms, p1, p2):
            if a and not b:
                return Atom(atom)
            if b and not a:
                return Not(Atom(atom))
        raise AssertionError("atom-agreeing pair recorded as atom failure")

    def _relational(self, w1, w2, g1, g2, names, failure):
        s1, s2 = self.ref.pairing.successors(w1, w2, g1, g2)
        if failure.clause == "forth":
            u = failure.detail
            body = conj(self._build(u, v) for v in iter_bits(s2))
            return Not(self.mod(names, Not(body)))
        v = failure.detail
        return self.mod(names, disj(self._build(u, v) for u in iter_bits(s1)))

    def _bold(self, w1, w2, g1, g2, names, failure, fwd, bwd):
        c1 = self.m1.cores(g1, w1)
        c2 = self.m2.cores(g2, w2)
        core = failure.detail
        if failure.clause == "forth":
            image = 0
            for u in iter_bits(core):
                image |= fwd[u]
            parts = []
            for other in c2:
                v = next(iter_bits(other & ~image))
                parts.append(disj(self._build(u, v) for u in iter_bits(core)))
            return DBold(names, conj(parts))
        image = 0
        for v in iter_bits(core):
            image |= bwd[v]
        parts = []
        for other in c1:
            u = next(iter_bits(other & ~image))
            parts.append(disj(Not(self._build(u, v)) for v in iter_bits(core)))
        return Not(DBold(names, conj(parts)))


def distinguishing_formula(
    m1: BeliefModel, w1: int | str, m2: BeliefModel, w2: int | str, lang: LanguageTag | str
) -> Formula | None:
    """A formula of ``lang`` true at ``(m1, w1)`` and false at ``(m2, w2)``,
    or None when the two points are bisimilar for that language."""
    return Distinguisher(m1, m2, lang).formula(m1.world_index(w1), m2.world_index(w2))

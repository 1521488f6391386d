"""Finite belief models and the group-level structures derived from them.

Worlds and agents are addressed by dense indices internally.  World sets and
agent sets are carried as integer bitmasks on the hot paths; the public
operations at the bottom of the module return frozensets and ``Group``
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

MAX_AGENTS = 16


class ModelError(ValueError):
    """Raised for out-of-range ids, empty groups and malformed models."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def submasks(mask: int) -> Iterator[int]:
    """Non-empty submasks of ``mask`` in increasing numeric order."""
    bits = list(iter_bits(mask))
    for local in range(1, 1 << len(bits)):
        yield to_mask(bits[i] for i in range(len(bits)) if local >> i & 1)


@dataclass(frozen=True, order=True)
class Group:
    """A non-empty set of agent indices, kept sorted."""

    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        if not members:
            raise ModelError("a group must contain at least one agent")
        if members[0] < 0:
            raise ModelError(f"negative agent index in group {members}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: int) -> "Group":
        return cls(members)

    @classmethod
    def from_mask(cls, mask: int) -> "Group":
        return cls(tuple(iter_bits(mask)))

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, agent):
        return agent in self.members

    def issubset(self, other: "Group") -> bool:
        return set(self.members) <= set(other.members)


@dataclass(frozen=True)
class MCSFamily:
    """The subgroups of ``within`` that are maximally consistent at ``at``."""

    at: int
    within: Group
    members: tuple[Group, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class NeighbourhoodCore:
    """Minimal sets of a monotone neighbourhood; N(w) is their upward closure."""

    at: int
    group: Group | int
    cores: tuple[frozenset[int], ...]

    def contains(self, worlds: Iterable[int]) -> bool:
        """Membership ``U in N(w)``: some core is a subset of ``U``."""
        target = set(worlds)
        return any(core <= target for core in self.cores)


class BeliefModel:
    """A finite multi-agent Kripke model.

    ``relations`` maps agent names to iterables of ``(source, target)`` world
    name pairs; agents without an entry get the empty relation.  ``valuation``
    maps atom names to the worlds where they hold.  ``points`` names
    distinguished worlds (carried through the file format only).
    """

    def __init__(
        self,
        agents: Sequence[str],
        worlds: Sequence[str],
        relations: Mapping[str, Iterable[tuple[str, str]]] | None = None,
        valuation: Mapping[str, Iterable[str]] | None = None,
        points: Mapping[str, str] | None = None,
    ):
        agents = tuple(agents)
        worlds = tuple(worlds)
        if not worlds:
            raise ModelError("a belief model needs at least one world")
        if len(set(agents)) != len(agents):
            raise ModelError(f"duplicate agent names in {list(agents)}")
        if len(set(worlds)) != len(worlds):
            raise ModelError(f"duplicate world names in {list(worlds)}")
        if len(agents) > MAX_AGENTS:
            raise ModelError(f"{len(agents)} agents exceeds the cap of {MAX_AGENTS}")
        world_ix = {name: i for i, name in enumerate(worlds)}

        def lookup(name):
            try:
                return world_ix[name]
            except KeyError:
                raise ModelError(f"unknown world {name!r}") from None

        relations = dict(relations or {})
        unknown = set(relations) - set(agents)
        if unknown:
            raise ModelError(f"relation given for unknown agent(s) {sorted(unknown)}")
        succ = []
        for agent in agents:
            rows = [0] * len(worlds)
            for src, dst in relations.get(agent, ()):
                rows[lookup(src)] |= 1 << lookup(dst)
            succ.append(tuple(rows))
        val = {atom: to_mask(lookup(w) for w in ws) for atom, ws in (valuation or {}).items()}
        pts = {name: lookup(w) for name, w in (points or {}).items()}
        self._init(agents, worlds, tuple(succ), val, pts)

    def _init(self, agents, worlds, succ, val, points):
        self.agents: tuple[str, ...] = agents
        self.worlds: tuple[str, ...] = worlds
        self._succ: tuple[tuple[int, ...], ...] = succ
        self._val: dict[str, int] = dict(sorted(val.items()))
        self.points: dict[str, int] = dict(points)
        self._agent_ix = {name: i for i, name in enumerate(agents)}
        self._world_ix = {name: i for i, name in enumerate(worlds)}
        self.all_worlds = (1 << len(worlds)) - 1
        self.all_agents = (1 << len(agents)) - 1
        self._gcs_cache: dict[tuple[int, int], int] = {}
        self._mcs_cache: dict[tuple[int, int], tuple[int, ...]] = {}

    @classmethod
    def from_masks(
        cls,
        agents: Sequence[str],
        worlds: Sequence[str],
        succ: Sequence[Sequence[int]],
        valuation: Mapping[str, int] | None = None,
        points: Mapping[str, int] | None = None,
    ) -> "BeliefModel":
        """Build directly from successor bitmasks ``succ[agent][world]``."""
        self = cls.__new__(cls)
        agents, worlds = tuple(agents), tuple(worlds)
        if not worlds:
            raise ModelError("a belief model needs at least one world")
        if len(agents) > MAX_AGENTS:
            raise ModelError(f"{len(agents)} agents exceeds the cap of {MAX_AGENTS}")
        if len(succ) != len(agents) or any(len(row) != len(worlds) for row in succ):
            raise ModelError("successor table does not match agent/world counts")
        full = (1 << len(worlds)) - 1
        if any(m & ~full for row in succ for m in row):
            raise ModelError("successor mask out of range")
        self._init(agents, worlds, tuple(tuple(row) for row in succ), dict(valuation or {}), dict(points or {}))
        return self

    # -- identity ------------------------------------------------------

    def _key(self):
        return (self.agents, self.worlds, self._succ, tuple(self._val.items()), tuple(sorted(self.points.items())))

    def __eq__(self, other):
        if not isinstance(other, BeliefModel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"BeliefModel(agents={list(self.agents)}, worlds={list(self.worlds)})"

    # -- name/index binding -------------------------------------------

    @property
    def world_count(self) -> int:
        return len(self.worlds)

    @property
    def agent_count(self) -> int:
        return len(self.agents)

    def agent_index(self, agent: str | int) -> int:
        if isinstance(agent, int):
            if not 0 <= agent < len(self.agents):
                raise ModelError(f"agent index {agent} out of range")
            return agent
        try:
            return self._agent_ix[agent]
        except KeyError:
            raise ModelError(f"unknown agent {agent!r}") from None

    def world_index(self, world: str | int) -> int:
        if isinstance(world, int):
            if not 0 <= world < len(self.worlds):
                raise ModelError(f"world index {world} out of range")
            return world
        try:
            return self._world_ix[world]
        except KeyError:
            raise ModelError(f"unknown world {world!r}") from None

    def group(self, agents: Iterable[str | int]) -> Group:
        return Group(tuple(self.agent_index(a) for a in agents))

    def check_group(self, group: Group) -> int:
        if group.members[-1] >= len(self.agents):
            raise ModelError(f"group {group.members} not within {len(self.agents)} agents")
        return group.mask

    def world_names(self, mask_or_set) -> list[str]:
        indices = iter_bits(mask_or_set) if isinstance(mask_or_set, int) else sorted(mask_or_set)
        return [self.worlds[i] for i in indices]

    # -- raw structure -------------------------------------------------

    @property
    def relations(self) -> tuple[frozenset[tuple[int, int]], ...]:
        return tuple(
            frozenset((w, v) for w, row in enumerate(rows) for v in iter_bits(row)) for rows in self._succ
        )

    @property
    def valuation(self) -> dict[str, frozenset[int]]:
        return {atom: from_mask(m) for atom, m in self._val.items()}

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(self._val)

    def succ(self, agent: int, world: int) -> int:
        return self._succ[agent][world]

    def succ_table(self, agent: int) -> tuple[int, ...]:
        return self._succ[agent]

    def atom_mask(self, atom: str) -> int:
        return self._val.get(atom, 0)

    def label(self, world: int) -> frozenset[str]:
        return frozenset(a for a, m in self._val.items() if m >> world & 1)

    # -- derived, bitmask level ---------------------------------------

    def gcs(self, gmask: int, w: int) -> int:
        """Combined conjecture set of the agents in ``gmask`` at ``w``."""
        key = (gmask, w)
        cached = self._gcs_cache.get(key)
        if cached is None:
            cached = self.all_worlds
            for a in iter_bits(gmask):
                cached &= self._succ[a][w]
            self._gcs_cache[key] = cached
        return cached

    def mcs(self, gmask: int, w: int) -> tuple[int, ...]:
        """Agent masks of the maximally consistent subgroups of ``gmask`` at ``w``.

        Every non-empty subset is visited once; a consistent subset is maximal
        exactly when adding any single further agent makes it inconsistent,
        because consistency is antitone in the group.
        """
        key = (gmask, w)
        cached = self._mcs_cache.get(key)
        if cached is not None:
            return cached
        agents = list(iter_bits(gmask))
        k = len(agents)
        rows = [self._succ[a][w] for a in agents]
        cs = [0] * (1 << k)
        cs[0] = self.all_worlds
        for s in range(1, 1 << k):
            low = s & -s
            cs[s] = cs[s ^ low] & rows[low.bit_length() - 1]
        found = []
        for s in range(1, 1 << k):
            if not cs[s]:
                continue
            if all(cs[s | 1 << i] == 0 for i in range(k) if not s >> i & 1):
                found.append(tuple(agents[i] for i in range(k) if s >> i & 1))
        found.sort()
        cached = tuple(to_mask(members) for members in found)
        self._mcs_cache[key] = cached
        return cached

    def cores(self, gmask: int, w: int) -> tuple[int, ...]:
        """Conjecture sets of the maximally consistent subgroups (distinct, sorted)."""
        return tuple(sorted({self.gcs(h, w) for h in self.mcs(gmask, w)}))

    def cautious(self, gmask: int, w: int) -> int:
        """Consistent conjecture set: union over the maximally consistent subgroups."""
        out = 0
        for h in self.mcs(gmask, w):
            out |= self.gcs(h, w)
        return out


# -- public operations -------------------------------------------------


def _world(m: BeliefModel, w) -> int:
    return m.world_index(w)


def _group(m: BeliefModel, g) -> Group:
    if isinstance(g, Group):
        m.check_group(g)
        return g
    if isinstance(g, str):
        raise ModelError("pass a group as an iterable of agents, not a string")
    group = m.group(g)
    return group


def conjecture_set(m: BeliefModel, a, w) -> frozenset[int]:
    return from_mask(m.succ(m.agent_index(a), _world(m, w)))


def group_conjecture_set(m: BeliefModel, g, w) -> frozenset[int]:
    return from_mask(m.gcs(_group(m, g).mask, _world(m, w)))


def max_consistent_subgroups(m: BeliefModel, g, w) -> MCSFamily:
    group, w = _group(m, g), _world(m, w)
    return MCSFamily(w, group, tuple(Group.from_mask(h) for h in m.mcs(group.mask, w)))


def consistent_conjecture_set(m: BeliefModel, g, w) -> frozenset[int]:
    return from_mask(m.cautious(_group(m, g).mask, _world(m, w)))


def cautious_relation(m: BeliefModel, g) -> frozenset[tuple[int, int]]:
    gmask = _group(m, g).mask
    return frozenset((w, v) for w in range(m.world_count) for v in iter_bits(m.cautious(gmask, w)))


def neighbourhood_core(m: BeliefModel, g, w) -> NeighbourhoodCore:
    group, w = _group(m, g), _world(m, w)
    return NeighbourhoodCore(w, group, tuple(from_mask(c) for c in m.cores(group.mask, w)))


def individual_neighbourhood_core(m: BeliefModel, a, w) -> NeighbourhoodCore:
    """Core of N_a(w): the single set R_a(w), which may be empty."""
    a, w = m.agent_index(a), _world(m, w)
    return NeighbourhoodCore(w, a, (from_mask(m.succ(a, w)),))


def mcs_targets(m: BeliefModel, g, w) -> frozenset[frozenset[int]]:
    """All ``U`` with ``w`` leading to ``U`` via some maximally consistent subgroup."""
    return frozenset(neighbourhood_core(m, g, w).cores)

"""Seeded random models per frame class, and random formulas."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..formula import (
    B, BOT, TOP, And, Atom, D, DBold, DCaut, Formula, Iff, Imp, Inc, Not, Or,
)
from ..frames import RELATIONAL, check_rows
from ..model import MAX_AGENTS, BeliefModel, ModelError, iter_bits

AGENT_NAMES = "abcdefghijklmnop"


class GenerationError(RuntimeError):
    """Closure did not reach a fixpoint within the round bound."""


@dataclass(frozen=True)
class GeneratorConfig:
    world_count: int
    agent_count: int
    edge_density: float = 0.3
    class_constraints: tuple[str, ...] = ()
    seed: int = 0
    atoms: tuple[str, ...] = ("p", "q")
    atom_density: float = 0.5

    def __post_init__(self):
        if self.world_count < 1:
            raise ModelError("world_count must be at least 1")
        if not 0 <= self.agent_count <= MAX_AGENTS:
            raise ModelError(f"agent_count must be between 0 and {MAX_AGENTS}")
        if not 0.0 <= self.edge_density <= 1.0:
            raise ModelError("edge_density must lie in [0, 1]")
        unknown = set(self.class_constraints) - set(RELATIONAL)
        if unknown:
            raise ModelError(f"unknown class constraint(s) {sorted(unknown)}")
        object.__setattr__(self, "class_constraints", tuple(c for c in RELATIONAL if c in self.class_constraints))
        object.__setattr__(self, "atoms", tuple(self.atoms))


def close(rows: list[int], conds, max_rounds: int | None = None) -> list[int]:
    """Least extension of ``rows`` closed under the r, s, t, e rules in ``conds``."""
    n = len(rows)
    rows = list(rows)
    bound = max_rounds if max_rounds is not None else n * n + 1
    for _ in range(bound):
        before = list(rows)
        if "r" in conds:
            for w in range(n):
                rows[w] |= 1 << w
        if "s" in conds:
            for w in range(n):
                for u in iter_bits(rows[w]):
                    rows[u] |= 1 << w
        if "t" in conds:
            for w in range(n):
                reach = rows[w]
                for u in iter_bits(rows[w]):
                    reach |= rows[u]
                rows[w] = reach
        if "e" in conds:
            for w in range(n):
                for u in iter_bits(rows[w]):
                    rows[u] |= rows[w]
        if rows == before:
            return rows
    raise GenerationError(f"closure under {''.join(conds)} did not stabilise in {bound} rounds")


def class_relation(rng: random.Random, n: int, density: float, conds) -> list[int]:
    rows = [0] * n
    for w in range(n):
        for v in range(n):
            if rng.random() < density:
                rows[w] |= 1 << v
    rows = close(rows, conds)
    if "l" in conds:
        for _ in range(n + 1):
            dead = [w for w in range(n) if not rows[w]]
            if not dead:
                break
            for w in dead:
                rows[w] |= 1 << rng.randrange(n)
            rows = close(rows, conds)
        else:
            raise GenerationError("could not make the relation serial")
    for c in conds:
        if check_rows(rows, c) is not None:
            raise GenerationError(f"generated relation fails {c}")
    return rows


def generate(cfg: GeneratorConfig) -> BeliefModel:
    """A model whose every agent relation satisfies ``cfg.class_constraints``."""
    rng = random.Random(cfg.seed)
    n = cfg.world_count
    succ = [class_relation(rng, n, cfg.edge_density, cfg.class_constraints) for _ in range(cfg.agent_count)]
    valuation = {}
    for atom in cfg.atoms:
        valuation[atom] = sum(1 << w for w in range(n) if rng.random() < cfg.atom_density)
    worlds = [f"w{i}" for i in range(n)]
    return BeliefModel.from_masks(AGENT_NAMES[: cfg.agent_count], worlds, succ, valuation)


def random_model(rng: random.Random, max_worlds: int = 5, max_agents: int = 3, conds=(), atoms=("p", "q"),
                 min_agents: int = 1) -> BeliefModel:
    """Draw a config from ``rng`` and generate from it."""
    cfg = GeneratorConfig(
        world_count=rng.randint(1, max_worlds),
        agent_count=rng.randint(min_agents, max_agents),
        edge_density=rng.choice((0.15, 0.3, 0.5, 0.7)),
        class_constraints=tuple(conds),
        seed=rng.getrandbits(64),
        atoms=atoms,
    )
    return generate(cfg)


def variant(rng: random.Random, m: BeliefModel) -> BeliefModel:
    """A shuffled copy of ``m``, possibly with one world duplicated.

    The duplicate keeps the label and successors of its original and takes
    over a random share of its incoming edges.  Pairs built this way are often,
    though not always, bisimilar.
    """
    n = m.world_count
    order = list(range(n))
    rng.shuffle(order)
    pos = {old: new for new, old in enumerate(order)}
    dup = rng.randrange(n) if rng.random() < 0.6 else None
    size = n + (dup is not None)
    succ = []
    for a in range(m.agent_count):
        rows = [0] * size
        for w in range(n):
            for v in iter_bits(m.succ(a, w)):
                target = pos[v]
                if v == dup and rng.random() < 0.5:
                    target = n
                rows[pos[w]] |= 1 << target
        if dup is not None:
            rows[n] = sum(1 << pos[v] for v in iter_bits(m.succ(a, dup)))
        succ.append(rows)
    valuation = {}
    for atom in m.atoms:
        mask = sum(1 << pos[w] for w in iter_bits(m.atom_mask(atom)))
        if dup is not None and m.atom_mask(atom) >> dup & 1:
            mask |= 1 << n
        valuation[atom] = mask
    worlds = [f"v{i}" for i in range(size)]
    return BeliefModel.from_masks(m.agents, worlds, succ, valuation)


@dataclass
class FormulaSampler:
    """Random formulas over given atoms, agents and modalities."""

    atoms: tuple[str, ...] = ("p", "q")
    agents: tuple[str, ...] = ("a", "b")
    modalities: tuple[str, ...] = ("B", "D", "DC", "DB", "Inc")
    boolean_depth: int = 2

    def group(self, rng: random.Random) -> tuple[str, ...]:
        k = rng.randint(1, len(self.agents))
        return tuple(sorted(rng.sample(self.agents, k)))

    def leaf(self, rng: random.Random) -> Formula:
        roll = rng.random()
        if "Inc" in self.modalities and self.agents and roll < 0.1:
            return Inc(self.group(rng))
        if roll < 0.18:
            return rng.choice((TOP, BOT))
        return Atom(rng.choice(self.atoms))

    def sample(self, rng: random.Random, depth: int) -> Formula:
        """A formula of modal depth at most ``depth``."""
        return self._gen(rng, depth, self.boolean_depth)

    def _gen(self, rng, depth, bools):
        modal = [m for m in self.modalities if m != "Inc"] if self.agents else []
        options = ["leaf"]
        if bools > 0:
            options += ["not", "and", "or", "imp", "iff"]
        if depth > 0 and modal:
            options += ["modal"] * 3
        choice = rng.choice(options)
        if choice == "leaf":
            return self.leaf(rng)
        if choice == "modal":
            kind = rng.choice(modal)
            body = self._gen(rng, depth - 1, self.boolean_depth)
            if kind == "B":
                return B(rng.choice(self.agents), body)
            return {"D": D, "DC": DCaut, "DB": DBold}[kind](self.group(rng), body)
        if choice == "not":
            return Not(self._gen(rng, depth, bools - 1))
        left = self._gen(rng, depth, bools - 1)
        right = self._gen(rng, depth, bools - 1)
        return {"and": And, "or": Or, "imp": Imp, "iff": Iff}[choice](left, right)


LANGUAGE_MODALITIES = {
    "L_D": ("B", "D"),
    "L_DCaut": ("DC",),
    "L_DBold": ("DB",),
    "L_DCaut_Inc": ("DC", "Inc"),
    "L_DBold_Inc": ("DB", "Inc"),
    "L_full": ("B", "D", "DC", "DB", "Inc"),
}


def random_formula(rng: random.Random, atoms=("p", "q"), agents=("a", "b"), modalities=None, depth: int = 2) -> Formula:
    sampler = FormulaSampler(tuple(atoms), tuple(agents), tuple(modalities or LANGUAGE_MODALITIES["L_full"]))
    return sampler.sample(rng, depth)

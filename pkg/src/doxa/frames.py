"""Frame conditions on relations and neighbourhoods, and preservation reports.

Relational tags are ``l r t s e`` (serial, reflexive, transitive, symmetric,
Euclidean).  Neighbourhood tags carry an ``N`` suffix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .model import BeliefModel, Group, ModelError, from_mask, iter_bits, submasks

RELATIONAL = ("l", "r", "t", "s", "e")
NEIGHBOURHOOD = ("lN", "rN", "tN", "sN", "eN")
POWERSET_CAP = 12


class FrameSizeError(ModelError):
    """Powerset-quantified check requested on too many worlds."""


@dataclass(frozen=True)
class ConditionResult:
    ok: bool
    condition: str
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


# -- relational ----------------------------------------------------------


def check_rows(rows: Sequence[int], cond: str) -> tuple | None:
    """Witness index tuple violating ``cond`` for successor masks ``rows``, or None."""
    n = len(rows)
    if cond == "l":
        for w in range(n):
            if not rows[w]:
                return (w,)
    elif cond == "r":
        for w in range(n):
            if not rows[w] >> w & 1:
                return (w,)
    elif cond == "t":
        for w in range(n):
            for u in iter_bits(rows[w]):
                extra = rows[u] & ~rows[w]
                if extra:
                    return (w, u, next(iter_bits(extra)))
    elif cond == "s":
        for w in range(n):
            for u in iter_bits(rows[w]):
                if not rows[u] >> w & 1:
                    return (w, u)
    elif cond == "e":
        for w in range(n):
            for u in iter_bits(rows[w]):
                missing = rows[w] & ~rows[u]
                if missing:
                    return (w, u, next(iter_bits(missing)))
    else:
        raise ValueError(f"unknown relational condition {cond!r}")
    return None


def check_relational(rel: Iterable[tuple[Hashable, Hashable]], worlds: Iterable[Hashable], cond: str) -> ConditionResult:
    """Whether the relation ``rel`` over ``worlds`` satisfies ``cond``.

    On failure the witness holds worlds as they appear in ``worlds``:
    ``(w,)`` for l and r, ``(w, u)`` for s and ``(w, u, v)`` for t and e.
    """
    worlds = list(dict.fromkeys(worlds))
    index = {w: i for i, w in enumerate(worlds)}
    rows = [0] * len(worlds)
    for a, b in rel:
        if a not in index or b not in index:
            raise ModelError(f"pair {(a, b)} outside the world set")
        rows[index[a]] |= 1 << index[b]
    witness = check_rows(rows, cond)
    if witness is None:
        return ConditionResult(True, cond)
    return ConditionResult(False, cond, tuple(worlds[i] for i in witness))


def relation_rows(m: BeliefModel, agent: int) -> tuple[int, ...]:
    return m.succ_table(agent)


def cautious_rows(m: BeliefModel, gmask: int) -> list[int]:
    return [m.cautious(gmask, w) for w in range(m.world_count)]


def satisfied(rows: Sequence[int], conds: Iterable[str]) -> bool:
    return all(check_rows(rows, c) is None for c in conds)


# -- neighbourhood -------------------------------------------------------


def membership_table(cores_at: Sequence[Sequence[int]], n: int) -> list[int]:
    """``table[U]`` is the mask of worlds ``w`` with ``U`` in N(w)."""
    table = [0] * (1 << n)
    for w, cores in enumerate(cores_at):
        bit = 1 << w
        for core in cores:
            # enumerate supersets of core
            free = ((1 << n) - 1) & ~core
            sub = free
            while True:
                table[core | sub] |= bit
                if not sub:
                    break
                sub = (sub - 1) & free
    return table


def _cores_at(m: BeliefModel, subject) -> list[tuple[int, ...]]:
    if isinstance(subject, Group):
        g = m.check_group(subject)
        return [m.cores(g, w) for w in range(m.world_count)]
    a = m.agent_index(subject)
    return [(m.succ(a, w),) for w in range(m.world_count)]


def check_cores(cores_at: Sequence[Sequence[int]], n: int, cond: str) -> tuple | None:
    """Witness ``(w, U)`` (U a mask) violating neighbourhood ``cond``, or None."""
    full = (1 << n) - 1
    if cond == "rN":
        for w, cores in enumerate(cores_at):
            for core in cores:
                if not core >> w & 1:
                    return (w, core)
        return None
    if cond == "lN":
        # U in N(w) and its complement in N(w); checking the cores suffices by monotonicity
        for w, cores in enumerate(cores_at):
            for core in cores:
                comp = full & ~core
                if any(not c & ~comp for c in cores):
                    return (w, core)
        return None
    if cond not in ("tN", "sN", "eN"):
        raise ValueError(f"unknown neighbourhood condition {cond!r}")
    if n > POWERSET_CAP:
        raise FrameSizeError(f"{cond} needs powerset iteration; {n} worlds exceeds {POWERSET_CAP}")
    table = membership_table(cores_at, n)
    for w in range(n):
        bit = 1 << w
        for u in range(1 << n):
            if cond == "tN":
                if table[u] & bit and not table[table[u]] & bit:
                    return (w, u)
            elif cond == "sN":
                if u & bit:
                    target = full & ~table[full & ~u]
                    if not table[target] & bit:
                        return (w, u)
            else:
                if not table[u] & bit:
                    target = full & ~table[u]
                    if not table[target] & bit:
                        return (w, u)
    return None


def check_neighbourhood(m: BeliefModel, subject: Group | int | str, cond: str) -> ConditionResult:
    """Check ``cond`` for N_G (``subject`` a Group) or N_a (an agent).

    The witness is ``(w, U)`` with world indices.
    """
    witness = check_cores(_cores_at(m, subject), m.world_count, cond)
    if witness is None:
        return ConditionResult(True, cond)
    w, u = witness
    return ConditionResult(False, cond, (w, from_mask(u)))


def instance_fails(rows: Sequence[int], cond: str, witness: tuple) -> bool:
    """Whether the specific tuple ``witness`` (indices) breaks relational ``cond``."""
    has = lambda x, y: bool(rows[x] >> y & 1)
    if cond == "l":
        return not rows[witness[0]]
    if cond == "r":
        return not has(witness[0], witness[0])
    if cond == "s":
        w, u = witness
        return has(w, u) and not has(u, w)
    w, u, v = witness
    if cond == "t":
        return has(w, u) and has(u, v) and not has(w, v)
    if cond == "e":
        return has(w, u) and has(w, v) and not has(u, v)
    raise ValueError(f"unknown relational condition {cond!r}")


def neighbourhood_instance_fails(cores_at: Sequence[Sequence[int]], n: int, cond: str, w: int, u: int) -> bool:
    """Whether the pair (w, U) breaks neighbourhood ``cond``; membership read off the cores."""
    full = (1 << n) - 1

    def member(x, s):
        return any(not core & ~s for core in cores_at[x])

    def collect(pred):
        return sum(1 << x for x in range(n) if pred(x))

    if cond == "lN":
        return member(w, u) and member(w, full & ~u)
    if cond == "rN":
        return member(w, u) and not u >> w & 1
    if cond == "tN":
        return member(w, u) and not member(w, collect(lambda x: member(x, u)))
    if cond == "sN":
        return bool(u >> w & 1) and not member(w, collect(lambda x: not member(x, full & ~u)))
    if cond == "eN":
        return not member(w, u) and not member(w, collect(lambda x: not member(x, u)))
    raise ValueError(f"unknown neighbourhood condition {cond!r}")


# -- preservation --------------------------------------------------------

# (member class, property): the positive preservation claims
CAUTIOUS_ROWS = [
    ((), "l"), ((), "r"),
    (("r",), "t"), (("s",), "t"),
    (("r",), "s"), (("l", "e"), "s"),
    (("r",), "e"), (("l", "s"), "e"),
]
BOLD_ROWS = [
    ((), "rN"),
    (("r",), "lN"), (("s", "t"), "lN"), (("s", "e"), "lN"),
    (("r",), "tN"), (("s",), "tN"), (("e",), "tN"),
    (("r",), "sN"), (("l", "t"), "sN"), (("l", "e"), "sN"),
    (("r",), "eN"), (("l", "s"), "eN"),
]


@dataclass(frozen=True)
class PreservationRow:
    group: Group
    member_conditions: tuple[str, ...]
    prop: str
    preserved: bool
    witness: tuple | None

    def tsv(self, m: BeliefModel) -> str:
        group = "{" + ",".join(m.agents[a] for a in self.group) + "}"
        conds = "".join(c[0] for c in self.member_conditions) or "-"
        verdict = "preserved" if self.preserved else "violated"
        witness = "-" if self.witness is None else _show_witness(m, self.witness)
        return "\t".join((group, conds, self.prop, verdict, witness))


def _show_witness(m: BeliefModel, witness: tuple) -> str:
    parts = []
    for item in witness:
        if isinstance(item, frozenset):
            parts.append("{" + ",".join(m.worlds[i] for i in sorted(item)) + "}")
        else:
            parts.append(m.worlds[item])
    return "(" + ",".join(parts) + ")"


def group_property(m: BeliefModel, gmask: int, prop: str, notion: str) -> tuple | None:
    """Witness against ``prop`` for the group structure of ``notion``, or None."""
    if notion == "cautious":
        return check_rows(cautious_rows(m, gmask), prop)
    cores_at = [m.cores(gmask, w) for w in range(m.world_count)]
    return check_cores(cores_at, m.world_count, prop)


def member_conditions(m: BeliefModel, agent: int, notion: str) -> tuple[str, ...]:
    """Conditions the agent's own structure satisfies, in tag order."""
    if notion == "cautious":
        rows = m.succ_table(agent)
        return tuple(c for c in RELATIONAL if check_rows(rows, c) is None)
    cores_at = [(m.succ(agent, w),) for w in range(m.world_count)]
    return tuple(c for c in NEIGHBOURHOOD if check_cores(cores_at, m.world_count, c) is None)


def preservation_report(m: BeliefModel, notion: str) -> list[PreservationRow]:
    """For every group and every condition all its members satisfy, whether the
    group's cautious relation (or bold neighbourhood) satisfies it too."""
    if notion not in ("cautious", "bold"):
        raise ValueError(f"notion must be 'cautious' or 'bold', not {notion!r}")
    own = [set(member_conditions(m, a, notion)) for a in range(m.agent_count)]
    order = RELATIONAL if notion == "cautious" else NEIGHBOURHOOD
    rows = []
    for gmask in submasks(m.all_agents):
        common = set.intersection(*(own[a] for a in iter_bits(gmask)))
        shared = tuple(c for c in order if c in common)
        for prop in shared:
            witness = group_property(m, gmask, prop, notion)
            if witness is not None and notion == "bold":
                witness = (witness[0], from_mask(witness[1]))
            rows.append(PreservationRow(Group.from_mask(gmask), shared, prop, witness is None, witness))
    return rows


def report_tsv(m: BeliefModel, rows: Iterable[PreservationRow]) -> str:
    lines = ["group\tconditions\tproperty\tverdict\twitness"]
    lines.extend(r.tsv(m) for r in rows)
    return "\n".join(lines)


# -- frame class names ----------------------------------------------------

_TABLE = {
    "": "K", "l": "D", "r": "T", "lr": "T", "t": "K4", "s": "KB", "e": "K5",
    "lt": "KD4", "ls": "KDB", "le": "KD5", "rt": "S4", "lrt": "S4",
    "rs": "B", "lrs": "B",
    "ts": "K4B", "se": "K4B", "tse": "K4B",
    "te": "K45", "lte": "KD45",
}
for _combo in ("re", "lre", "lts", "lse", "rts", "rte", "rse", "lrts", "lrte", "lrse", "ltse", "rtse", "lrtse"):
    _TABLE[_combo] = "S5"

# canonical generating conditions per logic name
CLASS_CONDITIONS = {
    "K": (), "D": ("l",), "T": ("r",), "K4": ("t",), "KB": ("s",), "K5": ("e",),
    "KD4": ("l", "t"), "KDB": ("l", "s"), "KD5": ("l", "e"), "S4": ("r", "t"),
    "B": ("r", "s"), "S5": ("r", "e"), "K4B": ("t", "s"), "K45": ("t", "e"),
    "KD45": ("l", "t", "e"),
}


def _canon(conds: Iterable[str]) -> str:
    conds = set(conds)
    unknown = conds - set(RELATIONAL)
    if unknown:
        raise ValueError(f"unknown relational condition(s) {sorted(unknown)}")
    return "".join(c for c in RELATIONAL if c in conds)


def frame_class_name(conds: Iterable[str]) -> str:
    return _TABLE[_canon(conds)]


def parse_class(text: str) -> tuple[str, ...]:
    """A logic name (``KD45``) or a condition list (``lte``, ``l,t,e``, ``-``)."""
    text = text.strip()
    if text in CLASS_CONDITIONS:
        return CLASS_CONDITIONS[text]
    letters = text.replace(",", "").replace(" ", "")
    if letters in ("", "-", "---"):
        return ()
    if not letters.islower() or set(letters) - set(RELATIONAL):
        raise ValueError(f"unknown frame class {text!r}")
    return tuple(c for c in RELATIONAL if c in letters)

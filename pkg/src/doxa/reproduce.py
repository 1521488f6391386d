"""The reproduction suite: fixture expectations, invariant sweeps and the
numbered acceptance checks.

Every check is a function ``(samples, seed) -> (passed, detail)``.  Sweeps
scale with ``samples``; the numbered checks use their own fixed counts.
Randomness is drawn from ``random.Random`` seeded by ``(seed, check id)`` so
each check is reproducible on its own.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import bisim, frames, translate
from .corpus import catalog as fx
from .corpus.generate import (
    LANGUAGE_MODALITIES, FormulaSampler, GeneratorConfig, generate, random_model, variant,
)
from .corpus.io import dumps_model, loads_model
from .formula import (
    BOT, TOP, And, D, DBold, DCaut, Imp, Inc, LanguageTag, Not, Or, B, in_language, language_of,
    parse, to_text,
)
from .model import BeliefModel, iter_bits, submasks
from .semantics import Evaluator, evaluate


@dataclass(frozen=True)
class Check:
    id: str
    title: str
    tags: tuple[str, ...]
    run: Callable[[int, int], tuple[bool, str]]


REGISTRY: list[Check] = []


def check(id: str, title: str, *tags: str):
    def register(fn):
        REGISTRY.append(Check(id, title, tags, fn))
        return fn

    return register


def rng_for(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def group_names(m: BeliefModel, gmask: int) -> tuple[str, ...]:
    return tuple(m.agents[a] for a in iter_bits(gmask))


def sampler_for(m: BeliefModel, modalities, boolean_depth: int = 2) -> FormulaSampler:
    return FormulaSampler(("p", "q"), m.agents, tuple(modalities), boolean_depth)


# -- fixtures ------------------------------------------------------------


def _fixture_check(builder):
    def run(samples, seed):
        fixture = builder()
        results = fixture.check()
        bad = [d for ok, d in results if not ok]
        for m in fixture.models.values():
            if loads_model(dumps_model(m)) != m:
                bad.append(f"file round trip failed for {m!r}")
        return not bad, f"{len(results) - len([1 for ok, _ in results if not ok])}/{len(results)} expectations" + (
            "; " + "; ".join(bad) if bad else ""
        )

    return run


for _builder in (
    fx.fixture_example, fx.fixture_separation, fx.fixture_bold_cautious, fx.fixture_non_normal,
    fx.fixture_conjunction, lambda: fx.fixture_frames("cautious"), lambda: fx.fixture_frames("bold"),
):
    _id = _builder().id
    REGISTRY.append(Check(f"fixture:{_id}", f"fixture {_id}", ("fixtures",), _fixture_check(_builder)))


# -- invariant sweeps ----------------------------------------------------


@check("sweep:mcs", "maximally consistent subgroup invariants", "sweep", "model")
def sweep_mcs(samples, seed):
    rng = rng_for(seed, "sweep:mcs")
    for i in range(samples):
        m = random_model(rng, 5, 4)
        for w in range(m.world_count):
            for g in submasks(m.all_agents):
                family = m.mcs(g, w)
                for h in family:
                    if not m.gcs(h, w) or h & ~g:
                        return False, f"model {i}: inconsistent or foreign member"
                    if any(h != k and h & ~k == 0 for k in family):
                        return False, f"model {i}: comparable members"
                for h in submasks(g):
                    if m.gcs(h, w) and not any(h & ~k == 0 for k in family):
                        return False, f"model {i}: consistent subgroup outside every member"
                if (not family) != all(not m.succ(a, w) for a in iter_bits(g)):
                    return False, f"model {i}: emptiness law"
                if m.gcs(g, w) & ~m.cautious(g, w):
                    return False, f"model {i}: combined set not inside consistent set"
                if any(not c for c in m.cores(g, w)):
                    return False, f"model {i}: empty core"
    return True, f"{samples} models"


@check("sweep:semantic-laws", "validities and entailments of the three modalities", "sweep", "semantics")
def sweep_laws(samples, seed):
    rng = rng_for(seed, "sweep:laws")
    count = 0
    for i in range(samples):
        m = random_model(rng, 5, 3)
        ev = Evaluator(m)
        sampler = sampler_for(m, LANGUAGE_MODALITIES["L_full"], 1)
        serial = all(frames.check_rows(m.succ_table(a), "l") is None for a in range(m.agent_count))
        phi = sampler.sample(rng, 1)
        psi = sampler.sample(rng, 1)
        for g in submasks(m.all_agents):
            G = group_names(m, g)
            all_bot = m.all_worlds
            for a in G:
                all_bot &= ev.ext(B(a, BOT))
            laws = [
                (ev.ext(DCaut(G, BOT)) == all_bot, "DC bot iff all B bot"),
                (ev.ext(Not(DBold(G, TOP))) == all_bot, "not DB top iff all B bot"),
                (ev.ext(DBold(G, BOT)) == 0, "DB bot never"),
                (ev.ext(Inc(G)) == ev.ext(D(G, BOT)), "Inc iff D bot"),
                (not ev.ext(DCaut(G, phi)) & ~ev.ext(D(G, phi)), "DC implies D"),
                (not ev.ext(DBold(G, phi)) & ~ev.ext(D(G, phi)), "DB implies D"),
                (not (ev.ext(DCaut(G, Imp(phi, psi))) & ev.ext(DCaut(G, phi))) & ~ev.ext(DCaut(G, psi)), "DC normal"),
                (not ev.ext(DBold(G, And(phi, psi))) & ~(ev.ext(DBold(G, phi)) & ev.ext(DBold(G, psi))), "DB and-elim"),
                (not ev.ext(DBold(G, phi)) & ~ev.ext(DBold(G, Or(phi, psi))), "DB monotone consequence"),
            ]
            if serial:
                laws.append((not ev.ext(DCaut(G, phi)) & ~ev.ext(DBold(G, phi)), "serial DC implies DB"))
            if len(G) == 1:
                a = G[0]
                laws.append((ev.ext(B(a, phi)) == ev.ext(DCaut(G, phi)), "B iff singleton DC"))
                laws.append((ev.ext(B(a, phi)) == ev.ext(Or(Not(DBold(G, TOP)), DBold(G, phi))), "B via DB"))
            for w in range(m.world_count):
                holds = any(not core & ~ev.ext(phi) for core in m.cores(g, w))
                laws.append((holds == bool(ev.ext(DBold(G, phi)) >> w & 1), "neighbourhood agreement"))
            for h in submasks(m.all_agents):
                if g & ~h == 0:
                    H = group_names(m, h)
                    laws.append((not ev.ext(D(G, phi)) & ~ev.ext(D(H, phi)), "D group monotone"))
                    laws.append((not ev.ext(DBold(G, phi)) & ~ev.ext(DBold(H, phi)), "DB group monotone"))
            for ok, name in laws:
                count += 1
                if not ok:
                    return False, f"model {i}, group {G}: {name} fails for {phi}"
    return True, f"{count} law instances on {samples} models"


@check("sweep:generator", "generated models satisfy their class", "sweep", "corpus")
def sweep_generator(samples, seed):
    rng = rng_for(seed, "sweep:generator")
    names = list(frames.CLASS_CONDITIONS)
    for i in range(samples):
        name = names[i % len(names)]
        conds = frames.CLASS_CONDITIONS[name]
        cfg = GeneratorConfig(rng.randint(1, 6), rng.randint(1, 3), rng.random(), conds, rng.getrandbits(64))
        m = generate(cfg)
        if generate(cfg) != m:
            return False, f"sample {i}: generator not deterministic"
        for a in range(m.agent_count):
            for c in conds:
                if frames.check_rows(m.succ_table(a), c) is not None:
                    return False, f"sample {i}: {name} model fails {c}"
    return True, f"{samples} models over {len(names)} classes"


@check("sweep:syntax", "printing then parsing gives back the formula", "sweep", "formula")
def sweep_syntax(samples, seed):
    rng = rng_for(seed, "sweep:syntax")
    sampler = FormulaSampler(("p", "q", "r1"), ("a", "b", "c"), LANGUAGE_MODALITIES["L_full"], 3)
    for i in range(samples):
        f = sampler.sample(rng, 3)
        text = to_text(f)
        if parse(text) != f:
            return False, f"round trip failed for {text}"
    return True, f"{samples} formulas"


@check("sweep:bisim-order", "collective-bisimilar points agree on every language", "sweep", "bisim")
def sweep_bisim_order(samples, seed, formulas=30):
    """Containment between the greatest bisimulations is only counted, never required."""
    rng = rng_for(seed, "sweep:bisim-order")
    inside = {"cautious": 0, "bold": 0}
    for i in range(samples):
        left, right = _bisim_pair(rng)
        coll = bisim.greatest_bisim(left, right, "collective").pairs
        for kind in inside:
            inside[kind] += coll <= bisim.greatest_bisim(left, right, kind).pairs
        if not coll:
            continue
        ev1, ev2 = Evaluator(left), Evaluator(right)
        for tag in ("L_DCaut", "L_DBold", "L_D"):
            sampler = sampler_for(left, LANGUAGE_MODALITIES[tag])
            for _ in range(formulas):
                f = sampler.sample(rng, 3)
                e1, e2 = ev1.ext(f), ev2.ext(f)
                for w1, w2 in coll:
                    if (e1 >> w1 & 1) != (e2 >> w2 & 1):
                        return False, f"pair {i}: collective-bisimilar ({w1},{w2}) disagree on {f}"
    return True, (
        f"{samples} model pairs; collective inside cautious {inside['cautious']}/{samples}, "
        f"inside bold {inside['bold']}/{samples}"
    )


# -- acceptance criteria -------------------------------------------------


@check("C01", "example model: cited verdicts at w1 in under a second", "acceptance", "semantics")
def c01(samples, seed):
    start = time.perf_counter()
    m = fx.example_model()
    wrong = [f for f, v in fx.EXAMPLE_CLAIMS if evaluate(m, "w1", f) != v]
    elapsed = time.perf_counter() - start
    ok = not wrong and elapsed < 1.0
    return ok, f"{len(fx.EXAMPLE_CLAIMS) - len(wrong)}/{len(fx.EXAMPLE_CLAIMS)} verdicts in {elapsed:.3f}s" + (
        f"; wrong: {wrong}" if wrong else ""
    )


@check("C02", "maximally consistent subgroups of the example model", "acceptance", "model")
def c02(samples, seed):
    m = fx.example_model()
    w1 = m.world_index("w1")
    def fam(names):
        g = m.group(names).mask
        return {frozenset(group_names(m, h)) for h in m.mcs(g, w1)}, set(m.world_names(m.cautious(g, w1)))
    f1, c1 = fam("ab")
    f2, c2 = fam("abc")
    ok = (
        f1 == {frozenset("a"), frozenset("b")}
        and f2 == {frozenset("a"), frozenset("bc")}
        and c1 == {"w1", "w2", "w3"}
        and c2 == {"w1", "w2"}
    )
    return ok, f"{{a,b}}: {sorted(map(sorted, f1))} {sorted(c1)}; {{a,b,c}}: {sorted(map(sorted, f2))} {sorted(c2)}"


def _separation(kind):
    left, right = fx.separation_models()
    z = bisim.greatest_bisim(left, right, kind)
    contains = all(p in z for p in fx.SEPARATION_PAIRS)
    d_left = evaluate(left, "w", "D{a,b}bot")
    d_right = evaluate(right, "w'", "D{a,b}bot")
    return contains, d_left, d_right, left, right


@check("C03", "cautious language is strictly weaker than D", "acceptance", "bisim")
def c03(samples, seed):
    contains, d_left, d_right, left, right = _separation("cautious")
    collective = bisim.greatest_bisim(left, right, "collective")
    excluded = ("w", "w'") not in collective
    ok = contains and not d_left and d_right and excluded
    return ok, f"cautious contains pairs {contains}; D{{a,b}}bot {d_left}/{d_right}; collective excludes (w,w') {excluded}"


@check("C04", "bold language is strictly weaker than D", "acceptance", "bisim")
def c04(samples, seed):
    contains, d_left, d_right, _, _ = _separation("bold")
    ok = contains and not d_left and d_right
    return ok, f"bold contains pairs {contains}; D{{a,b}}bot {d_left}/{d_right}"


@check("C05", "bold language cannot express cautious belief", "acceptance", "bisim")
def c05(samples, seed):
    left, right = fx.bold_cautious_models()
    z = bisim.greatest_bisim(left, right, "bold")
    contains = all(p in z for p in fx.BOLD_CAUTIOUS_PAIRS)
    lv = evaluate(left, "w", "DC{a,b}p")
    rv = evaluate(right, "w'", "DC{a,b}p")
    return contains and not lv and rv, f"bold contains 5 pairs {contains}; DC{{a,b}}p {lv}/{rv}"


@check("C06", "bold belief and its dual are not normal", "acceptance", "semantics")
def c06(samples, seed):
    m1, m2 = fx.non_normal_models()
    got1 = [evaluate(m1, "w1", f) for f in ("DB{a,b}(p -> q)", "DB{a,b}p", "DB{a,b}q")]
    k1 = evaluate(m1, "w1", "DB{a,b}(p -> q) -> (DB{a,b}p -> DB{a,b}q)")
    got2 = [evaluate(m2, "w1", f) for f in ("dDB{a}(p -> q)", "dDB{a}p", "dDB{a}q")]
    k2 = evaluate(m2, "w1", "dDB{a}(p -> q) -> (dDB{a}p -> dDB{a}q)")
    ok = got1 == [True, True, False] and not k1 and got2 == [True, True, False] and not k2
    return ok, f"M1 {got1} K {k1}; M2 {got2} dual K {k2}"


@check("C07", "bold belief is not closed under conjunction", "acceptance", "semantics")
def c07(samples, seed):
    m = fx.conjunction_model()
    both = evaluate(m, "w1", "DB{a,b}p & DB{a,b}q")
    conj = evaluate(m, "w1", "DB{a,b}(p & q)")
    return both and not conj, f"DB p & DB q {both}; DB(p & q) {conj}"


@check("C08", "counterexample frames for preservation", "acceptance", "frames", "preservation")
def c08(samples, seed):
    lines = []
    ok = True
    for notion in ("cautious", "bold"):
        fixture = fx.fixture_frames(notion)
        for exp, (passed, detail) in zip(fixture.expectations, fixture.check()):
            ok = ok and passed
            if not passed:
                lines.append(detail)
        lines.append(f"{notion}: {sum(p for p, _ in fixture.check())}/{len(fixture.expectations)}")
    return ok, "; ".join(lines)


def preservation_rows():
    for conds, prop in frames.CAUTIOUS_ROWS:
        yield "cautious", conds, prop
    for conds, prop in frames.BOLD_ROWS:
        yield "bold", conds, prop


def preservation_sweep(notion, conds, prop, count, rng):
    """Count violations of one preservation row over ``count`` generated models."""
    relational = prop[0]
    gen_conds = tuple(dict.fromkeys(conds + (relational,)))
    violations = 0
    first = None
    min_group = 2 if notion == "cautious" else 1
    for i in range(count):
        cfg = GeneratorConfig(
            rng.randint(1, 6), rng.randint(min_group, 3), rng.choice((0.1, 0.25, 0.4, 0.6)),
            gen_conds, rng.getrandbits(64),
        )
        m = generate(cfg)
        for g in submasks(m.all_agents):
            if g.bit_count() < min_group:
                continue
            witness = frames.group_property(m, g, prop, notion)
            if witness is not None:
                violations += 1
                first = first or (i, group_names(m, g), witness)
    return violations, first


@check("C09", "positive preservation rows hold on generated models", "acceptance", "preservation")
def c09(samples, seed, count=1000):
    start = time.perf_counter()
    bad = []
    rows = 0
    for notion, conds, prop in preservation_rows():
        rows += 1
        rng = rng_for(seed, f"C09:{notion}:{''.join(conds)}:{prop}")
        violations, first = preservation_sweep(notion, conds, prop, count, rng)
        if violations:
            bad.append(f"{notion} {prop} under {''.join(conds) or 'all'}: {violations} ({first})")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    return ok, f"{rows} rows x {count} models, {elapsed:.1f}s" + ("; " + "; ".join(bad) if bad else "")


@check("C10", "translations preserve extensions", "acceptance", "translate")
def c10(samples, seed, models=500, per_model=20):
    rng = rng_for(seed, "C10")
    checked = 0
    for i in range(models):
        m = random_model(rng, 5, 3)
        ev = Evaluator(m)
        for name, (fn, source, target) in translate.TRANSLATIONS.items():
            sampler = sampler_for(m, LANGUAGE_MODALITIES[source.value])
            for _ in range(per_model):
                f = sampler.sample(rng, 2)
                out = fn(f)
                if not in_language(out, target):
                    return False, f"{name}: output of {f} is in {language_of(out)}"
                if ev.ext(f) != ev.ext(out):
                    return False, f"model {i}: {name} changes the extension of {f}"
                checked += 1
    return True, f"{checked} formula/model/translation triples"


def _bisim_pair(rng):
    left = random_model(rng, 5, 3, min_agents=2)
    if rng.random() < 0.5:
        right = variant(rng, left)
    else:
        cfg = GeneratorConfig(rng.randint(1, 5), left.agent_count, rng.choice((0.2, 0.4, 0.6)), (), rng.getrandbits(64))
        right = generate(cfg)
    return left, right


@check("C11", "Hennessy-Milner property on random model pairs", "acceptance", "bisim")
def c11(samples, seed, pairs=200, formulas=200):
    rng = rng_for(seed, "C11")
    stats = {tag.value: [0, 0] for tag in bisim.LANGUAGE_KIND}
    for i in range(pairs):
        left, right = _bisim_pair(rng)
        for tag in bisim.LANGUAGE_KIND:
            dist = bisim.Distinguisher(left, right, tag)
            sampler = sampler_for(left, LANGUAGE_MODALITIES[tag.value])
            sample = [sampler.sample(rng, 3) for _ in range(formulas)]
            ev1, ev2 = Evaluator(left), Evaluator(right)
            exts = [(ev1.ext(f), ev2.ext(f)) for f in sample]
            for w1 in range(left.world_count):
                for w2 in range(right.world_count):
                    if left.label(w1) != right.label(w2):
                        continue
                    if dist.bisimilar(w1, w2):
                        stats[tag.value][0] += 1
                        for f, (e1, e2) in zip(sample, exts):
                            if (e1 >> w1 & 1) != (e2 >> w2 & 1):
                                return False, f"pair {i} {tag}: bisimilar ({w1},{w2}) disagree on {f}"
                    else:
                        stats[tag.value][1] += 1
                        f = dist.formula(w1, w2)
                        if f is None or not in_language(f, tag):
                            return False, f"pair {i} {tag}: no distinguisher in language for ({w1},{w2})"
    summary = ", ".join(f"{k}: {b} bisimilar / {d} distinguished" for k, (b, d) in stats.items())
    return True, f"{pairs} model pairs; {summary}"


def _candidate(rng, left, right):
    z = sorted(bisim.greatest_bisim(left, right, "bold").pairs)
    roll = rng.random()
    if roll < 0.35 and z:
        return set(z)
    if roll < 0.7 and z:
        pairs = {p for p in z if rng.random() < 0.8}
        if rng.random() < 0.5:
            pairs.add((rng.randrange(left.world_count), rng.randrange(right.world_count)))
        return pairs
    agree = [(a, b) for a in range(left.world_count) for b in range(right.world_count) if left.label(a) == right.label(b)]
    return {p for p in agree if rng.random() < 0.5}


@check("C12", "two formulations of bold bisimulation agree", "acceptance", "bisim")
def c12(samples, seed, count=500):
    rng = rng_for(seed, "C12")
    positive = 0
    for i in range(count):
        left, right = _bisim_pair(rng)
        pairs = _candidate(rng, left, right)
        v1 = bisim.check_bisim(bisim.BisimRelation(left, right, pairs, "bold_v1"))
        v2 = bisim.check_bisim(bisim.BisimRelation(left, right, pairs, "bold_v2"))
        if v1.ok != v2.ok:
            return False, f"candidate {i}: v1 {v1.ok} v2 {v2.ok} on {sorted(pairs)}"
        positive += v1.ok
    return True, f"{count} candidates, {positive} accepted by both, {count - positive} rejected by both"


@check("C13", "validity sweep and the cautious non-monotonicity witness", "acceptance", "semantics")
def c13(samples, seed, count=1000):
    rng = rng_for(seed, "C13")
    instances = 0
    for i in range(count):
        m = random_model(rng, 5, 3)
        ev = Evaluator(m)
        phi = sampler_for(m, LANGUAGE_MODALITIES["L_full"], 1).sample(rng, 1)
        for g in submasks(m.all_agents):
            G = group_names(m, g)
            all_bot = m.all_worlds
            for a in G:
                all_bot &= ev.ext(B(a, BOT))
            laws = [
                ev.ext(DCaut(G, BOT)) == all_bot,
                ev.ext(Not(DBold(G, BOT))) == m.all_worlds,
                ev.ext(Not(DBold(G, TOP))) == all_bot,
                ev.ext(Inc(G)) == ev.ext(D(G, BOT)),
                ev.ext(Imp(DCaut(G, phi), D(G, phi))) == m.all_worlds,
                ev.ext(Imp(DBold(G, phi), D(G, phi))) == m.all_worlds,
            ]
            for h in submasks(m.all_agents):
                if g & ~h == 0:
                    H = group_names(m, h)
                    laws.append(ev.ext(Imp(D(G, phi), D(H, phi))) == m.all_worlds)
                    laws.append(ev.ext(Imp(DBold(G, phi), DBold(H, phi))) == m.all_worlds)
            instances += len(laws)
            if not all(laws):
                return False, f"model {i}, group {G}: law {laws.index(False)} fails for {phi}"
    ex = fx.example_model()
    witness = evaluate(ex, "w1", "DC{b}q") and not evaluate(ex, "w1", "DC{a,b}q")
    return witness, f"{instances} instances on {count} models, 0 counterexamples; DC{{b}}q and not DC{{a,b}}q at w1: {witness}"


@check("C14", "reflexive collapse and serial inclusion", "acceptance", "semantics")
def c14(samples, seed, count=300, bodies=20):
    rng = rng_for(seed, "C14")
    for cls, label in ((("r",), "reflexive"), (("l",), "serial")):
        for i in range(count):
            m = random_model(rng, 5, 3, conds=cls)
            ev = Evaluator(m)
            sampler = sampler_for(m, LANGUAGE_MODALITIES["L_full"], 2)
            for _ in range(bodies):
                phi = sampler.sample(rng, 1)
                for g in submasks(m.all_agents):
                    G = group_names(m, g)
                    d, dc, db = ev.ext(D(G, phi)), ev.ext(DCaut(G, phi)), ev.ext(DBold(G, phi))
                    if label == "reflexive" and not d == dc == db:
                        return False, f"reflexive model {i}: {G} {phi} extensions differ"
                    if label == "serial" and dc & ~db:
                        return False, f"serial model {i}: DC not inside DB for {G} {phi}"
    return True, f"{count} reflexive and {count} serial models x {bodies} bodies"


@check("C15", "relational and neighbourhood conditions agree per agent", "acceptance", "frames")
def c15(samples, seed, count=500):
    rng = rng_for(seed, "C15")
    classes = [()] + [c for c in frames.CLASS_CONDITIONS.values() if c]
    held = dict.fromkeys(frames.RELATIONAL, 0)
    for i in range(count):
        m = random_model(rng, 5, 3, conds=rng.choice(classes))
        for a in range(m.agent_count):
            rows = m.succ_table(a)
            cores_at = [(r,) for r in rows]
            for x in frames.RELATIONAL:
                rel = frames.check_rows(rows, x) is None
                neigh = frames.check_cores(cores_at, m.world_count, x + "N") is None
                if rel != neigh:
                    return False, f"model {i}, agent {m.agents[a]}: {x} {rel} but {x}N {neigh}"
                held[x] += rel
    return True, f"{count} models, 0 disagreements; satisfied counts {held}"


def select(filter_tag: str | None = None) -> list[Check]:
    if not filter_tag:
        return list(REGISTRY)
    return [c for c in REGISTRY if filter_tag in c.tags or c.id == filter_tag or c.id.startswith(filter_tag)]


def run_checks(checks, samples: int, seed: int):
    """Yield ``(check, passed, detail, seconds)``; exceptions count as failures."""
    for c in checks:
        start = time.perf_counter()
        try:
            passed, detail = c.run(samples, seed)
        except Exception as exc:  # reported, not raised: the suite must finish
            passed, detail = False, f"error: {type(exc).__name__}: {exc}"
        yield c, passed, detail, time.perf_counter() - start

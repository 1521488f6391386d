import random

import pytest
from hypothesis import strategies as st

from doxa.model import BeliefModel


@st.composite
def small_models(draw, max_worlds=4, max_agents=3, min_agents=1):
    """Arbitrary models with up to ``max_worlds`` worlds and atoms p, q."""
    n = draw(st.integers(1, max_worlds))
    k = draw(st.integers(min_agents, max_agents))
    succ = [[draw(st.integers(0, (1 << n) - 1)) for _ in range(n)] for _ in range(k)]
    val = {"p": draw(st.integers(0, (1 << n) - 1)), "q": draw(st.integers(0, (1 << n) - 1))}
    return BeliefModel.from_masks("abc"[:k], [f"w{i}" for i in range(n)], succ, val)


@pytest.fixture
def rng():
    return random.Random(1234)


def formulas(agents=("a", "b", "c"), atoms=("p", "q"), modal=("B", "D", "DC", "DB", "Inc")):
    """Random formulas over the given constructors."""
    from doxa import formula as F

    groups = st.lists(st.sampled_from(agents), min_size=1, max_size=len(agents), unique=True)
    leaves = [st.sampled_from(atoms).map(F.Atom), st.just(F.TOP), st.just(F.BOT)]
    if "Inc" in modal:
        leaves.append(groups.map(F.Inc))
    build = {"D": F.D, "DC": F.DCaut, "DB": F.DBold}

    def extend(inner):
        options = [
            inner.map(F.Not),
            st.tuples(inner, inner).map(lambda t: F.And(*t)),
            st.tuples(inner, inner).map(lambda t: F.Or(*t)),
            st.tuples(inner, inner).map(lambda t: F.Imp(*t)),
            st.tuples(inner, inner).map(lambda t: F.Iff(*t)),
        ]
        if "B" in modal:
            options.append(st.tuples(st.sampled_from(agents), inner).map(lambda t: F.B(*t)))
        for name, cls in build.items():
            if name in modal:
                options.append(st.tuples(groups, inner).map(lambda t, cls=cls: cls(t[0], t[1])))
        return st.one_of(options)

    return st.recursive(st.one_of(leaves), extend, max_leaves=12)


@st.composite
def model_pairs(draw, max_worlds=4, max_agents=3):
    """Two models over the same agents; the right one is sometimes a relabelled copy."""
    k = draw(st.integers(1, max_agents))
    left = draw(small_models(max_worlds, k, k))
    if draw(st.booleans()):
        right = draw(small_models(max_worlds, k, k))
    else:
        perm = draw(st.permutations(range(left.world_count)))
        inv = {old: new for new, old in enumerate(perm)}
        remap = lambda mask: sum(1 << inv[i] for i in range(left.world_count) if mask >> i & 1)
        succ = [[remap(left.succ(a, perm[j])) for j in range(left.world_count)] for a in range(k)]
        val = {p: remap(left.atom_mask(p)) for p in left.atoms}
        right = BeliefModel.from_masks(left.agents, [f"v{i}" for i in range(left.world_count)], succ, val)
    return left, right

import pytest
from hypothesis import given, settings

from doxa.corpus.catalog import example_model
from doxa.model import (
    MAX_AGENTS, BeliefModel, Group, ModelError, cautious_relation, consistent_conjecture_set,
    from_mask, group_conjecture_set, iter_bits, max_consistent_subgroups, mcs_targets,
    neighbourhood_core, submasks, to_mask,
)

from .conftest import small_models
from .oracles import Naive, powerset


def test_mask_helpers():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert to_mask([0, 3]) == 0b1001
    assert from_mask(0b1001) == frozenset({0, 3})
    assert sorted(submasks(0b101)) == [0b001, 0b100, 0b101]
    assert list(submasks(0)) == []


def test_group_is_sorted_and_hashable():
    assert Group.of(2, 0) == Group.of(0, 2)
    assert Group.of(0, 2).mask == 0b101
    assert Group.from_mask(0b110) == Group.of(1, 2)
    assert Group.of(1).issubset(Group.of(0, 1))
    assert not Group.of(0, 1).issubset(Group.of(1))
    assert len({Group.of(0, 1), Group.of(1, 0)}) == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(agents=["a"], worlds=[]),
        dict(agents=["a", "a"], worlds=["w"]),
        dict(agents=["a"], worlds=["w", "w"]),
        dict(agents=["a"], worlds=["w"], relations={"a": [("w", "v")]}),
        dict(agents=["a"], worlds=["w"], relations={"z": []}),
        dict(agents=["a"], worlds=["w"], valuation={"p": ["v"]}),
        dict(agents=[f"a{i}" for i in range(MAX_AGENTS + 1)], worlds=["w"]),
    ],
)
def test_construction_errors(kwargs):
    with pytest.raises(ModelError):
        BeliefModel(**kwargs)


def test_from_masks_validates_shape():
    with pytest.raises(ModelError):
        BeliefModel.from_masks("a", ["w"], [[0b10]])
    with pytest.raises(ModelError):
        BeliefModel.from_masks("ab", ["w"], [[0]])


def test_structural_equality():
    m1 = BeliefModel(["a"], ["x", "y"], {"a": [("x", "y")]}, {"p": ["y"]})
    m2 = BeliefModel.from_masks(["a"], ["x", "y"], [[0b10, 0]], {"p": 0b10})
    assert m1 == m2 and hash(m1) == hash(m2)
    assert m1 != BeliefModel(["a"], ["x", "y"], {}, {"p": ["y"]})


def test_unknown_names_raise():
    m = example_model()
    with pytest.raises(ModelError):
        m.world_index("nowhere")
    with pytest.raises(ModelError):
        m.agent_index("z")
    with pytest.raises(ModelError):
        group_conjecture_set(m, "ab", "w1")


def test_example_subgroups():
    m = example_model()
    fam = max_consistent_subgroups(m, ["a", "b"], "w1")
    assert {frozenset(m.agents[i] for i in g) for g in fam} == {frozenset("a"), frozenset("b")}
    fam = max_consistent_subgroups(m, ["a", "b", "c"], "w1")
    assert {frozenset(m.agents[i] for i in g) for g in fam} == {frozenset("a"), frozenset("bc")}
    names = lambda s: {m.worlds[i] for i in s}
    assert names(consistent_conjecture_set(m, ["a", "b"], "w1")) == {"w1", "w2", "w3"}
    assert names(consistent_conjecture_set(m, ["a", "b", "c"], "w1")) == {"w1", "w2"}


def test_single_agent_subgroups():
    m = BeliefModel(["a"], ["w"], {})
    assert len(max_consistent_subgroups(m, ["a"], "w")) == 0
    m = BeliefModel(["a"], ["w"], {"a": [("w", "w")]})
    assert list(max_consistent_subgroups(m, ["a"], "w")) == [Group.of(0)]


@settings(max_examples=200, deadline=None)
@given(small_models())
def test_mcs_matches_brute_force(m):
    naive = Naive(m)
    for g in powerset(range(m.agent_count)):
        if not g:
            continue
        group = Group(tuple(sorted(g)))
        for w in range(m.world_count):
            got = {frozenset(h) for h in max_consistent_subgroups(m, group, w)}
            assert got == set(naive.mcs(g, w))
            assert group_conjecture_set(m, group, w) == naive.gcs(g, w)
            assert consistent_conjecture_set(m, group, w) == naive.ccs(g, w)
            assert mcs_targets(m, group, w) == {naive.gcs(h, w) for h in naive.mcs(g, w)}


@settings(max_examples=100, deadline=None)
@given(small_models())
def test_cautious_relation_and_core(m):
    naive = Naive(m)
    full = Group(tuple(range(m.agent_count)))
    g = frozenset(range(m.agent_count))
    assert cautious_relation(m, full) == {(w, v) for w in naive.W for v in naive.ccs(g, w)}
    for w in range(m.world_count):
        core = neighbourhood_core(m, full, w)
        hood = naive.neighbourhood(g, w)
        for u in powerset(naive.W):
            assert core.contains(u) == (u in hood)


def test_mcs_are_antichain_and_maximal():
    # three agents pairwise consistent but jointly inconsistent
    m = BeliefModel("abc", ["x", "y", "z"], {"a": [("x", "x"), ("x", "y")], "b": [("x", "y"), ("x", "z")], "c": [("x", "x"), ("x", "z")]})
    fam = max_consistent_subgroups(m, list("abc"), "x")
    assert {tuple(g) for g in fam} == {(0, 1), (0, 2), (1, 2)}

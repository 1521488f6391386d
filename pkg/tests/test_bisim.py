import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doxa.bisim import (
    LANGUAGE_KIND, BisimKind, BisimRelation, Distinguisher, check_bisim, distinguishing_formula,
    greatest_bisim, refine,
)
from doxa.corpus.catalog import SEPARATION_PAIRS, bold_cautious_models, separation_models
from doxa.formula import in_language
from doxa.model import BeliefModel, ModelError

from .conftest import formulas, model_pairs
from .oracles import Naive, naive_greatest

ORACLE_KIND = {"collective": "collective", "cautious": "cautious", "bold_v1": "bold", "bold_v2": "bold"}
LANG_MODAL = {"L_D": ("B", "D"), "L_DCaut": ("DC",), "L_DBold": ("DB",)}


def test_kind_parsing():
    assert BisimKind.parse("bold") is BisimKind.BOLD_V2
    assert BisimKind.parse("cautious") is BisimKind.CAUTIOUS
    with pytest.raises(ValueError):
        BisimKind.parse("strong")


@pytest.mark.parametrize("kind", sorted(ORACLE_KIND))
@settings(max_examples=120, deadline=None)
@given(pair=model_pairs())
def test_greatest_matches_fixpoint_oracle(kind, pair):
    left, right = pair
    z = greatest_bisim(left, right, kind)
    assert set(z.pairs) == naive_greatest(left, right, ORACLE_KIND[kind])
    if z.pairs:
        assert check_bisim(z).ok


@settings(max_examples=120, deadline=None)
@given(pair=model_pairs(), data=st.data())
def test_bisimilar_points_agree_and_others_are_separated(pair, data):
    left, right = pair
    n1, n2 = Naive(left), Naive(right)
    for tag, kind in LANGUAGE_KIND.items():
        dist = Distinguisher(left, right, tag)
        sample = [data.draw(formulas(agents=left.agents, modal=LANG_MODAL[tag.value])) for _ in range(5)]
        for w1 in range(left.world_count):
            for w2 in range(right.world_count):
                if dist.bisimilar(w1, w2):
                    assert dist.formula(w1, w2) is None
                    for f in sample:
                        assert n1.holds(w1, f) == n2.holds(w2, f)
                else:
                    f = dist.formula(w1, w2)
                    assert in_language(f, tag)
                    assert n1.holds(w1, f) and not n2.holds(w2, f)


def test_relabelled_copy_is_fully_bisimilar():
    left, _ = separation_models()
    for kind in BisimKind:
        z = greatest_bisim(left, left, kind)
        assert {(w, w) for w in range(left.world_count)} <= z.pairs


def test_separation_pairs():
    left, right = separation_models()
    for kind in ("cautious", "bold"):
        z = greatest_bisim(left, right, kind)
        assert all(p in z for p in SEPARATION_PAIRS)
    assert ("w", "w'") not in greatest_bisim(left, right, "collective")
    f = distinguishing_formula(left, "w", right, "w'", "L_D")
    assert f is not None and in_language(f, "L_D")
    assert distinguishing_formula(left, "w", right, "w'", "L_DCaut") is None


def test_bold_cannot_see_cautious():
    left, right = bold_cautious_models()
    assert ("w", "w'") in greatest_bisim(left, right, "bold")
    assert ("w", "w'") not in greatest_bisim(left, right, "cautious")
    f = distinguishing_formula(left, "w", right, "w'", "L_DCaut")
    assert in_language(f, "L_DCaut")


def test_check_bisim_reports_clause():
    left, right = separation_models()
    z = BisimRelation.named(left, right, [("w", "w'")], "collective")
    result = check_bisim(z)
    assert not result and result.pair is not None and result.clause in ("forth", "back")
    assert check_bisim(BisimRelation(left, right, (), "cautious")).clause == "empty"


def test_atom_clause():
    m1 = BeliefModel("a", ["x"], {}, {"p": ["x"]})
    m2 = BeliefModel("a", ["y"], {}, {})
    assert check_bisim(BisimRelation.named(m1, m2, [("x", "y")], "collective")).clause == "atom"
    assert str(distinguishing_formula(m1, "x", m2, "y", "L_D")) == "p"
    assert str(distinguishing_formula(m2, "y", m1, "x", "L_D")) == "~p"


def test_agent_sets_must_match():
    m1 = BeliefModel("a", ["x"], {})
    m2 = BeliefModel("b", ["x"], {})
    with pytest.raises(ModelError):
        greatest_bisim(m1, m2, "collective")


def test_refinement_history_is_monotone():
    left, right = bold_cautious_models()
    ref = refine(left, right, "cautious")
    for a, b in zip(ref.snapshots, ref.snapshots[1:]):
        assert b < a
    assert all(p not in ref.final for p in ref.deleted_at)

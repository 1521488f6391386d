import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doxa.formula import LanguageTag, in_language, parse, to_text
from doxa.translate import (
    CLI_TARGETS, TRANSLATIONS, LanguageError, bold_to_d, cautious_to_d, d_to_bold_inc,
    d_to_cautious_inc, subgroups, to_d, translate_for_cli,
)

from .conftest import formulas, small_models
from .oracles import Naive

SOURCE_MODAL = {
    LanguageTag.L_D: ("B", "D"),
    LanguageTag.L_DCaut: ("DC",),
    LanguageTag.L_DBold: ("DB",),
}


def test_subgroups_order():
    assert subgroups(("a", "b")) == [("a",), ("a", "b"), ("b",)]
    assert len(subgroups(("a", "b", "c"))) == 7


@pytest.mark.parametrize("name", sorted(TRANSLATIONS))
@settings(max_examples=80, deadline=None)
@given(m=small_models(), data=st.data())
def test_translation_preserves_extension(name, m, data):
    fn, source, target = TRANSLATIONS[name]
    f = data.draw(formulas(agents=m.agents, modal=SOURCE_MODAL[source]))
    out = fn(f)
    assert in_language(out, target)
    naive = Naive(m)
    assert naive.extension(out) == naive.extension(f)


@pytest.mark.parametrize(
    "fn, text",
    [
        (cautious_to_d, "D{a}p"),
        (bold_to_d, "DC{a}p"),
        (d_to_cautious_inc, "DB{a}p"),
        (d_to_bold_inc, "Inc{a}"),
    ],
)
def test_wrong_source_language(fn, text):
    with pytest.raises(LanguageError):
        fn(text)


def test_single_agent_shapes():
    assert to_text(bold_to_d("DB{a}p")) == "~D{a} bot & D{a} p"
    assert to_text(d_to_cautious_inc("B{a}p")) == "Inc{a} | DC{a} p"
    assert to_text(d_to_bold_inc("D{a,b}p")) == "Inc{a,b} | DB{a,b} p"


def test_nested_rewrite_is_innermost_first():
    out = cautious_to_d("DC{a}DC{b}p")
    assert in_language(out, LanguageTag.L_D)
    assert "DC" not in to_text(out)


def test_booleans_untouched():
    f = parse("p & ~q -> r")
    for fn, _, _ in TRANSLATIONS.values():
        assert fn(f) == f


def test_to_d_dispatch():
    assert to_d("D{a}p") == parse("D{a}p")
    assert to_d("DC{a}p") == cautious_to_d("DC{a}p")
    assert to_d("DB{a}p") == bold_to_d("DB{a}p")
    with pytest.raises(LanguageError):
        to_d("DC{a}p & DB{a}p")


def test_cli_targets():
    assert set(CLI_TARGETS) == {"D", "DfromDCaut", "DfromDBold", "DCautInc", "DBoldInc", "DCautFromDBold"}
    assert translate_for_cli("DB{a}p", "DfromDBold") == bold_to_d("DB{a}p")
    with pytest.raises(LanguageError):
        translate_for_cli("p", "nope")

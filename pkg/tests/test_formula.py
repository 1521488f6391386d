import pytest
from hypothesis import given, settings

from doxa.formula import (
    BOT, TOP, And, Atom, B, D, DBold, DCaut, FormulaSyntaxError, Iff, Imp, Inc, LanguageTag, Not, Or,
    agents_of, atoms_of, conj, disj, in_language, language_of, modal_depth, parse, size, to_text,
)

from .conftest import formulas

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_structural_equality_and_hash():
    assert And(p, q) == And(Atom("p"), Atom("q"))
    assert hash(D(("b", "a"), p)) == hash(D(("a", "b"), p))
    assert D(("b", "a"), p).group == ("a", "b")
    assert DCaut(("a",), p) != DBold(("a",), p)
    assert len({And(p, q), And(p, q), Or(p, q)}) == 2


def test_operator_sugar():
    assert ~p == Not(p)
    assert (p & q) == And(p, q)
    assert (p | q) == Or(p, q)
    assert (p >> q) == Imp(p, q)


def test_conj_disj_empty():
    assert conj([]) == TOP
    assert disj([]) == BOT
    assert conj([p]) == p
    assert conj([p, q, r]) == And(And(p, q), r)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p & q | r", Or(And(p, q), r)),
        ("p -> q -> r", Imp(p, Imp(q, r))),
        ("p <-> q <-> r", Iff(Iff(p, q), r)),
        ("~p & q", And(Not(p), q)),
        ("B{a} p & q", And(B("a", p), q)),
        ("D{a,b}(p -> q)", D(("a", "b"), Imp(p, q))),
        ("DC{b}q", DCaut(("b",), q)),
        ("DB{a,b} top", DBold(("a", "b"), TOP)),
        ("Inc{a,b}", Inc(("a", "b"))),
        ("dB{a}p", Not(B("a", Not(p)))),
        ("dDB{a}(p->q)", Not(DBold(("a",), Not(Imp(p, q))))),
        ("dD{a}~p", Not(D(("a",), Not(Not(p))))),
        ("dDC{a,b}bot", Not(DCaut(("a", "b"), Not(BOT)))),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "text, pos",
    [
        ("p &", 3),
        ("p $ q", 2),
        ("(p", 2),
        ("B{a,b}p", 0),
        ("D{}p", 2),
        ("D{top}p", 2),
        ("p q", 2),
        ("", 0),
        ("Pq", 0),
        ("D", 0),
        ("Inc & p", 0),
    ],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.pos == pos


def test_printer_is_minimal():
    assert to_text(Or(And(p, q), r)) == "p & q | r"
    assert to_text(And(Or(p, q), r)) == "(p | q) & r"
    assert to_text(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert to_text(Imp(p, Imp(q, r))) == "p -> q -> r"
    assert to_text(D(("a", "b"), Not(TOP))) == "D{a,b}~top"
    assert to_text(D(("a",), p)) == "D{a} p"
    assert to_text(Not(B("a", Not(p)))) == "~B{a}~p"


@settings(max_examples=500, deadline=None)
@given(formulas())
def test_print_parse_round_trip(f):
    assert parse(to_text(f)) == f


def test_measures():
    f = parse("D{a,b}(p & B{c}q) | Inc{a}")
    assert size(f) == 7
    assert modal_depth(f) == 2
    assert agents_of(f) == {"a", "b", "c"}
    assert atoms_of(f) == {"p", "q"}


@pytest.mark.parametrize(
    "text, tag",
    [
        ("p & ~q", LanguageTag.L_D),
        ("B{a}p", LanguageTag.L_D),
        ("D{a}p", LanguageTag.L_D),
        ("DC{a}p", LanguageTag.L_DCaut),
        ("DB{a}p", LanguageTag.L_DBold),
        ("DC{a}p | Inc{a}", LanguageTag.L_DCaut_Inc),
        ("DB{a}p | Inc{a}", LanguageTag.L_DBold_Inc),
        ("DB{a}p | DC{a}p", LanguageTag.L_full),
        ("D{a}p | DC{a}p", LanguageTag.L_full),
        ("Inc{a}", LanguageTag.L_DCaut_Inc),
    ],
)
def test_language_of(text, tag):
    f = parse(text)
    assert language_of(f) == tag
    assert in_language(f, tag)
    assert in_language(f, LanguageTag.L_full)


def test_in_language_rejects():
    assert not in_language(parse("D{a}p"), LanguageTag.L_DCaut)
    assert not in_language(parse("Inc{a}"), LanguageTag.L_DCaut)
    assert in_language(parse("p"), LanguageTag.L_DBold)

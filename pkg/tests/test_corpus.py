import random

import pytest
from hypothesis import given, settings

from doxa.corpus import GeneratorConfig, fixtures, generate, load_model, save_model
from doxa.corpus.generate import FormulaSampler, random_formula, variant
from doxa.corpus.io import ModelFormatError, dumps_model, loads_model
from doxa.formula import LanguageTag, in_language
from doxa.model import ModelError

from .conftest import small_models
from .oracles import naive_relational


@settings(max_examples=200, deadline=None)
@given(small_models())
def test_text_round_trip(m):
    text = dumps_model(m)
    again = loads_model(text)
    assert again == m
    assert dumps_model(again) == text


def test_file_round_trip(tmp_path):
    m = generate(GeneratorConfig(4, 2, 0.4, ("r",), seed=3))
    path = tmp_path / "m.json"
    save_model(m, path)
    assert load_model(path) == m


def test_points_survive(tmp_path):
    m = loads_model('{"agents": ["a"], "worlds": ["x", "y"], "points": {"main": "y"}}')
    assert m.points == {"main": 1}
    assert loads_model(dumps_model(m)).points == {"main": 1}


def test_unknown_key_reports_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "agents": ["a"],\n  "worlds": ["w"],\n  "edges": {}\n}\n')
    with pytest.raises(ModelFormatError) as info:
        load_model(path)
    assert info.value.line == 4
    assert str(path) in str(info.value)
    assert "edges" in info.value.reason


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        '{"agents": ["a"]}',
        '{"agents": "a", "worlds": ["w"]}',
        '{"agents": ["a"], "worlds": ["w"], "relations": {"a": [["w"]]}}',
        '{"agents": ["a"], "worlds": ["w"], "relations": {"a": [["w", "v"]]}}',
        '{"agents": ["a"], "worlds": ["w"], "valuation": {"p": "w"}}',
        '{"agents": ["a"], "worlds": ["w"], "points": {"main": 1}}',
        '{"agents": ["a"], "worlds": ["w"',
    ],
)
def test_malformed_files(text):
    with pytest.raises(ModelFormatError):
        loads_model(text)


def test_generator_is_deterministic():
    cfg = GeneratorConfig(5, 3, 0.3, ("l", "t", "e"), seed=99)
    assert dumps_model(generate(cfg)) == dumps_model(generate(cfg))


@pytest.mark.parametrize("conds", [(), ("l",), ("r",), ("t",), ("s",), ("e",), ("l", "t", "e"), ("r", "e"), ("r", "t"), ("t", "s")])
def test_generator_respects_class(conds):
    rng = random.Random(str(conds))
    for _ in range(60):
        cfg = GeneratorConfig(rng.randint(1, 6), rng.randint(1, 3), rng.random(), conds, rng.getrandbits(32))
        m = generate(cfg)
        for a in range(m.agent_count):
            for c in conds:
                assert naive_relational(m.relations[a], range(m.world_count), c)


def test_generator_config_validation():
    with pytest.raises(ModelError):
        GeneratorConfig(0, 1)
    with pytest.raises(ModelError):
        GeneratorConfig(2, 1, 1.5)
    with pytest.raises(ModelError):
        GeneratorConfig(2, 1, 0.5, ("x",))


def test_variant_keeps_labels():
    rng = random.Random(0)
    m = generate(GeneratorConfig(4, 2, 0.4, (), seed=1))
    v = variant(rng, m)
    assert v.agents == m.agents
    assert {m.label(w) for w in range(m.world_count)} == {v.label(w) for w in range(v.world_count)}


def test_formula_sampler_stays_in_language():
    rng = random.Random(4)
    for tag, modal in (("L_D", ("D",)), ("L_DCaut", ("DC",)), ("L_DBold", ("DB",))):
        sampler = FormulaSampler(("p", "q"), ("a", "b"), modal, 2)
        for _ in range(50):
            assert in_language(sampler.sample(rng, 3), LanguageTag(tag))
    assert random_formula(random.Random(1)) == random_formula(random.Random(1))


def test_fixture_catalogue():
    ids = [fx.id for fx in fixtures()]
    assert len(ids) == len(set(ids))
    for fx in fixtures():
        for ok, detail in fx.check():
            assert ok, f"{fx.id}: {detail}"
        for m in fx.models.values():
            assert loads_model(dumps_model(m)) == m

import pytest

from doxa.cli import main
from doxa.corpus import save_model
from doxa.corpus.catalog import bold_cautious_models, example_model, separation_models
from doxa.corpus.io import loads_model


@pytest.fixture
def files(tmp_path):
    paths = {}
    m = example_model()
    paths["example"] = tmp_path / "example.json"
    save_model(m, paths["example"])
    left, right = separation_models()
    for name, model in (("left", left), ("right", right)):
        paths[name] = tmp_path / f"{name}.json"
        save_model(model, paths[name])
    return paths


def test_check_true_and_false(files, capsys):
    assert main(["check", "--model", str(files["example"]), "--world", "w1", "--formula", "DC{b}q"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["check", "--model", str(files["example"]), "--world", "w1", "--formula", "DC{a,b}q"]) == 1
    assert capsys.readouterr().out.strip() == "false"


def test_check_trace(files, capsys):
    main(["check", "--model", str(files["example"]), "--world", "w1", "--formula", "DC{a,b,c}p", "--trace"])
    out = capsys.readouterr().out.splitlines()
    assert "mcs {a,b,c} at w1: {a} {b,c}" in out
    assert out[-1] in ("true", "false")


def test_check_errors_exit_2(files, capsys):
    assert main(["check", "--model", str(files["example"]), "--world", "w1", "--formula", "p &"]) == 2
    assert "position" in capsys.readouterr().err
    assert main(["check", "--model", str(files["example"]), "--world", "w1", "--formula", "D{z}p"]) == 2
    assert main(["check", "--model", str(files["example"]), "--world", "nowhere", "--formula", "p"]) == 2
    assert main(["check", "--model", str(files["example"]) + ".missing", "--world", "w1", "--formula", "p"]) == 2


def test_check_valid(files, capsys):
    assert main(["check", "--model", str(files["example"]), "--valid", "--formula", "p | ~p"]) == 0
    assert main(["check", "--model", str(files["example"]), "--valid", "--formula", "p"]) == 1


def test_bisim_pair_and_listing(files, capsys):
    args = ["bisim", "--left", str(files["left"]), "--right", str(files["right"])]
    assert main(args + ["--kind", "cautious", "--pair", "w,w'"]) == 0
    assert capsys.readouterr().out.strip() == "bisimilar"
    assert main(args + ["--kind", "collective", "--pair", "w,w'"]) == 1
    assert capsys.readouterr().out.strip() == "not bisimilar"
    assert main(args + ["--kind", "bold"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "w\tw'" in lines


def test_bisim_distinguish(files, capsys):
    args = ["bisim", "--left", str(files["left"]), "--right", str(files["right"]), "--pair", "w,w'"]
    assert main(args + ["--distinguish", "L_D"]) == 0
    f = capsys.readouterr().out.strip()
    assert f != "none"
    left = loads_model(files["left"].read_text())
    right = loads_model(files["right"].read_text())
    from doxa.semantics import evaluate

    assert evaluate(left, "w", f) and not evaluate(right, "w'", f)
    assert main(args + ["--distinguish", "L_DCaut"]) == 0
    assert capsys.readouterr().out.strip() == "none"


def test_translate(capsys):
    assert main(["translate", "--formula", "DB{a}p", "--to", "DfromDBold"]) == 0
    assert capsys.readouterr().out.strip() == "~D{a} bot & D{a} p"
    assert main(["translate", "--formula", "DB{a}p", "--to", "DCautInc"]) == 2


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["gen", "--worlds", "4", "--agents", "2", "--class", "KD45", "--seed", "5", "--out", str(out)]) == 0
    m = loads_model(out.read_text())
    assert m.world_count == 4 and m.agent_count == 2
    assert main(["gen", "--worlds", "4", "--agents", "2", "--class", "KD45", "--seed", "5"]) == 0
    assert capsys.readouterr().out == out.read_text()
    assert main(["gen", "--worlds", "4", "--agents", "2", "--class", "nonsense"]) == 2


def test_reproduce_fixtures(capsys, monkeypatch):
    monkeypatch.setenv("DOXA_SEED", "7")
    assert main(["reproduce", "--filter", "fixtures", "--samples", "5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("seed 7,")
    assert "FAIL" not in out
    assert main(["reproduce", "--filter", "no-such-tag"]) == 2


def test_bold_cautious_fixture_via_cli(tmp_path, capsys):
    left, right = bold_cautious_models()
    save_model(left, tmp_path / "l.json")
    save_model(right, tmp_path / "r.json")
    args = ["bisim", "--left", str(tmp_path / "l.json"), "--right", str(tmp_path / "r.json"), "--pair", "w,w'"]
    assert main(args + ["--kind", "bold"]) == 0
    assert main(args + ["--kind", "cautious"]) == 1

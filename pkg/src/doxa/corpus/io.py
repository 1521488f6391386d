"""JSON model files.

A file holds one object with keys ``agents`` and ``worlds`` (required) and
``relations``, ``valuation``, ``points`` (optional).  Any other key is an
error.  ``save_model`` writes the canonical layout, one top-level key per
line, which ``load_model`` followed by ``save_model`` reproduces exactly.
"""

from __future__ import annotations

import json
import os
from typing import Any

from ..model import BeliefModel, ModelError, iter_bits

KEYS = ("agents", "worlds", "relations", "valuation", "points")
REQUIRED = ("agents", "worlds")


class ModelFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.reason = message
        self.line = line
        self.path = path


def _line_of(text: str, key: str) -> int | None:
    needle = json.dumps(key)
    idx = text.find(needle)
    if idx < 0:
        return None
    return text.count("\n", 0, idx) + 1


def _str_list(value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValueError(f"{what} must be a list of strings")
    return value


def model_from_dict(data: Any, text: str = "") -> BeliefModel:
    def fail(message, key=None):
        raise ModelFormatError(message, _line_of(text, key) if key else None)

    if not isinstance(data, dict):
        fail("top level must be a JSON object")
    for key in data:
        if key not in KEYS:
            fail(f"unknown key {key!r}", key)
    for key in REQUIRED:
        if key not in data:
            fail(f"missing required key {key!r}")
    try:
        agents = _str_list(data["agents"], "agents")
        worlds = _str_list(data["worlds"], "worlds")
    except ValueError as exc:
        fail(str(exc), "agents")
    relations = data.get("relations", {})
    if not isinstance(relations, dict):
        fail("relations must be an object", "relations")
    pairs = {}
    for agent, edges in relations.items():
        if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e) for e in edges
        ):
            fail(f"relation of {agent!r} must be a list of [source, target] pairs", agent)
        pairs[agent] = [tuple(e) for e in edges]
    valuation = data.get("valuation", {})
    if not isinstance(valuation, dict):
        fail("valuation must be an object", "valuation")
    for atom, ws in valuation.items():
        try:
            _str_list(ws, f"valuation of {atom!r}")
        except ValueError as exc:
            fail(str(exc), atom)
    points = data.get("points", {})
    if not isinstance(points, dict) or not all(isinstance(v, str) for v in points.values()):
        fail("points must map names to world names", "points")
    try:
        return BeliefModel(agents, worlds, pairs, valuation, points)
    except ModelError as exc:
        fail(str(exc))


def loads_model(text: str) -> BeliefModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(exc.msg, exc.lineno) from None
    return model_from_dict(data, text)


def load_model(path: str | os.PathLike) -> BeliefModel:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads_model(text)
    except ModelFormatError as exc:
        raise ModelFormatError(exc.reason, exc.line, os.fspath(path)) from None


def model_to_dict(m: BeliefModel) -> dict:
    return {
        "agents": list(m.agents),
        "worlds": list(m.worlds),
        "relations": {
            agent: [[m.worlds[w], m.worlds[v]] for w in range(m.world_count) for v in iter_bits(m.succ(a, w))]
            for a, agent in enumerate(m.agents)
        },
        "valuation": {atom: m.world_names(m.atom_mask(atom)) for atom in m.atoms},
        "points": {name: m.worlds[w] for name, w in sorted(m.points.items())},
    }


def dumps_model(m: BeliefModel) -> str:
    data = model_to_dict(m)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in data.items())
    return "{\n" + body + "\n}\n"


def save_model(m: BeliefModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(m))

"""Command-line front end: ``doxa check|bisim|translate|reproduce|gen``."""

from __future__ import annotations

import argparse
import os
import sys

from . import bisim, frames, reproduce, translate
from .corpus.generate import GeneratorConfig, generate
from .corpus.io import dumps_model, load_model
from .formula import FormulaSyntaxError, LanguageTag, parse, to_text
from .model import ModelError
from .semantics import BindingError, Evaluator, trace

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def _point(m, world):
    if world is not None:
        return m.world_index(world)
    if "main" in m.points:
        return m.points["main"]
    raise UsageError("--world is required (the model has no 'main' point)")


def cmd_check(args) -> int:
    m = load_model(args.model)
    f = parse(args.formula)
    ev = Evaluator(m)
    ext = ev.ext(f)
    if args.valid:
        verdict = ext == m.all_worlds
        if args.trace:
            for line in trace(m, 0, f):
                if not line.startswith("mcs "):
                    print(line)
    else:
        w = _point(m, args.world)
        verdict = bool(ext >> w & 1)
        if args.trace:
            for line in trace(m, w, f):
                print(line)
    print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_bisim(args) -> int:
    left = load_model(args.left)
    right = load_model(args.right)
    if args.distinguish:
        if not args.pair:
            raise UsageError("--distinguish needs --pair")
        w1, w2 = _pair(left, right, args.pair)
        f = bisim.distinguishing_formula(left, w1, right, w2, args.distinguish)
        print("none" if f is None else to_text(f))
        return 0
    if not args.kind:
        raise UsageError("--kind is required unless --distinguish is given")
    z = bisim.greatest_bisim(left, right, args.kind)
    if args.pair:
        pair = _pair(left, right, args.pair)
        inside = pair in z.pairs
        print("bisimilar" if inside else "not bisimilar")
        return 0 if inside else 1
    for a, b in z.named_pairs():
        print(f"{a}\t{b}")
    return 0


def _pair(left, right, text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--pair expects 'w,w2', got {text!r}")
    return left.world_index(parts[0].strip()), right.world_index(parts[1].strip())


def cmd_translate(args) -> int:
    print(to_text(translate.translate_for_cli(parse(args.formula), args.to)))
    return 0


def cmd_reproduce(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("DOXA_SEED", DEFAULT_SEED))
    checks = reproduce.select(args.filter)
    if not checks:
        raise UsageError(f"no checks match {args.filter!r}")
    failed = 0
    print(f"seed {seed}, samples {args.samples}")
    for c, passed, detail, seconds in reproduce.run_checks(checks, args.samples, seed):
        failed += not passed
        print(f"{'PASS' if passed else 'FAIL'}\t{c.id}\t{seconds:.2f}s\t{c.title}: {detail}", flush=True)
    print(f"{len(checks) - failed}/{len(checks)} passed")
    return 0 if failed == 0 else 1


def cmd_gen(args) -> int:
    try:
        conds = frames.parse_class(args.cls)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = GeneratorConfig(args.worlds, args.agents, args.density, conds, args.seed)
    text = dumps_model(generate(cfg))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="doxa", description="Model checker for distributed, cautious and bold group belief.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula on a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--world", help="world name (defaults to the model's 'main' point)")
    p.add_argument("--formula", required=True)
    p.add_argument("--valid", action="store_true", help="check truth at every world instead")
    p.add_argument("--trace", action="store_true", help="print subformula extensions and subgroups")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bisim", help="greatest bisimulation between two model files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--kind", choices=[k.value for k in bisim.BisimKind] + ["bold"])
    p.add_argument("--pair", help="left,right world names")
    p.add_argument("--distinguish", choices=[t.value for t in bisim.LANGUAGE_KIND])
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("translate", help="rewrite a formula into another language")
    p.add_argument("--formula", required=True)
    p.add_argument("--to", required=True, choices=list(translate.CLI_TARGETS))
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("reproduce", help="run fixtures, sweeps and acceptance checks")
    p.add_argument("--filter", help="tag or check id prefix, e.g. preservation or C09")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=None, help=f"default {DEFAULT_SEED}, or $DOXA_SEED")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("gen", help="write a random model of a frame class")
    p.add_argument("--worlds", type=int, required=True)
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--class", dest="cls", default="K", help="logic name (KD45, S5, ...) or conditions (lte)")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormulaSyntaxError, BindingError, ModelError, translate.LanguageError, ValueError, OSError) as exc:
        print(f"doxa {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Formula syntax: AST nodes, parser, printer and language tags.

Dual modalities (``dB``, ``dD``, ``dDC``, ``dDB``) exist only in the concrete
syntax.  The parser expands them to ``Not(Op(Not(body)))`` and the printer
never re-sugars them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


class Formula:
    """Base class.  Equality is structural and hashes are cached per node."""

    __slots__ = ()

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        if hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            pass
        # hash uncached descendants bottom-up so deep chains never recurse
        order, stack = [], [self]
        while stack:
            node = stack.pop()
            if "_hash" not in node.__dict__:
                order.append(node)
                stack.extend(node.children())
        for node in reversed(order):
            if "_hash" not in node.__dict__:
                object.__setattr__(node, "_hash", hash((type(node).__name__,) + node._key()))
        return self.__dict__["_hash"]

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __str__(self):
        return to_text(self)

    # operator sugar for building formulas in code
    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Imp(self, other)


def _group(agents) -> tuple[str, ...]:
    if isinstance(agents, str):
        agents = (agents,)
    members = tuple(sorted(set(agents)))
    if not members:
        raise ValueError("a group must contain at least one agent")
    return members


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str

    def _key(self):
        return (self.name,)


@dataclass(frozen=True, eq=False)
class Top(Formula):
    def _key(self):
        return ()


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    def _key(self):
        return ()


@dataclass(frozen=True, eq=False)
class Not(Formula):
    body: Formula

    def _key(self):
        return (self.body,)

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    def _key(self):
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Imp(_Binary):
    pass


class Iff(_Binary):
    pass


@dataclass(frozen=True, eq=False)
class B(Formula):
    agent: str
    body: Formula

    def _key(self):
        return (self.agent, self.body)

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False)
class _GroupModal(Formula):
    group: tuple[str, ...]
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "group", _group(self.group))

    def _key(self):
        return (self.group, self.body)

    def children(self):
        return (self.body,)


class D(_GroupModal):
    """Distributed belief over the combined conjecture set."""


class DCaut(_GroupModal):
    """Cautious distributed belief: every maximally consistent subgroup."""


class DBold(_GroupModal):
    """Bold distributed belief: some maximally consistent subgroup."""


@dataclass(frozen=True, eq=False)
class Inc(Formula):
    group: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "group", _group(self.group))

    def _key(self):
        return (self.group,)


TOP = Top()
BOT = Bot()


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``top``."""
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return TOP if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; the empty disjunction is ``bot``."""
    out = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return BOT if out is None else out


def walk(f: Formula) -> Iterator[Formula]:
    """Every distinct node once (by identity), parents before children."""
    seen = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(reversed(node.children()))


def size(f: Formula) -> int:
    """Node count of the tree, counting shared subtrees once per occurrence."""
    memo: dict[int, int] = {}

    def go(node):
        got = memo.get(id(node))
        if got is None:
            got = 1 + sum(go(c) for c in node.children())
            memo[id(node)] = got
        return got

    return go(f)


def modal_depth(f: Formula) -> int:
    memo: dict[int, int] = {}

    def go(node):
        got = memo.get(id(node))
        if got is None:
            inner = max((go(c) for c in node.children()), default=0)
            got = inner + 1 if isinstance(node, (B, _GroupModal)) else inner
            memo[id(node)] = got
        return got

    return go(f)


def agents_of(f: Formula) -> set[str]:
    out: set[str] = set()
    for node in walk(f):
        if isinstance(node, B):
            out.add(node.agent)
        elif isinstance(node, (_GroupModal, Inc)):
            out.update(node.group)
    return out


def atoms_of(f: Formula) -> set[str]:
    return {node.name for node in walk(f) if isinstance(node, Atom)}


# -- language tags -------------------------------------------------------


class LanguageTag(str, Enum):
    L_D = "L_D"
    L_DCaut = "L_DCaut"
    L_DBold = "L_DBold"
    L_DCaut_Inc = "L_DCaut_Inc"
    L_DBold_Inc = "L_DBold_Inc"
    L_full = "L_full"

    def __str__(self):
        return self.value


# B is a singleton D, so it belongs wherever D does.
_MODALITIES = {
    LanguageTag.L_D: frozenset({"D"}),
    LanguageTag.L_DCaut: frozenset({"DC"}),
    LanguageTag.L_DBold: frozenset({"DB"}),
    LanguageTag.L_DCaut_Inc: frozenset({"DC", "Inc"}),
    LanguageTag.L_DBold_Inc: frozenset({"DB", "Inc"}),
    LanguageTag.L_full: frozenset({"D", "DC", "DB", "Inc"}),
}

_KIND = {B: "D", D: "D", DCaut: "DC", DBold: "DB", Inc: "Inc"}


def modalities_used(f: Formula) -> frozenset[str]:
    return frozenset(_KIND[type(n)] for n in walk(f) if type(n) in _KIND)


def in_language(f: Formula, tag: LanguageTag | str) -> bool:
    return modalities_used(f) <= _MODALITIES[LanguageTag(tag)]


def language_of(f: Formula) -> LanguageTag:
    """The first tag, in declaration order, whose modalities cover ``f``."""
    used = modalities_used(f)
    for tag, allowed in _MODALITIES.items():
        if used <= allowed:
            return tag
    raise AssertionError("L_full covers every modality")


# -- printing -------------------------------------------------------------

_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Imp: "->", Or: "|", And: "&"}
_PREFIX = {D: "D", DCaut: "DC", DBold: "DB"}


def to_text(f: Formula) -> str:
    """Render ``f`` in the concrete grammar with minimal parentheses."""
    memo: dict[tuple[int, int], str] = {}

    def go(node, ctx):
        key = (id(node), ctx)
        got = memo.get(key)
        if got is None:
            got = render(node, ctx)
            memo[key] = got
        return got

    def unary(prefix, body):
        text = go(body, 5)
        if prefix.endswith("}") and text[:1].isalpha():
            return f"{prefix} {text}"
        return prefix + text

    def render(node, ctx):
        if isinstance(node, Atom):
            return node.name
        if isinstance(node, Top):
            return "top"
        if isinstance(node, Bot):
            return "bot"
        if isinstance(node, Inc):
            return "Inc{" + ",".join(node.group) + "}"
        if isinstance(node, Not):
            return unary("~", node.body)
        if isinstance(node, B):
            return unary("B{" + node.agent + "}", node.body)
        if isinstance(node, _GroupModal):
            return unary(_PREFIX[type(node)] + "{" + ",".join(node.group) + "}", node.body)
        prec = _PREC[type(node)]
        if isinstance(node, Imp):
            # right-associative
            text = f"{go(node.left, prec + 1)} -> {go(node.right, prec)}"
        else:
            text = f"{go(node.left, prec)} {_SYMBOL[type(node)]} {go(node.right, prec + 1)}"
        return f"({text})" if prec < ctx else text

    return go(f, 0)


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|[~&|(){},])|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)
_MODAL_WORDS = {"B", "dB", "D", "dD", "DC", "dDC", "DB", "dDB"}
_BUILD = {"D": D, "DC": DCaut, "DB": DBold}
_IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
_RESERVED = {"top", "bot"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group("bad"):
            raise FormulaSyntaxError(f"unexpected character {m.group('bad')!r}", m.start("bad"), text)
        kind = "op" if m.group("op") else "word"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return FormulaSyntaxError(message, tok[2], self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] == "end":
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected {value!r}, found {found}")
        return self.advance()

    def at(self, value):
        tok = self.peek()
        return tok[0] == "op" and tok[1] == value

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def iff(self):
        f = self.imp()
        while self.at("<->"):
            self.advance()
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self.at("->"):
            self.advance()
            return Imp(f, self.imp())
        return f

    def disj(self):
        f = self.conj()
        while self.at("|"):
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.at("&"):
            self.advance()
            f = And(f, self.unary())
        return f

    def agent(self):
        tok = self.peek()
        if tok[0] != "word" or not _IDENT.match(tok[1]) or tok[1] in _RESERVED:
            raise self.error("expected an agent name")
        return self.advance()[1]

    def agent_list(self):
        self.expect("{")
        agents = [self.agent()]
        while self.at(","):
            self.advance()
            agents.append(self.agent())
        self.expect("}")
        return agents

    def unary(self):
        tok = self.peek()
        if self.at("~"):
            self.advance()
            return Not(self.unary())
        if tok[0] == "word" and tok[1] in _MODAL_WORDS and self.peek(1)[1] == "{":
            self.advance()
            word = tok[1]
            dual = word.startswith("d")
            base = word[1:] if dual else word
            agents = self.agent_list()
            if base == "B" and len(agents) != 1:
                raise self.error("B takes exactly one agent", tok)
            body = self.unary()
            if dual:
                body = Not(body)
            f = B(agents[0], body) if base == "B" else _BUILD[base](tuple(agents), body)
            return Not(f) if dual else f
        return self.atomexpr()

    def atomexpr(self):
        tok = self.peek()
        if self.at("("):
            self.advance()
            f = self.iff()
            self.expect(")")
            return f
        if tok[0] == "word":
            word = tok[1]
            if word == "top":
                self.advance()
                return TOP
            if word == "bot":
                self.advance()
                return BOT
            if word == "Inc" and self.peek(1)[1] == "{":
                self.advance()
                return Inc(tuple(self.agent_list()))
            if _IDENT.match(word):
                self.advance()
                return Atom(word)
            raise self.error(f"{word!r} is not an atom name")
        if tok[0] == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok[1]!r}")


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula, expanding duals."""
    return _Parser(text).parse()


def as_formula(f: Formula | str) -> Formula:
    return parse(f) if isinstance(f, str) else f

"""Concepts, axioms and ontologies of ALC with definite descriptions.

The concrete syntax is fully parenthesised prefix notation::

    concept := ATOM | top | bot
             | (not C) | (and C C) | (or C C)
             | (some ROLE C) | (all ROLE C)
             | (the C)          local description  {iota C}
             | (that C D)       global description iota C.D

Concept names start with an uppercase letter, role and individual names with
a lowercase letter. A lowercase name in concept position is still read as an
atom, since the prefix form leaves no ambiguity there. Names starting with
``__`` are reserved for atoms invented by the translations and the tableau.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union


class Concept:
    """Base class of all concept nodes.

    Nodes are immutable and compare structurally; the hash is computed once at
    construction because concepts are used as set members everywhere.
    """

    __slots__ = ()

    def __str__(self) -> str:
        return print_concept(self)


def _node(cls):
    """Finish a concept node class: frozen slotted dataclass with a cached hash."""
    names = [f for f in cls.__annotations__ if f != "_h"]
    tag = cls.__name__

    def __post_init__(self):
        object.__setattr__(self, "_h", hash((tag, *(getattr(self, n) for n in names))))

    def __hash__(self):
        return self._h

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self) or other._h != self._h:
            return False
        return all(getattr(self, n) == getattr(other, n) for n in names)

    cls.__post_init__ = __post_init__
    cls.__hash__ = __hash__
    cls.__eq__ = __eq__
    return dataclass(frozen=True, slots=True, eq=False)(cls)


@_node
class Atom(Concept):
    name: str
    _h: int = field(init=False, repr=False, compare=False)


@_node
class Top(Concept):
    _h: int = field(init=False, repr=False, compare=False)


@_node
class Bot(Concept):
    _h: int = field(init=False, repr=False, compare=False)


@_node
class Not(Concept):
    c: Concept
    _h: int = field(init=False, repr=False, compare=False)


@_node
class And(Concept):
    l: Concept
    r: Concept
    _h: int = field(init=False, repr=False, compare=False)


@_node
class Or(Concept):
    l: Concept
    r: Concept
    _h: int = field(init=False, repr=False, compare=False)


@_node
class Exists(Concept):
    role: str
    c: Concept
    _h: int = field(init=False, repr=False, compare=False)


@_node
class Forall(Concept):
    role: str
    c: Concept
    _h: int = field(init=False, repr=False, compare=False)


@_node
class LocalDD(Concept):
    """``{iota c}``: the singleton of the unique c-element, else empty."""

    c: Concept
    _h: int = field(init=False, repr=False, compare=False)


@_node
class GlobalDD(Concept):
    """``iota c.d``: everything if the unique c-element is a d-element, else nothing."""

    c: Concept
    d: Concept
    _h: int = field(init=False, repr=False, compare=False)


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class ConceptInclusion:
    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class ConceptAssertion:
    individual: str
    concept: Concept


@dataclass(frozen=True)
class RoleAssertion:
    role: str
    a1: str
    a2: str


Assertion = Union[ConceptAssertion, RoleAssertion]
Axiom = Union[ConceptInclusion, ConceptAssertion, RoleAssertion]


@dataclass(frozen=True)
class Ontology:
    tbox: tuple[ConceptInclusion, ...] = ()
    abox: tuple[Assertion, ...] = ()

    @classmethod
    def of(cls, axioms: Iterable[Axiom]) -> "Ontology":
        """Build an ontology, dropping duplicate axioms but keeping first-seen order."""
        tbox: dict[ConceptInclusion, None] = {}
        abox: dict[Assertion, None] = {}
        for ax in axioms:
            if isinstance(ax, ConceptInclusion):
                tbox[ax] = None
            else:
                abox[ax] = None
        return cls(tuple(tbox), tuple(abox))

    @property
    def individuals(self) -> list[str]:
        seen: dict[str, None] = {}
        for ax in self.abox:
            if isinstance(ax, ConceptAssertion):
                seen[ax.individual] = None
            else:
                seen[ax.a1] = None
                seen[ax.a2] = None
        return list(seen)

    def concepts(self) -> Iterator[Concept]:
        for ci in self.tbox:
            yield ci.lhs
            yield ci.rhs
        for ax in self.abox:
            if isinstance(ax, ConceptAssertion):
                yield ax.concept

    def size(self) -> int:
        """Symbol count of the ontology: concept symbols plus one per name token."""
        total = 0
        for ci in self.tbox:
            total += size(ci.lhs) + size(ci.rhs)
        for ax in self.abox:
            if isinstance(ax, ConceptAssertion):
                total += 1 + size(ax.concept)
            else:
                total += 3
        return total


# ---------------------------------------------------------------------------
# Structural utilities
# ---------------------------------------------------------------------------


def children(c: Concept) -> tuple[Concept, ...]:
    if isinstance(c, (Atom, Top, Bot)):
        return ()
    if isinstance(c, (Not, Exists, Forall, LocalDD)):
        return (c.c,)
    if isinstance(c, (And, Or)):
        return (c.l, c.r)
    if isinstance(c, GlobalDD):
        return (c.c, c.d)
    raise TypeError(f"not a concept: {c!r}")


def walk(c: Concept) -> Iterator[Concept]:
    """Pre-order traversal over every node occurrence (with repetition)."""
    stack = [c]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def size(c: Concept) -> int:
    """Number of symbols, parentheses excluded.

    Every operator, atom and role name counts one; ``{iota .}`` and ``iota . .``
    count one each.
    """
    n = 0
    for node in walk(c):
        n += 2 if isinstance(node, (Exists, Forall)) else 1
    return n


def subconcepts(c: Concept) -> set[Concept]:
    return set(walk(c))


def depth(c: Concept) -> int:
    """Modal depth: nesting of role restrictions."""
    if isinstance(c, (Exists, Forall)):
        return 1 + depth(c.c)
    return max((depth(k) for k in children(c)), default=0)


def atoms(c: Concept) -> set[str]:
    return {n.name for n in walk(c) if isinstance(n, Atom)}


def roles(c: Concept) -> set[str]:
    return {n.role for n in walk(c) if isinstance(n, (Exists, Forall))}


def has_local(c: Concept) -> bool:
    return any(isinstance(n, LocalDD) for n in walk(c))


def has_global(c: Concept) -> bool:
    return any(isinstance(n, GlobalDD) for n in walk(c))


def is_alc(c: Concept) -> bool:
    return not any(isinstance(n, (LocalDD, GlobalDD)) for n in walk(c))


def neg(c: Concept) -> Concept:
    """Negation that cancels an outer negation instead of stacking a second one."""
    return c.c if isinstance(c, Not) else Not(c)


def conj(items: Iterable[Concept]) -> Concept:
    """Right-nested conjunction; the empty conjunction is ``top``."""
    items = list(items)
    if not items:
        return TOP
    out = items[-1]
    for item in reversed(items[:-1]):
        out = And(item, out)
    return out


def disj(items: Iterable[Concept]) -> Concept:
    items = list(items)
    if not items:
        return BOT
    out = items[-1]
    for item in reversed(items[:-1]):
        out = Or(item, out)
    return out


def desugar(c: Concept) -> Concept:
    """Rewrite ``or`` and ``all`` into negation, conjunction and ``some``.

    ``top`` and ``bot`` are kept as constants. The result denotes the same set
    in every interpretation.
    """
    memo: dict[Concept, Concept] = {}

    def go(n: Concept) -> Concept:
        hit = memo.get(n)
        if hit is not None:
            return hit
        if isinstance(n, (Atom, Top, Bot)):
            out = n
        elif isinstance(n, Not):
            out = Not(go(n.c))
        elif isinstance(n, And):
            out = And(go(n.l), go(n.r))
        elif isinstance(n, Or):
            out = Not(And(neg(go(n.l)), neg(go(n.r))))
        elif isinstance(n, Exists):
            out = Exists(n.role, go(n.c))
        elif isinstance(n, Forall):
            out = Not(Exists(n.role, neg(go(n.c))))
        elif isinstance(n, LocalDD):
            out = LocalDD(go(n.c))
        elif isinstance(n, GlobalDD):
            out = GlobalDD(go(n.c), go(n.d))
        else:
            raise TypeError(f"not a concept: {n!r}")
        memo[n] = out
        return out

    return go(c)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def print_concept(c: Concept) -> str:
    parts: list[str] = []

    def go(n: Concept) -> None:
        if isinstance(n, Atom):
            parts.append(n.name)
        elif isinstance(n, Top):
            parts.append("top")
        elif isinstance(n, Bot):
            parts.append("bot")
        elif isinstance(n, Not):
            parts.append("(not ")
            go(n.c)
            parts.append(")")
        elif isinstance(n, (And, Or)):
            parts.append("(and " if isinstance(n, And) else "(or ")
            go(n.l)
            parts.append(" ")
            go(n.r)
            parts.append(")")
        elif isinstance(n, (Exists, Forall)):
            parts.append(f"({'some' if isinstance(n, Exists) else 'all'} {n.role} ")
            go(n.c)
            parts.append(")")
        elif isinstance(n, LocalDD):
            parts.append("(the ")
            go(n.c)
            parts.append(")")
        elif isinstance(n, GlobalDD):
            parts.append("(that ")
            go(n.c)
            parts.append(" ")
            go(n.d)
            parts.append(")")
        else:
            raise TypeError(f"not a concept: {n!r}")

    go(c)
    return "".join(parts)


def print_axiom(ax: Axiom) -> str:
    if isinstance(ax, ConceptInclusion):
        return f"sub ({print_concept(ax.lhs)}) ({print_concept(ax.rhs)})"
    if isinstance(ax, ConceptAssertion):
        return f"inst {ax.individual} ({print_concept(ax.concept)})"
    return f"rel {ax.role} {ax.a1} {ax.a2}"


def print_ontology(o: Ontology) -> str:
    lines = [print_axiom(ax) for ax in (*o.tbox, *o.abox)]
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

ATOM_RE = re.compile(r"[A-Z][A-Za-z0-9_]*|__[A-Za-z0-9_]+")
NAME_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
KEYWORDS = {"top", "bot", "not", "and", "or", "some", "all", "the", "that"}
_TOKEN_RE = re.compile(r"\s*(?:(\()|(\))|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


@dataclass
class _Token:
    text: str
    line: int
    column: int


def _tokenize(text: str, line: int = 1) -> list[_Token]:
    tokens = []
    for lineno, raw in enumerate(text.split("\n"), start=line):
        pos = 0
        while pos < len(raw):
            m = _TOKEN_RE.match(raw, pos)
            if m is None:  # only trailing whitespace left
                break
            start = m.start(m.lastindex)
            if m.group(4) is not None:
                raise ParseError(f"unexpected character {m.group(4)!r}", lineno, start + 1)
            tokens.append(_Token(m.group(m.lastindex), lineno, start + 1))
            pos = m.end()
    return tokens


_CONCEPT_START = ["(", "ATOM", "top", "bot"]
_OPERATORS = ["not", "and", "or", "some", "all", "the", "that"]


class _Parser:
    def __init__(self, tokens: list[_Token], eof: tuple[int, int]):
        self.tokens = tokens
        self.pos = 0
        self.eof = eof

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def fail(self, expected: Iterable[str], what: str | None = None) -> ParseError:
        tok = self.peek()
        if tok is None:
            return ParseError("unexpected end of input", *self.eof, expected)
        return ParseError(what or f"unexpected token {tok.text!r}", tok.line, tok.column, expected)

    def next(self, expected: Iterable[str]) -> _Token:
        tok = self.peek()
        if tok is None:
            raise self.fail(expected)
        self.pos += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.peek()
        if tok is None or tok.text != text:
            raise self.fail([text])
        self.pos += 1

    def name(self, kind: str) -> str:
        tok = self.peek()
        if tok is None or tok.text in KEYWORDS or not NAME_RE.fullmatch(tok.text):
            raise self.fail([kind])
        self.pos += 1
        return tok.text

    def concept(self) -> Concept:
        tok = self.next(_CONCEPT_START)
        if tok.text == "top":
            return TOP
        if tok.text == "bot":
            return BOT
        if tok.text != "(":
            if ATOM_RE.fullmatch(tok.text) or (
                tok.text not in KEYWORDS and NAME_RE.fullmatch(tok.text)
            ):
                return Atom(tok.text)
            self.pos -= 1
            raise self.fail(_CONCEPT_START)
        op = self.peek()
        if op is None or op.text not in _OPERATORS:
            raise self.fail(_OPERATORS)
        self.pos += 1
        if op.text in ("not", "the"):
            c = self.concept()
            out: Concept = Not(c) if op.text == "not" else LocalDD(c)
        elif op.text in ("some", "all"):
            role = self.name("ROLE")
            c = self.concept()
            out = Exists(role, c) if op.text == "some" else Forall(role, c)
        else:
            left = self.concept()
            right = self.concept()
            out = {"and": And, "or": Or, "that": GlobalDD}[op.text](left, right)
        self.expect(")")
        return out

    def wrapped_concept(self) -> Concept:
        self.expect("(")
        c = self.concept()
        self.expect(")")
        return c

    def done(self) -> None:
        if self.peek() is not None:
            raise self.fail(["end of input"])


def _eof(text: str, line: int = 1) -> tuple[int, int]:
    lines = text.split("\n")
    return line + len(lines) - 1, len(lines[-1]) + 1


def parse_concept(text: str) -> Concept:
    p = _Parser(_tokenize(text), _eof(text))
    c = p.concept()
    p.done()
    return c


def parse_axiom(line: str, lineno: int = 1) -> Axiom:
    p = _Parser(_tokenize(line, lineno), _eof(line, lineno))
    head = p.next(["sub", "inst", "rel"])
    if head.text == "sub":
        ax: Axiom = ConceptInclusion(p.wrapped_concept(), p.wrapped_concept())
    elif head.text == "inst":
        ind = p.name("IND")
        ax = ConceptAssertion(ind, p.wrapped_concept())
    elif head.text == "rel":
        ax = RoleAssertion(p.name("ROLE"), p.name("IND"), p.name("IND"))
    else:
        p.pos -= 1
        raise p.fail(["sub", "inst", "rel"])
    p.done()
    return ax


def parse_ontology(text: str) -> Ontology:
    axioms = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            axioms.append(parse_axiom(line, lineno))
    return Ontology.of(axioms)

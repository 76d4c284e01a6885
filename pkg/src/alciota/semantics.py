"""Finite interpretations and concept evaluation.

Interpretation files are line oriented::

    domain a b c
    concept A c
    role r (a,b) (b,c)
    ind x a

``#`` starts a comment. Names missing from the maps denote the empty set
(concepts, roles); individuals must be mapped before assertions use them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .syntax import (
    And,
    Atom,
    Axiom,
    Bot,
    Concept,
    ConceptAssertion,
    ConceptInclusion,
    Exists,
    Forall,
    GlobalDD,
    LocalDD,
    Not,
    Ontology,
    Or,
    RoleAssertion,
    Top,
)


class InterpretationError(ValueError):
    pass


class UnknownIndividual(KeyError):
    pass


@dataclass(frozen=True)
class Interpretation:
    domain: tuple[str, ...]
    concepts: Mapping[str, frozenset[str]] = field(default_factory=dict)
    roles: Mapping[str, frozenset[tuple[str, str]]] = field(default_factory=dict)
    individuals: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise InterpretationError("domain must be non-empty")
        if len(set(self.domain)) != len(self.domain):
            raise InterpretationError("duplicate domain element")
        dom = set(self.domain)
        for name, ext in self.concepts.items():
            if not ext <= dom:
                raise InterpretationError(f"concept {name} maps outside the domain")
        for name, pairs in self.roles.items():
            for d, e in pairs:
                if d not in dom or e not in dom:
                    raise InterpretationError(f"role {name} maps outside the domain")
        for name, d in self.individuals.items():
            if d not in dom:
                raise InterpretationError(f"individual {name} maps outside the domain")

    @classmethod
    def build(
        cls,
        domain: Iterable[str],
        concepts: Mapping[str, Iterable[str]] | None = None,
        roles: Mapping[str, Iterable[tuple[str, str]]] | None = None,
        individuals: Mapping[str, str] | None = None,
    ) -> "Interpretation":
        return cls(
            tuple(domain),
            {k: frozenset(v) for k, v in (concepts or {}).items()},
            {k: frozenset(tuple(p) for p in v) for k, v in (roles or {}).items()},
            dict(individuals or {}),
        )

    @property
    def full(self) -> frozenset[str]:
        return frozenset(self.domain)

    def order(self, d: str) -> int:
        """Position of an element in the domain's fixed total order."""
        return self.domain.index(d)

    def concept(self, name: str) -> frozenset[str]:
        return self.concepts.get(name, frozenset())

    def role(self, name: str) -> frozenset[tuple[str, str]]:
        return self.roles.get(name, frozenset())

    def successors(self, role: str, d: str) -> set[str]:
        return {e for (x, e) in self.role(role) if x == d}


def evaluator(I: Interpretation):
    """Return a memoising ``eval`` for one interpretation.

    Useful when many concepts are evaluated against the same structure.
    """
    full = I.full
    memo: dict[Concept, frozenset[str]] = {}
    preds: dict[str, dict[str, set[str]]] = {}

    def predecessors(role: str) -> dict[str, set[str]]:
        table = preds.get(role)
        if table is None:
            table = {}
            for d, e in I.role(role):
                table.setdefault(e, set()).add(d)
            preds[role] = table
        return table

    def ev(c: Concept) -> frozenset[str]:
        hit = memo.get(c)
        if hit is not None:
            return hit
        if isinstance(c, Atom):
            out = I.concept(c.name)
        elif isinstance(c, Top):
            out = full
        elif isinstance(c, Bot):
            out = frozenset()
        elif isinstance(c, Not):
            out = full - ev(c.c)
        elif isinstance(c, And):
            out = ev(c.l) & ev(c.r)
        elif isinstance(c, Or):
            out = ev(c.l) | ev(c.r)
        elif isinstance(c, Exists):
            table = predecessors(c.role)
            acc: set[str] = set()
            for e in ev(c.c):
                acc |= table.get(e, set())
            out = frozenset(acc)
        elif isinstance(c, Forall):
            table = predecessors(c.role)
            bad: set[str] = set()
            for e in full - ev(c.c):
                bad |= table.get(e, set())
            out = full - bad
        elif isinstance(c, LocalDD):
            body = ev(c.c)
            out = body if len(body) == 1 else frozenset()
        elif isinstance(c, GlobalDD):
            body = ev(c.c)
            out = full if len(body) == 1 and body <= ev(c.d) else frozenset()
        else:
            raise TypeError(f"not a concept: {c!r}")
        memo[c] = out
        return out

    return ev


def eval_concept(c: Concept, I: Interpretation) -> frozenset[str]:
    """Extension of ``c`` in ``I``."""
    return evaluator(I)(c)


def _individual(I: Interpretation, name: str) -> str:
    try:
        return I.individuals[name]
    except KeyError:
        raise UnknownIndividual(name) from None


def models_axiom(I: Interpretation, ax: Axiom, ev=None) -> bool:
    ev = ev or evaluator(I)
    if isinstance(ax, ConceptInclusion):
        return ev(ax.lhs) <= ev(ax.rhs)
    if isinstance(ax, ConceptAssertion):
        return _individual(I, ax.individual) in ev(ax.concept)
    if isinstance(ax, RoleAssertion):
        pair = (_individual(I, ax.a1), _individual(I, ax.a2))
        return pair in I.role(ax.role)
    raise TypeError(f"not an axiom: {ax!r}")


def models_ontology(I: Interpretation, o: Ontology) -> bool:
    ev = evaluator(I)
    return all(models_axiom(I, ax, ev) for ax in (*o.tbox, *o.abox))


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

_PAIR_RE = re.compile(r"\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)")


def parse_interpretation(text: str) -> Interpretation:
    domain: list[str] | None = None
    concepts: dict[str, set[str]] = {}
    roles: dict[str, set[tuple[str, str]]] = {}
    individuals: dict[str, str] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "domain":
            if domain is not None:
                raise InterpretationError(f"line {lineno}: second domain line")
            domain = rest.split()
        elif head == "concept":
            name, *elems = rest.split()
            concepts.setdefault(name, set()).update(elems)
        elif head == "role":
            name, _, pairs = rest.partition(" ")
            found = _PAIR_RE.findall(pairs)
            if _PAIR_RE.sub("", pairs).strip():
                raise InterpretationError(f"line {lineno}: malformed role pairs")
            roles.setdefault(name, set()).update(found)
        elif head == "ind":
            parts = rest.split()
            if len(parts) != 2:
                raise InterpretationError(f"line {lineno}: expected 'ind NAME ELEMENT'")
            individuals[parts[0]] = parts[1]
        else:
            raise InterpretationError(f"line {lineno}: unknown directive {head!r}")
    if domain is None:
        raise InterpretationError("missing domain line")
    return Interpretation.build(domain, concepts, roles, individuals)


def print_interpretation(I: Interpretation) -> str:
    rank = {d: i for i, d in enumerate(I.domain)}
    lines = ["domain " + " ".join(I.domain)]
    for name in sorted(I.concepts):
        elems = sorted(I.concepts[name], key=rank.__getitem__)
        lines.append(" ".join(["concept", name, *elems]))
    for name in sorted(I.roles):
        pairs = sorted(I.roles[name], key=lambda p: (rank[p[0]], rank[p[1]]))
        lines.append(" ".join(["role", name, *(f"({d},{e})" for d, e in pairs)]))
    for name in sorted(I.individuals):
        lines.append(f"ind {name} {I.individuals[name]}")
    return "\n".join(lines) + "\n"

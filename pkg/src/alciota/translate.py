"""Concept translations.

* ``local_to_global_exp`` / ``local_to_global_poly``: remove local descriptions
  in favour of global ones.
* ``internalize_tbox``: fold a TBox into a single concept using a description.
* ``standard_translation``: two-variable first-order formula, ASCII syntax::

      A(x)   r(x,y)   x = y   true   false
      ~F   (F & G)   (F | G)   (F -> G)   exists y F   forall y F

* ``counter_concept``: a satisfiable concept whose models contain an r-path
  through all 2^n values of an n-bit counter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .syntax import (
    TOP,
    And,
    Atom,
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
    atoms,
    conj,
    has_global,
    has_local,
    is_alc,
)


class TranslationError(ValueError):
    pass


@dataclass(frozen=True)
class TranslationOutput:
    concept: Concept
    extra_axioms: tuple[ConceptInclusion, ...] = ()
    fresh_names: tuple[str, ...] = ()


def _rebuild(c: Concept, f) -> Concept:
    """Apply ``f`` to the children of ``c`` and rebuild the node."""
    if isinstance(c, (Atom, Top, Bot)):
        return c
    if isinstance(c, Not):
        return Not(f(c.c))
    if isinstance(c, And):
        return And(f(c.l), f(c.r))
    if isinstance(c, Or):
        return Or(f(c.l), f(c.r))
    if isinstance(c, Exists):
        return Exists(c.role, f(c.c))
    if isinstance(c, Forall):
        return Forall(c.role, f(c.c))
    if isinstance(c, LocalDD):
        return LocalDD(f(c.c))
    if isinstance(c, GlobalDD):
        return GlobalDD(f(c.c), f(c.d))
    raise TypeError(f"not a concept: {c!r}")


class _Names:
    def __init__(self, reserved: Iterable[str]):
        self.reserved = set(reserved)
        self.n = 0

    def __call__(self, stem: str = "t") -> str:
        while True:
            name = f"__{stem}{self.n}"
            self.n += 1
            if name not in self.reserved:
                self.reserved.add(name)
                return name


def _signature(concepts: Iterable[Concept]) -> set[str]:
    out: set[str] = set()
    for c in concepts:
        out |= atoms(c)
    return out


def local_to_global_exp(c: Concept) -> TranslationOutput:
    """Replace every {iota C} by ``C and (that C top)``, innermost first."""
    if has_global(c):
        raise TranslationError("input already contains global descriptions")

    def go(k: Concept) -> Concept:
        if isinstance(k, LocalDD):
            body = go(k.c)
            return And(body, GlobalDD(body, TOP))
        return _rebuild(k, go)

    return TranslationOutput(go(c))


class _Poly:
    """Shared state for the polynomial translation: one fresh atom per body."""

    def __init__(self, reserved: Iterable[str]):
        self.names = _Names(reserved)
        self.table: dict[Concept, Atom] = {}
        self.axioms: list[ConceptInclusion] = []

    def __call__(self, k: Concept) -> Concept:
        if isinstance(k, GlobalDD):
            raise TranslationError("input already contains global descriptions")
        if isinstance(k, LocalDD):
            body = self(k.c)
            a = self.table.get(body)
            if a is None:
                a = self.table[body] = Atom(self.names())
                self.axioms += [ConceptInclusion(a, body), ConceptInclusion(body, a)]
            return And(a, GlobalDD(a, TOP))
        return _rebuild(k, self)


def poly_translate(c: Concept, o: Ontology | None = None) -> tuple[Concept, Ontology, tuple[str, ...]]:
    """Polynomial translation of a concept together with its ontology.

    Returns the translated concept, the translated ontology (including the
    defining axioms of the fresh atoms) and the fresh names.
    """
    o = o or Ontology()
    tr = _Poly(_signature([c, *o.concepts()]))
    concept = tr(c)
    axioms = [_map_axiom(ax, tr) for ax in (*o.tbox, *o.abox)]
    names = tuple(a.name for a in tr.table.values())
    return concept, Ontology.of([*axioms, *tr.axioms]), names


def local_to_global_poly(o: Ontology) -> Ontology:
    """Conservative extension of ``o`` without local descriptions."""
    _, out, _ = poly_translate(TOP, o)
    return out


def _map_axiom(ax, f):
    if isinstance(ax, ConceptInclusion):
        return ConceptInclusion(f(ax.lhs), f(ax.rhs))
    if isinstance(ax, ConceptAssertion):
        return ConceptAssertion(ax.individual, f(ax.concept))
    if isinstance(ax, RoleAssertion):
        return ax
    raise TypeError(f"not an axiom: {ax!r}")


def internalize_tbox(c: Concept, tbox: Iterable[ConceptInclusion], target: str = "alcil") -> Concept:
    """A concept satisfiable iff ``c`` is satisfiable with respect to ``tbox``.

    For each D sub E a fresh atom A marks the single element allowed to violate
    the axiom, and the root is forced to be that element while satisfying it.
    """
    tbox = list(tbox)
    if target not in ("alcil", "alcig"):
        raise ValueError(f"unknown target {target!r}")
    if not is_alc(c) or not all(is_alc(ax.lhs) and is_alc(ax.rhs) for ax in tbox):
        raise TranslationError("internalization expects plain ALC input")
    if not tbox:
        return c
    names = _Names(_signature([c, *(k for ax in tbox for k in (ax.lhs, ax.rhs))]))
    parts = [c]
    for ax in tbox:
        holds = Or(Not(ax.lhs), ax.rhs)
        a = Atom(names())
        body = Or(Not(holds), a)
        if target == "alcil":
            parts.append(And(holds, LocalDD(body)))
        else:
            parts.append(And(holds, And(a, GlobalDD(body, TOP))))
    return conj(parts)


def standard_translation(c: Concept, var: str = "x") -> str:
    """First-order reading of ``c`` with free variable ``var`` (x or y)."""
    if var not in ("x", "y"):
        raise ValueError("variable must be x or y")
    out = _st(c, var)
    if out.startswith("(") and _matching(out) == len(out) - 1:
        out = out[1:-1]
    return out


def _matching(s: str) -> int:
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0:
            return i
    return -1


def _st(c: Concept, x: str) -> str:
    y = "y" if x == "x" else "x"
    if isinstance(c, Atom):
        return f"{c.name}({x})"
    if isinstance(c, Top):
        return "true"
    if isinstance(c, Bot):
        return "false"
    if isinstance(c, Not):
        return f"~{_st(c.c, x)}"
    if isinstance(c, And):
        return f"({_st(c.l, x)} & {_st(c.r, x)})"
    if isinstance(c, Or):
        return f"({_st(c.l, x)} | {_st(c.r, x)})"
    if isinstance(c, Exists):
        return f"exists {y} ({c.role}({x},{y}) & {_st(c.c, y)})"
    if isinstance(c, Forall):
        return f"forall {y} ({c.role}({x},{y}) -> {_st(c.c, y)})"
    if isinstance(c, LocalDD):
        return f"({_st(c.c, x)} & forall {y} ({_st(c.c, y)} -> {x} = {y}))"
    if isinstance(c, GlobalDD):
        unique = f"forall {x} ({_st(c.c, x)} -> {x} = {y})"
        return f"exists {y} ({_st(c.c, y)} & ({unique} & {_st(c.d, y)}))"
    raise TypeError(f"not a concept: {c!r}")


def counter_atoms(n: int) -> list[Atom]:
    return [Atom(f"A{i}") for i in range(1, n + 1)]


def counter_concept(n: int, role: str = "r") -> Concept:
    """Binary counter over A1..An (A1 is the lowest bit).

    Every element except the unique all-ones element has an r-successor, and
    each successor holds the incremented value; the all-zero value exists
    exactly once. Models therefore contain an r-path through 2^n elements.
    """
    if n < 1:
        raise ValueError("n must be positive")
    bits = counter_atoms(n)
    steps = []
    for i, a in enumerate(bits):
        lowest_zero = conj([Not(a), *bits[:i]])
        flip = Forall(role, conj([a, *(Not(b) for b in bits[:i])]))
        keep = [
            And(Or(Not(b), Forall(role, b)), Or(b, Forall(role, Not(b))))
            for b in bits[i + 1 :]
        ]
        steps.append(Or(Not(lowest_zero), conj([flip, *keep])))
    d = conj([*steps, Exists(role, TOP)])
    return And(GlobalDD(Not(d), conj(bits)), GlobalDD(conj([Not(b) for b in bits]), TOP))


def longest_simple_path(model, role: str = "r", limit: int | None = None) -> int:
    """Number of elements on a longest simple ``role``-path (depth-first search).

    Stops early once ``limit`` elements are reached.
    """
    succ: dict[str, list[str]] = {}
    for d, e in model.role(role):
        succ.setdefault(d, []).append(e)
    best = 0

    def dfs(d: str, seen: set[str]) -> bool:
        nonlocal best
        best = max(best, len(seen))
        if limit is not None and best >= limit:
            return True
        for e in succ.get(d, ()):
            if e not in seen:
                seen.add(e)
                if dfs(e, seen):
                    return True
                seen.remove(e)
        return False

    for d in model.domain:
        if dfs(d, {d}):
            break
    return best

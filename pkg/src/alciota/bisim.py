"""Maximal bisimulations between finite interpretations.

``max_bisim_alc`` computes the coarsest stable partition of the disjoint union
of two interpretations and reads the cross pairs off it. The description-logic
variants then decide the name conditions through named individuals: an
element is named exactly when it is ALC-bisimilar to no other element of its
own interpretation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .semantics import Interpretation


@dataclass(frozen=True)
class BisimRelation:
    pairs: tuple[tuple[str, str], ...]
    dom: frozenset[str] = field(init=False)
    rng: frozenset[str] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dom", frozenset(d for d, _ in self.pairs))
        object.__setattr__(self, "rng", frozenset(e for _, e in self.pairs))

    def __contains__(self, pair) -> bool:
        return pair in self.as_set()

    def __len__(self) -> int:
        return len(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def as_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.pairs)


EMPTY = BisimRelation(())


def _relation(pairs, I: Interpretation, J: Interpretation) -> BisimRelation:
    ri = {d: i for i, d in enumerate(I.domain)}
    rj = {e: i for i, e in enumerate(J.domain)}
    return BisimRelation(tuple(sorted(set(pairs), key=lambda p: (ri[p[0]], rj[p[1]]))))


def coarsest_partition(I: Interpretation, J: Interpretation) -> dict[tuple[int, str], int]:
    """Block index of every element of the disjoint union ``I + J``.

    Elements are tagged ``(0, d)`` for ``I`` and ``(1, e)`` for ``J``. Starting
    from the split by atom sets, blocks are refined by the set of blocks
    reachable through each role until nothing changes.
    """
    sides = (I, J)
    nodes = [(k, d) for k, S in enumerate(sides) for d in S.domain]
    concept_names = sorted(set(I.concepts) | set(J.concepts))
    role_names = sorted(set(I.roles) | set(J.roles))
    succ: dict[tuple[int, str], list[list[tuple[int, str]]]] = {n: [[] for _ in role_names] for n in nodes}
    for k, S in enumerate(sides):
        for ri, r in enumerate(role_names):
            for d, e in S.role(r):
                succ[(k, d)][ri].append((k, e))

    def labels(n):
        k, d = n
        S = sides[k]
        return tuple(d in S.concept(a) for a in concept_names)

    block = _renumber({n: labels(n) for n in nodes})
    while True:
        sig = {
            n: (block[n], tuple(frozenset(block[m] for m in out) for out in succ[n]))
            for n in nodes
        }
        refined = _renumber(sig)
        if len(set(refined.values())) == len(set(block.values())):
            return refined
        block = refined


def _renumber(keys: dict) -> dict:
    ids: dict = {}
    return {n: ids.setdefault(key, len(ids)) for n, key in keys.items()}


def max_bisim_alc(I: Interpretation, J: Interpretation) -> BisimRelation:
    """The largest relation satisfying Atom, Forth and Back between I and J."""
    block = coarsest_partition(I, J)
    pairs = [(d, e) for d in I.domain for e in J.domain if block[(0, d)] == block[(1, e)]]
    return _relation(pairs, I, J)


def named_individuals(I: Interpretation) -> frozenset[str]:
    """Elements not ALC-bisimilar to any other element of ``I``."""
    Z = max_bisim_alc(I, I)
    shared = {d for d, e in Z.pairs if d != e}
    return frozenset(d for d in I.domain if d not in shared)


def _total(pairs: frozenset[tuple[str, str]], left, right) -> bool:
    return {d for d, _ in pairs} >= set(left) and {e for _, e in pairs} >= set(right)


def _names_check(Z: BisimRelation, I, J, NI, NJ) -> BisimRelation:
    if not NI and not NJ:
        return Z
    if not NI or not NJ:
        return EMPTY
    pairs = Z.as_set()
    restricted = frozenset((d, e) for d, e in pairs if d in NI and e in NJ)
    if _total(pairs, I.domain, J.domain) and _total(restricted, NI, NJ):
        return Z
    return EMPTY


def max_bisim_alcil(I: Interpretation, J: Interpretation) -> BisimRelation:
    """Maximal bisimulation for local descriptions (name condition on Dom/Rng of Z)."""
    Z = max_bisim_alc(I, J)
    NI = named_individuals(I) & Z.dom
    NJ = named_individuals(J) & Z.rng
    return _names_check(Z, I, J, NI, NJ)


def max_bisim_alci(I: Interpretation, J: Interpretation) -> BisimRelation:
    """Maximal bisimulation for global descriptions, hence for the full logic."""
    Z = max_bisim_alc(I, J)
    return _names_check(Z, I, J, named_individuals(I), named_individuals(J))


def audit(Z: BisimRelation, I: Interpretation, J: Interpretation) -> list[str]:
    """Violations of Atom/Forth/Back in ``Z``; empty when ``Z`` is a bisimulation."""
    problems = []
    pairs = Z.as_set()
    concept_names = set(I.concepts) | set(J.concepts)
    role_names = set(I.roles) | set(J.roles)
    for d, e in Z.pairs:
        for a in concept_names:
            if (d in I.concept(a)) != (e in J.concept(a)):
                problems.append(f"Atom {a} fails at ({d},{e})")
        for r in role_names:
            dsucc = I.successors(r, d)
            esucc = J.successors(r, e)
            for d2 in dsucc:
                if not any((d2, e2) in pairs for e2 in esucc):
                    problems.append(f"Forth {r} fails at ({d},{e}) for {d2}")
            for e2 in esucc:
                if not any((d2, e2) in pairs for d2 in dsucc):
                    problems.append(f"Back {r} fails at ({d},{e}) for {e2}")
    return problems

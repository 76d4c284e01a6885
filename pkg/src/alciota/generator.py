"""Seeded random concept generator for benchmark datasets.

A concept is grown from a random binary skeleton with one leaf per atom
occurrence. Inner nodes become global descriptions (per quota), conjunctions
or disjunctions. Existential restrictions and local descriptions are unary
wrappers placed on uniformly chosen skeleton nodes, and every node, including
wrappers, is negated with a fixed probability.

Quotas are rounded half up: ``round_half_up(0.3 * 5) == 2``.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .syntax import (
    And,
    Atom,
    Concept,
    Exists,
    GlobalDD,
    LocalDD,
    Not,
    Or,
    print_concept,
    size,
    walk,
)

MANIFEST_COLUMNS = ("seed", "size", "atoms", "k", "gds", "lds", "exists")


class ParameterError(ValueError):
    pass


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class GenParams:
    atom_occurrences: tuple[int, int] = (10, 200)
    distinct_atom_fraction: float = 0.5
    exists_fraction: float = 0.3
    gd_fraction: float = 0.0
    ld_fraction: float = 0.0
    negation_probability: float = 0.5
    role: str = "r"
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.atom_occurrences
        if lo < 1 or hi < lo:
            raise ParameterError(f"bad atom occurrence range {lo}..{hi}")
        for name in ("distinct_atom_fraction", "exists_fraction", "gd_fraction", "ld_fraction", "negation_probability"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class GenReport:
    concept: Concept
    seed: int
    atoms: int
    distinct_atoms: int
    k: int
    gds: int
    lds: int
    exists: int
    negations: int

    @property
    def size(self) -> int:
        return size(self.concept)

    def manifest_row(self) -> dict:
        return {
            "seed": self.seed,
            "size": self.size,
            "atoms": self.atoms,
            "k": self.k,
            "gds": self.gds,
            "lds": self.lds,
            "exists": self.exists,
        }


def recount(c: Concept) -> dict[str, int]:
    """Constructor counts over an AST, independent of the generator's bookkeeping."""
    counts = {"atoms": 0, "k": 0, "gds": 0, "lds": 0, "exists": 0, "negations": 0}
    names = set()
    for node in walk(c):
        if isinstance(node, Atom):
            counts["atoms"] += 1
            names.add(node.name)
        elif isinstance(node, (And, Or)):
            counts["k"] += 1
        elif isinstance(node, GlobalDD):
            counts["k"] += 1
            counts["gds"] += 1
        elif isinstance(node, LocalDD):
            counts["lds"] += 1
        elif isinstance(node, Exists):
            counts["exists"] += 1
        elif isinstance(node, Not):
            counts["negations"] += 1
    counts["distinct_atoms"] = len(names)
    return counts


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def generate(p: GenParams) -> GenReport:
    rng = _rng(p.seed)
    lo, hi = p.atom_occurrences
    n = int(rng.integers(lo, hi + 1))
    k = n - 1
    n_gd = round_half_up(p.gd_fraction * k)
    n_ld = round_half_up(p.ld_fraction * k)
    nodes = 2 * n - 1
    n_ex = round_half_up(p.exists_fraction * nodes)
    if n_gd > k:
        raise ParameterError(f"{n_gd} global descriptions need more than {k} inner nodes")

    # Skeleton: children[i] = (left, right) for inner nodes, None for leaves.
    children: list[tuple[int, int] | None] = []

    # Iterative split to avoid deep recursion on large inputs.
    stack = [(None, 0, n)]
    while stack:
        parent, side, leaves = stack.pop()
        idx = len(children)
        children.append(None)
        if parent is not None:
            pair = list(children[parent])
            pair[side] = idx
            children[parent] = tuple(pair)
        if leaves > 1:
            split = int(rng.integers(1, leaves))
            children[idx] = (-1, -1)
            stack.append((idx, 1, leaves - split))
            stack.append((idx, 0, split))

    inner = [i for i, ch in enumerate(children) if ch is not None]
    gd_nodes = set(rng.choice(inner, size=n_gd, replace=False).tolist()) if n_gd else set()
    ops = {i: ("gd" if i in gd_nodes else ("and" if rng.random() < 0.5 else "or")) for i in inner}

    wrappers: dict[int, list[str]] = {}
    for kind, count in (("exists", n_ex), ("ld", n_ld)):
        for i in rng.integers(0, nodes, size=count).tolist():
            wrappers.setdefault(i, []).append(kind)
    for lst in wrappers.values():
        rng.shuffle(lst)

    distinct = max(1, math.ceil(p.distinct_atom_fraction * n))
    negations = 0

    def maybe_negate(c: Concept) -> Concept:
        nonlocal negations
        if rng.random() < p.negation_probability:
            negations += 1
            return Not(c)
        return c

    built: dict[int, Concept] = {}
    for i in reversed(range(len(children))):
        ch = children[i]
        if ch is None:
            c: Concept = Atom(f"A{int(rng.integers(0, distinct))}")
        else:
            left, right = built.pop(ch[0]), built.pop(ch[1])
            op = ops[i]
            c = GlobalDD(left, right) if op == "gd" else (And(left, right) if op == "and" else Or(left, right))
        c = maybe_negate(c)
        for kind in wrappers.get(i, ()):
            c = Exists(p.role, c) if kind == "exists" else LocalDD(c)
            c = maybe_negate(c)
        built[i] = c
    concept = built[0]
    used = {node.name for node in walk(concept) if isinstance(node, Atom)}
    return GenReport(concept, p.seed, n, len(used), k, n_gd, n_ld, n_ex, negations)


def generate_dataset(template: GenParams, n: int, base_seed: int, out_dir: str | os.PathLike | None = None) -> list[GenReport]:
    """``n`` concepts with seeds ``base_seed + i``.

    With ``out_dir`` each concept is written to ``<seed>.concept`` next to a
    ``manifest.csv`` listing the per-concept counts.
    """
    reports = [generate(replace(template, seed=base_seed + i)) for i in range(n)]
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in reports:
            (out / f"{r.seed}.concept").write_text(print_concept(r.concept) + "\n")
        with open(out / "manifest.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=MANIFEST_COLUMNS, lineterminator="\n")
            w.writeheader()
            for r in reports:
                w.writerow(r.manifest_row())
    return reports

"""Independent oracles used by the tests.

None of these share code with the prover or the bisimulation algorithms; they
only rely on the AST classes and on ``Interpretation`` as a data container.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from pysat.formula import IDPool
from pysat.solvers import Minisat22

from alciota.semantics import Interpretation
from alciota.syntax import (
    And,
    Atom,
    Bot,
    Concept,
    Exists,
    Forall,
    GlobalDD,
    LocalDD,
    Not,
    Or,
    Top,
    atoms,
    roles,
    walk,
)

# ---------------------------------------------------------------------------
# Finite model search by SAT
# ---------------------------------------------------------------------------


class _Encoder:
    def __init__(self, n: int):
        self.n = n
        self.pool = IDPool()
        self.clauses: list[list[int]] = []

    def var(self, *key) -> int:
        return self.pool.id(key)

    def fresh(self) -> int:
        return self.pool.id(("aux", self.pool.top + 1))

    def iff_and(self, out: int, lits: list[int]) -> None:
        for l in lits:
            self.clauses.append([-out, l])
        self.clauses.append([out, *(-l for l in lits)])

    def iff_or(self, out: int, lits: list[int]) -> None:
        for l in lits:
            self.clauses.append([out, -l])
        self.clauses.append([-out, *lits])

    def concept(self, c: Concept) -> None:
        n = self.n
        for sub in set(walk(c)):
            for d in range(n):
                v = self.var("c", sub, d)
                if isinstance(sub, Atom):
                    self.clauses.append([-v, self.var("a", sub.name, d)])
                    self.clauses.append([v, -self.var("a", sub.name, d)])
                elif isinstance(sub, Top):
                    self.clauses.append([v])
                elif isinstance(sub, Bot):
                    self.clauses.append([-v])
                elif isinstance(sub, Not):
                    w = self.var("c", sub.c, d)
                    self.clauses += [[v, w], [-v, -w]]
                elif isinstance(sub, And):
                    self.iff_and(v, [self.var("c", sub.l, d), self.var("c", sub.r, d)])
                elif isinstance(sub, Or):
                    self.iff_or(v, [self.var("c", sub.l, d), self.var("c", sub.r, d)])
                elif isinstance(sub, Exists):
                    steps = []
                    for e in range(n):
                        t = self.fresh()
                        self.iff_and(t, [self.var("r", sub.role, d, e), self.var("c", sub.c, e)])
                        steps.append(t)
                    self.iff_or(v, steps)
                elif isinstance(sub, Forall):
                    steps = []
                    for e in range(n):
                        t = self.fresh()
                        self.iff_or(t, [-self.var("r", sub.role, d, e), self.var("c", sub.c, e)])
                        steps.append(t)
                    self.iff_and(v, steps)
                elif isinstance(sub, LocalDD):
                    self.iff_and(v, [self.unique(sub.c, d)])
                elif isinstance(sub, GlobalDD):
                    picks = []
                    for e in range(n):
                        t = self.fresh()
                        self.iff_and(t, [self.unique(sub.c, e), self.var("c", sub.d, e)])
                        picks.append(t)
                    self.iff_or(v, picks)
                else:
                    raise TypeError(sub)

    def unique(self, body: Concept, d: int) -> int:
        key = ("u", body, d)
        if key in self.pool.obj2id:
            return self.pool.obj2id[key]
        u = self.var(*key)
        lits = [self.var("c", body, d)] + [-self.var("c", body, e) for e in range(self.n) if e != d]
        self.iff_and(u, lits)
        return u


def sat_model(c: Concept, n: int) -> Interpretation | None:
    """A model of ``c`` with exactly ``n`` elements whose first element is in ``c``."""
    enc = _Encoder(n)
    enc.concept(c)
    enc.clauses.append([enc.var("c", c, 0)])
    with Minisat22(bootstrap_with=enc.clauses) as s:
        if not s.solve():
            return None
        model = set(l for l in s.get_model() if l > 0)
    dom = [f"d{i}" for i in range(n)]
    concepts = {
        a: {dom[d] for d in range(n) if enc.pool.obj2id.get(("a", a, d)) in model}
        for a in atoms(c)
    }
    rel = {
        r: {(dom[d], dom[e]) for d in range(n) for e in range(n) if enc.pool.obj2id.get(("r", r, d, e)) in model}
        for r in roles(c)
    }
    return Interpretation.build(dom, concepts, rel)


def find_model(c: Concept, max_domain: int = 5) -> Interpretation | None:
    for n in range(1, max_domain + 1):
        m = sat_model(c, n)
        if m is not None:
            return m
    return None


# ---------------------------------------------------------------------------
# Brute force: every interpretation of a given size
# ---------------------------------------------------------------------------


def all_interpretations(n: int, atom_names, role_names):
    dom = [f"d{i}" for i in range(n)]
    pairs = [(a, b) for a in dom for b in dom]
    subsets = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(dom, k)]
    relations = [frozenset(s) for k in range(len(pairs) + 1) for s in itertools.combinations(pairs, k)]
    atom_names, role_names = sorted(atom_names), sorted(role_names)
    for ext in itertools.product(subsets, repeat=len(atom_names)):
        for rel in itertools.product(relations, repeat=len(role_names)):
            yield Interpretation.build(dom, dict(zip(atom_names, ext)), dict(zip(role_names, rel)))


def naive_eval(c: Concept, I: Interpretation, d: str) -> bool:
    """Pointwise truth of ``c`` at ``d`` read straight off the semantic clauses."""
    if isinstance(c, Atom):
        return d in I.concept(c.name)
    if isinstance(c, Top):
        return True
    if isinstance(c, Bot):
        return False
    if isinstance(c, Not):
        return not naive_eval(c.c, I, d)
    if isinstance(c, And):
        return naive_eval(c.l, I, d) and naive_eval(c.r, I, d)
    if isinstance(c, Or):
        return naive_eval(c.l, I, d) or naive_eval(c.r, I, d)
    if isinstance(c, Exists):
        return any(naive_eval(c.c, I, e) for (x, e) in I.role(c.role) if x == d)
    if isinstance(c, Forall):
        return all(naive_eval(c.c, I, e) for (x, e) in I.role(c.role) if x == d)
    if isinstance(c, LocalDD):
        return [e for e in I.domain if naive_eval(c.c, I, e)] == [d]
    if isinstance(c, GlobalDD):
        sat = [e for e in I.domain if naive_eval(c.c, I, e)]
        return len(sat) == 1 and naive_eval(c.d, I, sat[0])
    raise TypeError(c)


# ---------------------------------------------------------------------------
# Bisimulation as a naive greatest fixpoint
# ---------------------------------------------------------------------------


def naive_bisim(I: Interpretation, J: Interpretation) -> set[tuple[str, str]]:
    names = set(I.concepts) | set(J.concepts)
    rnames = set(I.roles) | set(J.roles)
    Z = {
        (d, e)
        for d in I.domain
        for e in J.domain
        if all((d in I.concept(a)) == (e in J.concept(a)) for a in names)
    }
    changed = True
    while changed:
        changed = False
        for d, e in list(Z):
            ok = True
            for r in rnames:
                ds = I.successors(r, d)
                es = J.successors(r, e)
                if any(not any((d2, e2) in Z for e2 in es) for d2 in ds):
                    ok = False
                if any(not any((d2, e2) in Z for d2 in ds) for e2 in es):
                    ok = False
            if not ok:
                Z.discard((d, e))
                changed = True
    return Z


# ---------------------------------------------------------------------------
# First-order evaluation of the ASCII standard translation
# ---------------------------------------------------------------------------

_FO_TOKEN = re.compile(r"\s*(forall|exists|true|false|->|[()&|~=,]|[A-Za-z_][A-Za-z0-9_]*)")


def _fo_tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _FO_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad FO text at {pos}: {text[pos:pos+20]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_fo(text: str):
    """Parse into nested tuples. Grammar (loosest first): imp, or, and, unary."""
    toks = _fo_tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = toks[pos]
        if expected is not None and t != expected:
            raise ValueError(f"expected {expected}, got {t}")
        pos += 1
        return t

    def imp():
        left = disj()
        if peek() == "->":
            take()
            return ("imp", left, imp())
        return left

    def disj():
        left = conj()
        while peek() == "|":
            take()
            left = ("or", left, conj())
        return left

    def conj():
        left = unary()
        while peek() == "&":
            take()
            left = ("and", left, unary())
        return left

    def unary():
        t = peek()
        if t == "~":
            take()
            return ("not", unary())
        if t in ("forall", "exists"):
            take()
            v = take()
            return (t, v, unary())
        if t == "(":
            take()
            f = imp()
            take(")")
            return f
        if t in ("true", "false"):
            take()
            return (t,)
        name = take()
        if peek() == "=":
            take()
            return ("eq", name, take())
        take("(")
        args = [take()]
        while peek() == ",":
            take()
            args.append(take())
        take(")")
        return ("pred", name, tuple(args))

    f = imp()
    if pos != len(toks):
        raise ValueError(f"trailing tokens {toks[pos:]}")
    return f


def fo_holds(f, I: Interpretation, env: dict[str, str]) -> bool:
    tag = f[0]
    if tag == "true":
        return True
    if tag == "false":
        return False
    if tag == "not":
        return not fo_holds(f[1], I, env)
    if tag == "and":
        return fo_holds(f[1], I, env) and fo_holds(f[2], I, env)
    if tag == "or":
        return fo_holds(f[1], I, env) or fo_holds(f[2], I, env)
    if tag == "imp":
        return (not fo_holds(f[1], I, env)) or fo_holds(f[2], I, env)
    if tag == "eq":
        return env[f[1]] == env[f[2]]
    if tag == "pred":
        args = tuple(env[a] for a in f[2])
        if len(args) == 1:
            return args[0] in I.concept(f[1])
        return args in I.role(f[1])
    if tag in ("forall", "exists"):
        q = all if tag == "forall" else any
        return q(fo_holds(f[2], I, {**env, f[1]: d}) for d in I.domain)
    raise ValueError(tag)


# ---------------------------------------------------------------------------
# Exhaustive concept enumeration
# ---------------------------------------------------------------------------


def enumerate_concepts(max_size: int, atom_names=("A", "B"), role: str = "r", commutative: bool = True):
    """Every concept over the core constructors up to ``max_size`` symbols.

    Core constructors: atoms, top, not, and, some, the, that. With
    ``commutative`` only one ordering of each conjunction is produced.
    """

    @lru_cache(None)
    def exact(s: int) -> tuple[Concept, ...]:
        out: list[Concept] = []
        if s == 1:
            out += [Atom(a) for a in atom_names] + [Top()]
        if s >= 2:
            for c in exact(s - 1):
                out += [Not(c), LocalDD(c)]
        if s >= 3:
            out += [Exists(role, c) for c in exact(s - 2)]
        for a in range(1, s - 1):
            b = s - 1 - a
            for l in exact(a):
                for r in exact(b):
                    if not commutative or a < b or (a == b and repr(l) <= repr(r)):
                        out.append(And(l, r))
                    out.append(GlobalDD(l, r))
        return tuple(out)

    for s in range(1, max_size + 1):
        yield from exact(s)


# ---------------------------------------------------------------------------
# Random concepts and interpretations
# ---------------------------------------------------------------------------


def random_concept(rng, depth: int, atom_names=("A", "B"), role_names=("r",), local=True, global_=True, sugar=True):
    """Random concept of modal/operator depth at most ``depth``."""
    leaves = [lambda: Atom(rng.choice(atom_names)), Top, Bot] if sugar else [lambda: Atom(rng.choice(atom_names))]
    if depth <= 0 or rng.random() < 0.2:
        return rng.choice(leaves)() if sugar and rng.random() < 0.15 else Atom(rng.choice(atom_names))
    kinds = ["not", "and", "some"]
    if sugar:
        kinds += ["or", "all"]
    if local:
        kinds.append("the")
    if global_:
        kinds.append("that")
    kind = rng.choice(kinds)
    sub = lambda: random_concept(rng, depth - 1, atom_names, role_names, local, global_, sugar)
    if kind == "not":
        return Not(sub())
    if kind == "and":
        return And(sub(), sub())
    if kind == "or":
        return Or(sub(), sub())
    if kind == "some":
        return Exists(rng.choice(role_names), sub())
    if kind == "all":
        return Forall(rng.choice(role_names), sub())
    if kind == "the":
        return LocalDD(sub())
    return GlobalDD(sub(), sub())


def random_interpretation(rng, n: int, atom_names=("A", "B"), role_names=("r",), density: float = 0.3, prefix="d"):
    dom = [f"{prefix}{i}" for i in range(n)]
    concepts = {a: {d for d in dom if rng.random() < 0.5} for a in atom_names}
    rel = {r: {(d, e) for d in dom for e in dom if rng.random() < density} for r in role_names}
    return Interpretation.build(dom, concepts, rel)

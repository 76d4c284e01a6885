"""Tableau decision procedure for ALC with local and global definite descriptions.

A proof attempt grows one branch in place and backtracks chronologically over
branching rules, undoing additions from a trail. Deterministic rules are run to
a fixpoint through a work queue before any branching rule is considered, so
the rule priorities reduce to the order in which branching rules are looked
up:

    clash > ABox > not-not > and > TBox > iota1_l > iota2 > not-exists
          > not-and > cut > not-iota_l > not-iota_g > iota1_g > exists

Individuals are integers; the creation index is the order used whenever the
least individual with some property is needed.
"""

from __future__ import annotations

import random
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .semantics import Interpretation, evaluator, models_ontology
from .syntax import (
    And,
    Atom,
    Bot,
    Concept,
    ConceptAssertion,
    ConceptInclusion,
    Exists,
    GlobalDD,
    LocalDD,
    Not,
    Ontology,
    RoleAssertion,
    Top,
    atoms,
    desugar,
    has_global,
    has_local,
    neg,
    size,
)

LOGICS = ("alcil", "alcig", "alci")

# Rule identifiers, highest priority first.
RULES = (
    "clash",
    "abox_c",
    "abox_r",
    "not_not",
    "and",
    "tbox",
    "iota1_l",
    "iota2_l",
    "iota2_g",
    "not_exists",
    "not_and",
    "cut_l",
    "cut_g",
    "not_iota_l",
    "not_iota_g",
    "iota1_g",
    "exists",
)
BRANCHING = ("not_and", "cut_l", "cut_g", "not_iota_l", "not_iota_g", "iota1_g", "exists")


class ProverError(Exception):
    pass


class ProofTimeout(ProverError):
    pass


class CapExceeded(ProverError):
    """More individuals on a branch than the termination bound allows."""


class LogicError(ProverError):
    """Input uses a description kind the selected logic does not have."""


@dataclass(frozen=True)
class ProverConfig:
    logic: str = "alci"
    enable_cut: bool = True
    individual_cap: int | None = None
    timeout: float | None = None
    tie_break_seed: int | None = None

    def __post_init__(self):
        if self.logic not in LOGICS:
            raise ValueError(f"unknown logic {self.logic!r}")
        if self.individual_cap is not None and self.individual_cap < 1:
            raise ValueError("individual cap must be at least 1")

    @property
    def local(self) -> bool:
        return self.logic in ("alcil", "alci")

    @property
    def global_(self) -> bool:
        return self.logic in ("alcig", "alci")


class Fresh(NamedTuple):
    """Placeholder for the k-th individual created by a rule conclusion."""

    k: int


# Conclusion actions: ("new",), ("assert", target, concept), ("rel", role, src, dst)
# where targets are existing individuals or Fresh placeholders.
Action = tuple
Alternative = list


@dataclass
class Stats:
    rules: Counter = field(default_factory=Counter)
    branches: int = 1
    closed: int = 0
    max_individuals: int = 0
    seconds: float = 0.0


@dataclass
class ProofResult:
    verdict: str
    model: Interpretation | None = None
    root: str | None = None
    stats: Stats = field(default_factory=Stats)
    model_checked: bool | None = None
    branch: "Branch | None" = field(default=None, repr=False)

    @property
    def sat(self) -> bool:
        return self.verdict == "sat"


def individual_bound(c: Concept, o: Ontology | None = None) -> int:
    """Termination bound on individuals per branch: 2^(4(|C|+|O|)) + k."""
    if o is None:
        return 2 ** (4 * size(c))
    return 2 ** (4 * (size(c) + o.size())) + len(o.individuals)


class FreshAtoms:
    """Fresh atoms determined by a concept, one family per description kind."""

    def __init__(self, reserved: Iterable[str] = ()):
        self.reserved = set(reserved)
        self.table: dict[tuple[str, Concept], Atom] = {}

    def get(self, kind: str, c: Concept) -> Atom:
        key = (kind, c)
        hit = self.table.get(key)
        if hit is None:
            n = len(self.table)
            name = f"__{kind}{n}"
            while name in self.reserved:
                n += 1
                name = f"__{kind}{n}"
            self.reserved.add(name)
            hit = self.table[key] = Atom(name)
        return hit


def _is_clash(c: Concept, theory: set) -> bool:
    if isinstance(c, Bot):
        return True
    if isinstance(c, Not) and isinstance(c.c, Top):
        return True
    return neg(c) in theory


class Branch:
    """A tableau branch with an undo trail.

    The branch is cumulative: assertions are only ever added, and removed again
    solely by backtracking to an earlier mark.
    """

    def __init__(self, cfg: ProverConfig, tbox: Iterable[Concept] = (), fresh: FreshAtoms | None = None):
        self.cfg = cfg
        self.tbox = tuple(tbox)
        self.fresh = fresh or FreshAtoms()
        self.th: list[set[Concept]] = []
        self.names: list[str | None] = []
        self.succ: list[dict[str, list[int]]] = []
        self.negex: list[dict[str, list[Concept]]] = []
        self.holders: dict[Concept, list[int]] = {}
        self.edges: set[tuple[str, int, int]] = set()
        self.log: list[tuple] = []
        self.bodies: list[Concept] = []
        self.body_kinds: dict[Concept, set[str]] = {}
        self.not_ands: list[tuple[int, Concept]] = []
        self.neg_lds: list[tuple[int, Concept]] = []
        self.neg_gds: list[GlobalDD] = []
        self.neg_gd_set: set[GlobalDD] = set()
        self.pos_gds: list[GlobalDD] = []
        self.pos_gd_set: set[GlobalDD] = set()
        self.exists: list[tuple[int, Exists]] = []
        self.cursors: dict = {}
        self.trail: list[tuple] = []
        self.queue: deque = deque()
        self.clash: tuple[int, Concept] | None = None
        self.cap: int | None = cfg.individual_cap
        self.stats = Stats()

    # -- basic mutation ---------------------------------------------------

    @property
    def individuals(self) -> range:
        return range(len(self.th))

    def new_individual(self, name: str | None = None) -> int:
        x = len(self.th)
        if self.cap is not None and x >= self.cap:
            raise CapExceeded(f"branch exceeds {self.cap} individuals")
        self.th.append(set())
        self.names.append(name)
        self.succ.append({})
        self.negex.append({})
        self.trail.append(("i",))
        if x + 1 > self.stats.max_individuals:
            self.stats.max_individuals = x + 1
        for t in self.tbox:
            self.add(x, t, "tbox")
        return x

    def add(self, x: int, c: Concept, rule: str | None = None) -> None:
        theory = self.th[x]
        if c in theory:
            return
        if rule is not None:
            self.stats.rules[rule] += 1
        clash = _is_clash(c, theory)
        theory.add(c)
        self.holders.setdefault(c, []).append(x)
        self.log.append((x, c))
        lst = dedupe = None
        if isinstance(c, Not):
            inner = c.c
            if isinstance(inner, And):
                lst = self.not_ands
                lst.append((x, c))
            elif isinstance(inner, LocalDD):
                lst = self.neg_lds
                lst.append((x, c))
            elif isinstance(inner, GlobalDD) and inner not in self.neg_gd_set:
                lst, dedupe = self.neg_gds, self.neg_gd_set
                lst.append(inner)
                dedupe.add(inner)
        elif isinstance(c, Exists):
            lst = self.exists
            lst.append((x, c))
        elif isinstance(c, GlobalDD) and c not in self.pos_gd_set:
            lst, dedupe = self.pos_gds, self.pos_gd_set
            lst.append(c)
            dedupe.add(c)
        self.trail.append(("a", x, c, lst, dedupe))
        if clash:
            if self.clash is None:
                self.clash = (x, c)
                self.stats.rules["clash"] += 1
            return
        self.queue.append((x, c))

    def add_edge(self, role: str, x: int, y: int, rule: str | None = None) -> None:
        key = (role, x, y)
        if key in self.edges:
            return
        if rule is not None:
            self.stats.rules[rule] += 1
        self.edges.add(key)
        self.succ[x].setdefault(role, []).append(y)
        self.log.append(key)
        self.trail.append(("e", role, x, y))
        for d in self.negex[x].get(role, ()):
            self.add(y, neg(d), "not_exists")

    def _activate(self, body: Concept, kind: str) -> None:
        kinds = self.body_kinds.get(body)
        if kinds is None:
            kinds = self.body_kinds[body] = set()
            self.bodies.append(body)
            self.trail.append(("b", body))
            members = list(self.holders.get(body, ()))
            if len(members) > 1:
                union = set().union(*(self.th[m] for m in members))
                rule = "iota2_g" if kind == "g" else "iota2_l"
                for m in members:
                    for e in list(union):
                        self.add(m, e, rule)
        if kind not in kinds:
            kinds.add(kind)
            self.trail.append(("k", body, kind))

    def _set_cursor(self, key, value: int) -> None:
        old = self.cursors.get(key, 0)
        if value != old:
            self.trail.append(("c", key, old))
            self.cursors[key] = value

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            entry = trail.pop()
            tag = entry[0]
            if tag == "a":
                _, x, c, lst, dedupe = entry
                self.th[x].discard(c)
                self.holders[c].pop()
                self.log.pop()
                if lst is not None:
                    item = lst.pop()
                    if dedupe is not None:
                        dedupe.discard(item)
            elif tag == "e":
                _, role, x, y = entry
                self.edges.discard((role, x, y))
                self.succ[x][role].pop()
                self.log.pop()
            elif tag == "n":
                _, x, role = entry
                self.negex[x][role].pop()
            elif tag == "i":
                self.th.pop()
                self.names.pop()
                self.succ.pop()
                self.negex.pop()
            elif tag == "b":
                body = entry[1]
                self.bodies.pop()
                del self.body_kinds[body]
            elif tag == "k":
                _, body, kind = entry
                self.body_kinds[body].discard(kind)
            elif tag == "c":
                _, key, old = entry
                self.cursors[key] = old
        self.queue.clear()
        self.clash = None

    # -- deterministic closure ---------------------------------------------

    def close(self, deadline: float | None = None) -> bool:
        """Apply deterministic rules to a fixpoint; False when the branch closes."""
        queue = self.queue
        steps = 0
        while queue and self.clash is None:
            x, c = queue.popleft()
            self._consequences(x, c)
            steps += 1
            if deadline is not None and steps % 512 == 0 and time.monotonic() > deadline:
                raise ProofTimeout()
        if self.clash is not None:
            queue.clear()
            return False
        return True

    def _consequences(self, x: int, c: Concept) -> None:
        cfg = self.cfg
        if isinstance(c, Not):
            inner = c.c
            if isinstance(inner, Not):
                self.add(x, inner.c, "not_not")
            elif isinstance(inner, Exists):
                role = inner.role
                self.negex[x].setdefault(role, []).append(inner.c)
                self.trail.append(("n", x, role))
                for y in list(self.succ[x].get(role, ())):
                    self.add(y, neg(inner.c), "not_exists")
        elif isinstance(c, And):
            self.add(x, c.l, "and")
            self.add(x, c.r, "and")
        elif isinstance(c, LocalDD):
            if cfg.local:
                self.add(x, c.c, "iota1_l")
                self._activate(c.c, "l")
        elif isinstance(c, GlobalDD):
            if cfg.global_:
                self._activate(c.c, "g")
        if self.clash is not None or not self.bodies:
            return
        # iota2: individuals sharing a description body share their theories.
        theory = self.th[x]
        for body in self.bodies:
            if body in theory:
                rule = "iota2_g" if "g" in self.body_kinds[body] else "iota2_l"
                for y in list(self.holders[body]):
                    if y != x:
                        self.add(y, c, rule)
        if c in self.body_kinds:
            rule = "iota2_g" if "g" in self.body_kinds[c] else "iota2_l"
            for y in list(self.holders[c]):
                if y != x:
                    for e in list(self.th[y]):
                        self.add(x, e, rule)
                    for e in list(theory):
                        self.add(y, e, rule)

    # -- branching rules ---------------------------------------------------

    def witness_pair(self, kind: str, body: Concept) -> bool:
        """Two individuals with ``body``, one inside and one outside its fresh atom."""
        a = self.fresh.get(kind, body)
        th = self.th
        inside = any(body in th[y] for y in self.holders.get(a, ()))
        outside = any(body in th[y] for y in self.holders.get(Not(a), ()))
        return inside and outside

    def _pair_alternative(self, kind: str, body: Concept) -> Alternative:
        a = self.fresh.get(kind, body)
        b, b2 = Fresh(0), Fresh(1)
        return [
            ("new",),
            ("assert", b, body),
            ("assert", b, a),
            ("new",),
            ("assert", b2, body),
            ("assert", b2, Not(a)),
        ]

    def _pick(self, candidates: list, rng: random.Random | None):
        if not candidates:
            return None
        return candidates[0] if rng is None else rng.choice(candidates)

    def next_branching(self, rng: random.Random | None = None):
        """First applicable branching or individual-creating rule instance.

        Returns ``(rule, premise, alternatives)`` or None when the branch is
        saturated. With ``rng`` the instance is drawn at random among the
        applicable instances of the highest-priority rule.
        """
        th = self.th
        cfg = self.cfg

        # not_and
        lst = self.not_ands
        cur = self.cursors.get("not_and", 0)
        found = []
        for i in range(cur, len(lst)):
            x, c = lst[i]
            inner = c.c
            if neg(inner.l) in th[x] or neg(inner.r) in th[x]:
                if i == cur:
                    cur += 1
                continue
            found.append((x, c))
            if rng is None:
                break
        self._set_cursor("not_and", cur)
        hit = self._pick(found, rng)
        if hit is not None:
            x, c = hit
            inner = c.c
            return "not_and", hit, [[("assert", x, neg(inner.l))], [("assert", x, neg(inner.r))]]

        # cut
        if cfg.enable_cut:
            found = []
            n = len(th)
            for body in self.bodies:
                key = ("cut", body)
                cur = self.cursors.get(key, 0)
                nb = neg(body)
                for x in range(cur, n):
                    if body in th[x] or nb in th[x]:
                        if x == cur:
                            cur += 1
                        continue
                    found.append((x, body))
                    if rng is None:
                        break
                self._set_cursor(key, cur)
                if found and rng is None:
                    break
            hit = self._pick(found, rng)
            if hit is not None:
                x, body = hit
                rule = "cut_g" if "g" in self.body_kinds[body] else "cut_l"
                return rule, hit, [[("assert", x, body)], [("assert", x, neg(body))]]

        # not_iota_l
        if cfg.local:
            lst = self.neg_lds
            cur = self.cursors.get("not_iota_l", 0)
            found = []
            for i in range(cur, len(lst)):
                x, c = lst[i]
                body = c.c.c
                if neg(body) in th[x] or self.witness_pair("l", body):
                    if i == cur:
                        cur += 1
                    continue
                found.append((x, c))
                if rng is None:
                    break
            self._set_cursor("not_iota_l", cur)
            hit = self._pick(found, rng)
            if hit is not None:
                x, c = hit
                body = c.c.c
                return "not_iota_l", hit, [
                    [("assert", x, neg(body))],
                    self._pair_alternative("l", body),
                ]

        # not_iota_g
        if cfg.global_:
            found = []
            n = len(th)
            for gd in self.neg_gds:
                if self.witness_pair("g", gd.c):
                    continue
                key = ("not_iota_g", gd)
                cur = self.cursors.get(key, 0)
                nc, nd = neg(gd.c), neg(gd.d)
                for x in range(cur, n):
                    if nc in th[x] or nd in th[x]:
                        if x == cur:
                            cur += 1
                        continue
                    found.append((x, gd))
                    if rng is None:
                        break
                self._set_cursor(key, cur)
                if found and rng is None:
                    break
            hit = self._pick(found, rng)
            if hit is not None:
                x, gd = hit
                return "not_iota_g", hit, [
                    [("assert", x, neg(gd.c))],
                    [("assert", x, neg(gd.d))],
                    self._pair_alternative("g", gd.c),
                ]

        # iota1_g
        if cfg.global_:
            lst = self.pos_gds
            cur = self.cursors.get("iota1_g", 0)
            found = []
            for i in range(cur, len(lst)):
                gd = lst[i]
                if any(gd.d in th[y] for y in self.holders.get(gd.c, ())):
                    if i == cur:
                        cur += 1
                    continue
                found.append(gd)
                if rng is None:
                    break
            self._set_cursor("iota1_g", cur)
            gd = self._pick(found, rng)
            if gd is not None:
                owners = self.holders.get(gd.c)
                if owners:
                    alt = [("assert", min(owners), gd.d)]
                else:
                    alt = [("new",), ("assert", Fresh(0), gd.c), ("assert", Fresh(0), gd.d)]
                return "iota1_g", gd, [alt]

        # exists
        lst = self.exists
        cur = self.cursors.get("exists", 0)
        found = []
        for i in range(cur, len(lst)):
            x, c = lst[i]
            if any(c.c in th[y] for y in self.succ[x].get(c.role, ())):
                if i == cur:
                    cur += 1
                continue
            if self.blocked(x, c):
                continue
            found.append((x, c))
            if rng is None:
                break
        self._set_cursor("exists", cur)
        hit = self._pick(found, rng)
        if hit is not None:
            x, c = hit
            return "exists", hit, [[("new",), ("rel", c.role, x, Fresh(0)), ("assert", Fresh(0), c.c)]]
        return None

    def blocked(self, x: int, c: Exists) -> bool:
        """Pattern blocking: some individual already has ``c.c`` and every
        negated filler ``x`` imposes on its role successors."""
        return bool(self.proxies(x, c))

    def proxies(self, x: int, c: Exists) -> list[int]:
        th = self.th
        required = [neg(d) for d in self.negex[x].get(c.role, ())]
        return [z for z in self.holders.get(c.c, ()) if all(r in th[z] for r in required)]

    def apply(self, alternative: Alternative, rule: str) -> list[int]:
        """Carry out one conclusion; returns the individuals it created."""
        created: list[int] = []

        def resolve(t):
            return created[t.k] if isinstance(t, Fresh) else t

        for action in alternative:
            if action[0] == "new":
                created.append(self.new_individual())
            elif action[0] == "assert":
                self.add(resolve(action[1]), action[2], rule)
            else:
                self.add_edge(action[1], resolve(action[2]), resolve(action[3]), rule)
        return created

    # -- inspection ----------------------------------------------------------

    def theory(self, x: int) -> set[Concept]:
        return set(self.th[x])

    def assertions(self) -> list[tuple]:
        return list(self.log)

    @property
    def closed(self) -> bool:
        return self.clash is not None

    def copy(self) -> "Branch":
        """Independent branch with the same assertions (trail not kept)."""
        other = Branch(self.cfg, self.tbox, self.fresh)
        other.th = [set(t) for t in self.th]
        other.names = list(self.names)
        other.succ = [{r: list(v) for r, v in s.items()} for s in self.succ]
        other.negex = [{r: list(v) for r, v in s.items()} for s in self.negex]
        other.holders = {c: list(v) for c, v in self.holders.items()}
        other.edges = set(self.edges)
        other.log = list(self.log)
        other.bodies = list(self.bodies)
        other.body_kinds = {c: set(v) for c, v in self.body_kinds.items()}
        other.not_ands = list(self.not_ands)
        other.neg_lds = list(self.neg_lds)
        other.neg_gds = list(self.neg_gds)
        other.neg_gd_set = set(self.neg_gd_set)
        other.pos_gds = list(self.pos_gds)
        other.pos_gd_set = set(self.pos_gd_set)
        other.exists = list(self.exists)
        other.cursors = dict(self.cursors)
        other.queue = deque(self.queue)
        other.clash = self.clash
        other.cap = self.cap
        return other

    # -- model construction --------------------------------------------------

    def representatives(self) -> list[int]:
        """Least individual sharing a description body with each individual."""
        rep = list(range(len(self.th)))
        for body in self.bodies:
            members = self.holders.get(body, ())
            if members:
                least = min(members)
                for m in members:
                    if least < rep[m]:
                        rep[m] = least
        return rep

    def extract_model(self) -> tuple[Interpretation, list[str]]:
        """Interpretation read off a saturated open branch.

        Returns the interpretation and, per individual, the element it denotes.
        """
        rep = self.representatives()
        elem = [f"e{rep[x]}" for x in self.individuals]
        domain = [f"e{x}" for x in sorted(set(rep))]
        concepts: dict[str, set[str]] = {}
        for c, owners in self.holders.items():
            if isinstance(c, Atom) and owners:
                concepts.setdefault(c.name, set()).update(elem[x] for x in owners)
        roles: dict[str, set[tuple[str, str]]] = {}
        for role, x, y in self.edges:
            roles.setdefault(role, set()).add((elem[x], elem[y]))
        for x, c in self.exists:
            if any(c.c in self.th[y] for y in self.succ[x].get(c.role, ())):
                continue
            for z in self.proxies(x, c):
                roles.setdefault(c.role, set()).add((elem[x], elem[z]))
        individuals = {name: elem[x] for x, name in enumerate(self.names) if name is not None}
        return Interpretation.build(domain, concepts, roles, individuals), elem


# ---------------------------------------------------------------------------
# Rule inspection (full scans, independent of the engine's cursors)
# ---------------------------------------------------------------------------


def applicable_rules(b: Branch, cfg: ProverConfig | None = None) -> list[tuple[str, object]]:
    """Every applicable rule instance on ``b``, in priority order.

    A clash pre-empts everything else. An empty list means the branch is
    saturated.
    """
    cfg = cfg or b.cfg
    th = b.th
    for x in b.individuals:
        for c in th[x]:
            if _is_clash(c, th[x]):
                return [("clash", (x, c))]
    out: list[tuple[str, object]] = []
    for x in b.individuals:
        for c in th[x]:
            if isinstance(c, Not) and isinstance(c.c, Not) and c.c.c not in th[x]:
                out.append(("not_not", (x, c)))
    for x in b.individuals:
        for c in th[x]:
            if isinstance(c, And) and not (c.l in th[x] and c.r in th[x]):
                out.append(("and", (x, c)))
    for x in b.individuals:
        for t in b.tbox:
            if t not in th[x]:
                out.append(("tbox", (x, t)))
    bodies: dict[Concept, set[str]] = {}
    for x in b.individuals:
        for c in th[x]:
            if isinstance(c, LocalDD) and cfg.local:
                bodies.setdefault(c.c, set()).add("l")
                if c.c not in th[x]:
                    out.append(("iota1_l", (x, c)))
            elif isinstance(c, GlobalDD) and cfg.global_:
                bodies.setdefault(c.c, set()).add("g")
    for kind, rule in (("l", "iota2_l"), ("g", "iota2_g")):
        for body, kinds in bodies.items():
            if kind not in kinds:
                continue
            members = [x for x in b.individuals if body in th[x]]
            for y in members:
                for z in members:
                    missing = th[y] - th[z]
                    for e in missing:
                        out.append((rule, (body, y, z, e)))
    for x in b.individuals:
        for c in th[x]:
            if isinstance(c, Not) and isinstance(c.c, Exists):
                for y in b.succ[x].get(c.c.role, ()):
                    if neg(c.c.c) not in th[y]:
                        out.append(("not_exists", (x, c, y)))
    for x in b.individuals:
        for c in th[x]:
            if isinstance(c, Not) and isinstance(c.c, And):
                if neg(c.c.l) not in th[x] and neg(c.c.r) not in th[x]:
                    out.append(("not_and", (x, c)))
    if cfg.enable_cut:
        for kind, rule in (("l", "cut_l"), ("g", "cut_g")):
            for body, kinds in bodies.items():
                if kind in kinds:
                    for x in b.individuals:
                        if body not in th[x] and neg(body) not in th[x]:
                            out.append((rule, (x, body)))
    if cfg.local:
        for x in b.individuals:
            for c in th[x]:
                if isinstance(c, Not) and isinstance(c.c, LocalDD):
                    body = c.c.c
                    if neg(body) not in th[x] and not b.witness_pair("l", body):
                        out.append(("not_iota_l", (x, c)))
    if cfg.global_:
        gds = {c.c for x in b.individuals for c in th[x] if isinstance(c, Not) and isinstance(c.c, GlobalDD)}
        for gd in gds:
            if b.witness_pair("g", gd.c):
                continue
            for x in b.individuals:
                if neg(gd.c) not in th[x] and neg(gd.d) not in th[x]:
                    out.append(("not_iota_g", (x, gd)))
        pos = {c for x in b.individuals for c in th[x] if isinstance(c, GlobalDD)}
        for gd in pos:
            if not any(gd.c in th[y] and gd.d in th[y] for y in b.individuals):
                out.append(("iota1_g", gd))
    for x in b.individuals:
        for c in th[x]:
            if isinstance(c, Exists):
                if any(c.c in th[y] for y in b.succ[x].get(c.role, ())):
                    continue
                if not b.blocked(x, c):
                    out.append(("exists", (x, c)))
    return out


def branch_of(assertions: Iterable[tuple], cfg: ProverConfig | None = None, tbox: Iterable[Concept] = ()) -> Branch:
    """Branch holding exactly the given assertions, with no rule applied.

    Items are ``(ind, concept)`` or ``(role, ind, ind)``; individuals are
    numbered in order of first mention.
    """
    b = Branch(cfg or ProverConfig(), tbox)
    b.cap = None
    ids: dict[str, int] = {}

    def ind(name: str) -> int:
        if name not in ids:
            ids[name] = len(b.th)
            b.th.append(set())
            b.names.append(name)
            b.succ.append({})
            b.negex.append({})
        return ids[name]

    for item in assertions:
        if len(item) == 2:
            b.add(ind(item[0]), item[1])
        else:
            role, x, y = item
            x, y = ind(x), ind(y)
            b.edges.add((role, x, y))
            b.succ[x].setdefault(role, []).append(y)
            b.log.append((role, x, y))
    for x in b.individuals:
        for c in b.th[x]:
            if isinstance(c, Not) and isinstance(c.c, Exists):
                b.negex[x].setdefault(c.c.role, []).append(c.c.c)
    b.queue.clear()
    b.trail.clear()
    b.stats.max_individuals = len(b.th)
    return b


def conclusions(b: Branch, rule: str, premise) -> list[Alternative]:
    """The conclusions of one rule instance, as action lists."""
    if rule == "clash":
        return []
    if rule == "not_not":
        x, c = premise
        return [[("assert", x, c.c.c)]]
    if rule == "and":
        x, c = premise
        return [[("assert", x, c.l), ("assert", x, c.r)]]
    if rule == "tbox":
        x, t = premise
        return [[("assert", x, t)]]
    if rule == "iota1_l":
        x, c = premise
        return [[("assert", x, c.c)]]
    if rule in ("iota2_l", "iota2_g"):
        _, y, z, e = premise
        return [[("assert", z, e)]]
    if rule == "not_exists":
        x, c, y = premise
        return [[("assert", y, neg(c.c.c))]]
    if rule == "not_and":
        x, c = premise
        return [[("assert", x, neg(c.c.l))], [("assert", x, neg(c.c.r))]]
    if rule in ("cut_l", "cut_g"):
        x, body = premise
        return [[("assert", x, body)], [("assert", x, neg(body))]]
    if rule == "not_iota_l":
        x, c = premise
        body = c.c.c
        return [[("assert", x, neg(body))], b._pair_alternative("l", body)]
    if rule == "not_iota_g":
        x, gd = premise
        return [
            [("assert", x, neg(gd.c))],
            [("assert", x, neg(gd.d))],
            b._pair_alternative("g", gd.c),
        ]
    if rule == "iota1_g":
        gd = premise
        owners = [y for y in b.individuals if gd.c in b.th[y]]
        if owners:
            return [[("assert", min(owners), gd.d)]]
        return [[("new",), ("assert", Fresh(0), gd.c), ("assert", Fresh(0), gd.d)]]
    if rule == "exists":
        x, c = premise
        return [[("new",), ("rel", c.role, x, Fresh(0)), ("assert", Fresh(0), c.c)]]
    raise ValueError(f"unknown rule {rule!r}")


def expand(b: Branch, rule: str, premise) -> list[Branch]:
    """One successor branch per conclusion of the rule instance."""
    out = []
    for alt in conclusions(b, rule, premise):
        nb = b.copy()
        nb.trail = []
        nb.apply(alt, rule)
        nb.queue.clear()
        out.append(nb)
    return out


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def validate(c: Concept, o: Ontology | None, cfg: ProverConfig) -> None:
    concepts = [c, *(o.concepts() if o else ())]
    if not cfg.global_ and any(has_global(k) for k in concepts):
        raise LogicError(f"global descriptions are not part of {cfg.logic}")
    if not cfg.local and any(has_local(k) for k in concepts):
        raise LogicError(f"local descriptions are not part of {cfg.logic}")


def initial_branch(c: Concept, o: Ontology | None = None, cfg: ProverConfig | None = None) -> Branch:
    """Root branch: a fresh root individual with the input concept plus the ABox."""
    cfg = cfg or ProverConfig()
    o = o or Ontology()
    validate(c, o, cfg)
    core = desugar(c)
    tbox = [Not(And(desugar(ci.lhs), neg(desugar(ci.rhs)))) for ci in o.tbox]
    reserved = set(atoms(c))
    for k in o.concepts():
        reserved |= atoms(k)
    b = Branch(cfg, tbox, FreshAtoms(reserved))
    if b.cap is None:
        b.cap = individual_bound(c, o if (o.tbox or o.abox) else None)
    root = b.new_individual()
    b.add(root, core)
    ids: dict[str, int] = {}

    def ind(name: str) -> int:
        if name not in ids:
            ids[name] = b.new_individual(name)
        return ids[name]

    for ax in o.abox:
        if isinstance(ax, ConceptAssertion):
            b.add(ind(ax.individual), desugar(ax.concept), "abox_c")
        elif isinstance(ax, RoleAssertion):
            b.add_edge(ax.role, ind(ax.a1), ind(ax.a2), "abox_r")
    return b


def prove(
    c: Concept,
    o: Ontology | None = None,
    cfg: ProverConfig | None = None,
    check_model: bool = True,
) -> ProofResult:
    """Decide satisfiability of ``c`` (with respect to ``o``).

    On ``sat`` the result carries the interpretation built from the saturated
    branch, and ``model_checked`` records whether that interpretation really
    satisfies the input.
    """
    cfg = cfg or ProverConfig()
    start = time.monotonic()
    deadline = None if cfg.timeout is None else start + cfg.timeout
    b = initial_branch(c, o, cfg)
    rng = None if cfg.tie_break_seed is None else random.Random(cfg.tie_break_seed)
    stats = b.stats
    stack: list[tuple[int, str, list, int]] = []
    sat = False
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise ProofTimeout(f"no verdict within {cfg.timeout}s")
        if b.close(deadline):
            inst = b.next_branching(rng)
            if inst is None:
                sat = True
                break
            rule, _, alts = inst
            if len(alts) > 1:
                stack.append((b.mark(), rule, alts, 1))
            b.apply(alts[0], rule)
            continue
        stats.closed += 1
        while stack:
            mark, rule, alts, i = stack[-1]
            b.undo(mark)
            if i < len(alts):
                stack[-1] = (mark, rule, alts, i + 1)
                stats.branches += 1
                b.apply(alts[i], rule)
                break
            stack.pop()
        else:
            break
    stats.seconds = time.monotonic() - start
    if not sat:
        return ProofResult("unsat", stats=stats)
    model, elem = b.extract_model()
    result = ProofResult("sat", model, elem[0], stats, branch=b)
    if check_model:
        result.model_checked = check(model, elem[0], c, o)
    return result


def check(model: Interpretation, root: str, c: Concept, o: Ontology | None = None) -> bool:
    """Does ``model`` satisfy ``c`` at ``root`` and every axiom of ``o``?"""
    if root not in evaluator(model)(c):
        return False
    return o is None or models_ontology(model, o)

"""Brute-force reference implementations and seeded instance families.

The checks here deliberately avoid the engine's machinery: predicates are
frozensets, coherent pairs come from filtering every candidate, liftings are
re-evaluated from their definitions, and the linear oracle does its algebra
in sympy.  Only the model and relation containers are shared.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import chain, combinations
from typing import Iterator

from .fields import QQ
from .logics import Logic
from .models import KRIPKE_LABEL, KripkeModel, Lts, SetSystem, WeightedAutomaton
from .relations import Relation

RELATION_LIMIT = 16
GFP_LIMIT = 12
LINEAR_DIM_LIMIT = 6


class OracleBoundError(ValueError):
    pass


# ---------------------------------------------------------------- families

@dataclass
class InstanceFamily:
    """Seeded generator of system pairs.

    ``sizes`` lists (n1, n2) shapes, cycled through by instance index; for
    ``kind="wa"`` they are dimensions.
    """

    kind: str = "lts"  # lts | kripke | wa
    sizes: list = field(default_factory=lambda: [(3, 3)])
    labels: int = 1
    props: int = 1
    density: float = 0.35
    entries: tuple = (-2, 2)
    zero_prob: float = 0.5
    seed: int = 0
    count: int = 50

    def __post_init__(self):
        if self.kind not in ("lts", "kripke", "wa"):
            raise ValueError(f"unknown instance kind {self.kind!r}")
        if not self.sizes or any(len(s) != 2 or min(s) < 0 for s in self.sizes):
            raise ValueError(f"bad sizes {self.sizes!r}")
        self.sizes = [tuple(int(v) for v in s) for s in self.sizes]
        if self.count < 0 or self.labels < 1 or not 0 <= self.density <= 1:
            raise ValueError("count, labels or density out of range")

    def instance(self, k: int):
        rng = random.Random(f"{self.seed}:{k}")
        n1, n2 = self.sizes[k % len(self.sizes)]
        labels = [chr(ord("a") + i) for i in range(self.labels)]
        if self.kind == "lts":
            return random_lts(rng, n1, labels, self.density), random_lts(rng, n2, labels, self.density)
        if self.kind == "kripke":
            props = [f"p{i}" for i in range(self.props)]
            return random_kripke(rng, n1, props, self.density), random_kripke(rng, n2, props, self.density)
        return (
            random_automaton(rng, n1, labels, self.entries, self.zero_prob),
            random_automaton(rng, n2, labels, self.entries, self.zero_prob),
        )

    def __iter__(self):
        return (self.instance(k) for k in range(self.count))

    def to_json(self) -> dict:
        d = asdict(self)
        d["sizes"] = [list(s) for s in self.sizes]
        d["entries"] = list(self.entries)
        return d


def random_lts(rng: random.Random, n: int, labels, density: float) -> Lts:
    succ = tuple(
        tuple(sum(1 << y for y in range(n) if rng.random() < density) for _ in labels) for _ in range(n)
    )
    return Lts(tuple(f"s{i}" for i in range(n)), tuple(labels), succ)


def random_kripke(rng: random.Random, n: int, props, density: float) -> KripkeModel:
    succ = tuple((sum(1 << y for y in range(n) if rng.random() < density),) for _ in range(n))
    val = tuple(sum(1 << p for p in range(len(props)) if rng.random() < 0.5) for _ in range(n))
    return KripkeModel(tuple(f"s{i}" for i in range(n)), (KRIPKE_LABEL,), succ, tuple(props), val)


def random_automaton(rng: random.Random, dim: int, labels, entries=(-2, 2), zero_prob: float = 0.5) -> WeightedAutomaton:
    lo, hi = entries

    def entry():
        if rng.random() < zero_prob:
            return Fraction(0)
        num = rng.randint(lo, hi)
        return Fraction(num, rng.choice((1, 1, 2)))

    out = tuple(entry() for _ in range(dim))
    trans = tuple(tuple(tuple(entry() for _ in range(dim)) for _ in range(dim)) for _ in labels)
    return WeightedAutomaton(dim, tuple(labels), out, trans, QQ)


# --------------------------------------------------------------- relations

def enumerate_relations(n1: int, n2: int, limit: int = RELATION_LIMIT) -> Iterator[Relation]:
    """All 2^(n1 n2) relations, ordered by their bitset."""
    if n1 * n2 > limit:
        raise OracleBoundError(f"{n1}x{n2} relations exceed the enumeration bound {limit}")
    for b in range(1 << (n1 * n2)):
        yield Relation(n1, n2, b)


def _subsets(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))]


def _naive_coherent(pairs: frozenset, a1: frozenset, a2: frozenset) -> bool:
    for x, y in pairs:
        if (x in a1) != (y in a2):
            return False
    return True


def _successor_sets(m: SetSystem) -> list[list[frozenset]]:
    return [[frozenset(y for y in range(m.n) if s >> y & 1) for s in m.succ[x]] for x in range(m.n)]


def _naive_liftings(logic: Logic, m: SetSystem):
    """(name, arity, predicate on (state, argument set)) from the definitions."""
    succ = _successor_sets(m)
    out = []
    for fam in logic.families:
        if fam.kind == "top":
            out.append(("T", 0, lambda x, a: True))
        elif fam.kind == "prop":
            for i, p in enumerate(m.props):
                out.append((p, 0, lambda x, a, i=i: bool(m.val[x] >> i & 1)))
        elif fam.kind == "dia":
            for i, lab in enumerate(m.labels):
                out.append((f"<{lab}>", 1, lambda x, a, i=i: bool(succ[x][i] & a)))
        elif fam.kind == "box":
            for i, lab in enumerate(m.labels):
                out.append((f"[{lab}]", 1, lambda x, a, i=i: succ[x][i] <= a))
        else:
            raise ValueError(f"oracle has no Set semantics for {fam.kind}")
    return out


class NaiveChecker:
    """Definition-level rho-bisimulation check, one relation at a time."""

    def __init__(self, logic: Logic, m1: SetSystem, m2: SetSystem):
        if m1.labels != m2.labels:
            raise ValueError("label mismatch")
        self.m1, self.m2 = m1, m2
        self.l1 = _naive_liftings(logic, m1)
        self.l2 = _naive_liftings(logic, m2)
        self.cands = [(a1, a2) for a2 in _subsets(range(m2.n)) for a1 in _subsets(range(m1.n))]

    def check(self, B: Relation) -> bool:
        pairs = frozenset(B.pairs())
        for (name, arity, f1), (_, _, f2) in zip(self.l1, self.l2):
            if arity == 0:
                if any(f1(x, None) != f2(y, None) for x, y in pairs):
                    return False
                continue
            for a1, a2 in self.cands:
                if not _naive_coherent(pairs, a1, a2):
                    continue
                if any(f1(x, a1) != f2(y, a2) for x, y in pairs):
                    return False
        return True


def naive_check(logic: Logic, m1: SetSystem, m2: SetSystem, B: Relation) -> bool:
    return NaiveChecker(logic, m1, m2).check(B)


def oracle_greatest_bisim(logic: Logic, m1: SetSystem, m2: SetSystem, limit: int = GFP_LIMIT) -> Relation:
    """Union of every relation that passes the naive check.

    Relations already inside the running union cannot enlarge it and are
    skipped; every other relation is checked.
    """
    if m1.n * m2.n > limit:
        raise OracleBoundError(f"{m1.n}x{m2.n} exceeds the oracle bound n1*n2 <= {limit}")
    chk = NaiveChecker(logic, m1, m2)
    acc = 0
    for b in range((1 << (m1.n * m2.n)) - 1, -1, -1):
        if b & ~acc == 0:
            continue
        if chk.check(Relation(m1.n, m2.n, b)):
            acc |= b
    return Relation(m1.n, m2.n, acc)


def passing_relations(logic: Logic, m1: SetSystem, m2: SetSystem, limit: int = RELATION_LIMIT) -> list[Relation]:
    chk = NaiveChecker(logic, m1, m2)
    return [B for B in enumerate_relations(m1.n, m2.n, limit) if chk.check(B)]


# ------------------------------------------------------------------ linear

def oracle_linear_gfp(w1: WeightedAutomaton, w2: WeightedAutomaton, limit: int = LINEAR_DIM_LIMIT):
    """Kernel of all word observables up to length n1 + n2, in sympy.

    No early stopping: every word is enumerated.  Returns a SubspaceRelation
    whose basis is sympy's reduced row echelon form.
    """
    import sympy

    from .linear import SubspaceRelation

    if max(w1.dim, w2.dim) > limit:
        raise OracleBoundError(f"dimensions {w1.dim}, {w2.dim} exceed the oracle bound {limit}")
    if w1.labels != w2.labels or w1.field != QQ or w2.field != QQ:
        raise ValueError("the linear oracle needs rational automata over the same labels")
    n1, n2 = w1.dim, w2.dim

    def mat(rows, n):
        return sympy.Matrix(n, n, [sympy.Rational(v.numerator, v.denominator) for r in rows for v in r])

    mats = [(mat(a, n1), mat(b, n2)) for a, b in zip(w1.trans, w2.trans)]
    o = sympy.Matrix(1, n1 + n2, [sympy.Rational(v.numerator, v.denominator) for v in (*w1.output, *(-v for v in w2.output))])
    rows = []
    level = [(o[:, :n1], o[:, n1:])]
    for _ in range(n1 + n2 + 1):
        rows += [r1.row_join(r2) for r1, r2 in level]
        level = [(r1 * A, r2 * C) for r1, r2 in level for A, C in mats]
    obs = sympy.Matrix.vstack(*rows) if rows else sympy.zeros(0, n1 + n2)
    null = obs.nullspace() if n1 + n2 else []
    if not null:
        return SubspaceRelation(n1, n2, (), QQ)
    basis = sympy.Matrix.hstack(*null).T.rref()[0]
    out = []
    for i in range(basis.rows):
        row = tuple(Fraction(int(v.p), int(v.q)) for v in basis.row(i))
        if any(row):
            out.append(row)
    return SubspaceRelation(n1, n2, tuple(out), QQ)


# ------------------------------------------------------------------- suite

def run_suite(family: InstanceFamily, logics: list[str] | None = None) -> dict:
    """Compare engines with oracles on every instance of ``family``."""
    from .engine import greatest_rho_bisim
    from .linear import greatest_linear_bisim, observability_kernel
    from .logics import get_logic

    if logics is None:
        logics = ["linear-hm"] if family.kind == "wa" else (["kripke"] if family.kind == "kripke" else ["trace", "hm", "pml"])
    mismatches = []
    checked = 0
    for k, (m1, m2) in enumerate(family):
        for name in logics:
            logic = get_logic(name)
            checked += 1
            if family.kind == "wa":
                g = greatest_linear_bisim(logic, m1, m2)
                ok = g == observability_kernel(m1, m2) == oracle_linear_gfp(m1, m2)
                got = g.to_json()
            else:
                g = greatest_rho_bisim(logic, m1, m2)[0]
                ok = g == oracle_greatest_bisim(logic, m1, m2)
                got = g.to_json()
            if not ok:
                mismatches.append({"instance": k, "logic": name, "engine": got})
    return {"family": family.to_json(), "checked": checked, "mismatches": mismatches, "ok": not mismatches}

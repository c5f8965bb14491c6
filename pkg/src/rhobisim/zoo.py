"""Classical equivalences for Set systems, and logic translations.

None of these go through coherent pairs: they work directly on successor
sets, so they can be played against the rho-bisimulation engine.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .engine import RhoChecker, greatest_rho_bisim
from .formulas import Dia, Formula, Top
from .logics import Logic, LogicError, diamond_only, get_logic, theory_kernel
from .models import SetSystem, bits
from .relations import Relation


def _same_alphabet(m1: SetSystem, m2: SetSystem):
    if m1.labels != m2.labels:
        raise LogicError(f"label mismatch: {list(m1.labels)} vs {list(m2.labels)}")
    if m1.props != m2.props:
        raise LogicError(f"prop mismatch: {list(m1.props)} vs {list(m2.props)}")


def _shape(m1, m2, B: Relation):
    if (B.n1, B.n2) != (m1.n, m2.n):
        raise ValueError(f"relation of shape {B.n1}x{B.n2} for systems with {m1.n} and {m2.n} states")


# ----------------------------------------------------------- T-bisimulation

def _back_and_forth(m1, m2, B: Relation, x1: int, x2: int) -> bool:
    if m1.val[x1] != m2.val[x2]:
        return False
    for s1, s2 in zip(m1.succ[x1], m2.succ[x2]):
        for y1 in bits(s1):
            if B.row(y1) & s2 == 0:
                return False
        for y2 in bits(s2):
            if B.col(y2) & s1 == 0:
                return False
    return True


def check_T_bisim(m1: SetSystem, m2: SetSystem, B: Relation) -> bool:
    """Back-and-forth condition on every related pair, valuations equal."""
    _same_alphabet(m1, m2)
    _shape(m1, m2, B)
    return all(_back_and_forth(m1, m2, B, x1, x2) for x1, x2 in B.pairs())


def greatest_T_bisim(m1: SetSystem, m2: SetSystem) -> Relation:
    """Drop violating pairs from the total relation until none is left."""
    _same_alphabet(m1, m2)
    B = Relation.total(m1.n, m2.n)
    while True:
        keep = [p for p in B.pairs() if _back_and_forth(m1, m2, B, *p)]
        nxt = Relation.from_pairs(m1.n, m2.n, keep)
        if nxt == B:
            return B
        B = nxt


# ------------------------------------------------------------------ pushout

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller root so class ids follow state order
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class Pushout:
    """Quotient of X1 + X2 by the equivalence generated by B (X2 shifted by n1)."""

    n1: int
    n2: int
    classes: tuple[tuple[int, ...], ...]
    maps: tuple[int, ...]  # element of X1 + X2 -> class id

    def left(self, x1: int) -> int:
        return self.maps[x1]

    def right(self, x2: int) -> int:
        return self.maps[self.n1 + x2]


def pushout(B: Relation) -> Pushout:
    uf = _UnionFind(B.n1 + B.n2)
    for i, j in B.pairs():
        uf.union(i, B.n1 + j)
    ids: dict[int, int] = {}
    maps = tuple(ids.setdefault(uf.find(x), len(ids)) for x in range(B.n1 + B.n2))
    classes = [[] for _ in ids]
    for x, c in enumerate(maps):
        classes[c].append(x)
    return Pushout(B.n1, B.n2, tuple(tuple(c) for c in classes), maps)


def _quotient_behaviour(q: Pushout, succ: tuple, val: int, offset: int):
    return tuple(frozenset(q.maps[offset + y] for y in bits(s)) for s in succ), val


def _class_signatures(m1, m2, q: Pushout) -> list:
    sig = [_quotient_behaviour(q, m1.succ[x], m1.val[x], 0) for x in range(m1.n)]
    sig += [_quotient_behaviour(q, m2.succ[x], m2.val[x], m1.n) for x in range(m2.n)]
    return sig


def check_precocongruence(m1: SetSystem, m2: SetSystem, B: Relation) -> bool:
    """Every class of the pushout has a single q-image behaviour."""
    _same_alphabet(m1, m2)
    _shape(m1, m2, B)
    q = pushout(B)
    sig = _class_signatures(m1, m2, q)
    return all(len({sig[x] for x in cls}) == 1 for cls in q.classes)


def greatest_precocongruence(m1: SetSystem, m2: SetSystem) -> Relation:
    """Largest precocongruence between m1 and m2.

    Iterates B -> {(x1, x2) in B : same q_B-image behaviour}.  A
    precocongruence C inside B has a finer pushout than B, so its pairs
    survive each round; the fixpoint is itself a precocongruence.
    """
    _same_alphabet(m1, m2)
    B = Relation.total(m1.n, m2.n)
    while True:
        sig = _class_signatures(m1, m2, pushout(B))
        nxt = Relation.from_pairs(m1.n, m2.n, [(i, j) for i, j in B.pairs() if sig[i] == sig[m1.n + j]])
        if nxt == B:
            return B
        B = nxt


# ---------------------------------------------------- behavioural equivalence

def behavioural_equivalence(m1: SetSystem, m2: SetSystem) -> Relation:
    """Bisimilarity on m1 + m2 by splitter-based partition refinement.

    Blocks are split with respect to (label, splitter block) until no block
    can be split; the initial partition groups states by valuation.
    """
    _same_alphabet(m1, m2)
    n1 = m1.n
    succ = [m1.succ[x] for x in range(n1)] + [tuple(s << n1 for s in m2.succ[x]) for x in range(m2.n)]
    val = list(m1.val) + list(m2.val)
    n = len(succ)
    groups: dict[int, int] = {}
    for x in range(n):
        groups[val[x]] = groups.get(val[x], 0) | 1 << x
    blocks = [groups[v] for v in sorted(groups, key=lambda v: groups[v] & -groups[v])]
    pending = list(blocks)
    while pending:
        splitter = pending.pop()
        if splitter not in blocks:
            continue
        for a in range(len(m1.labels)):
            pre = 0
            for x in range(n):
                if succ[x][a] & splitter:
                    pre |= 1 << x
            nxt = []
            for blk in blocks:
                inside, outside = blk & pre, blk & ~pre
                if inside and outside:
                    nxt += [inside, outside]
                    pending += [inside, outside]
                else:
                    nxt.append(blk)
            blocks = nxt
    cls = [0] * n
    for k, blk in enumerate(blocks):
        for x in bits(blk):
            cls[x] = k
    return Relation.from_pairs(n1, m2.n, ((i, j) for i in range(n1) for j in range(m2.n) if cls[i] == cls[n1 + j]))


# ------------------------------------------------------------- translations

def translate_formula(phi: Formula) -> Formula:
    """Embed a trace formula <a1>...<ak>T into Hennessy-Milner syntax."""
    if isinstance(phi, Top):
        return Top()
    if isinstance(phi, Dia):
        return Dia(phi.label, translate_formula(phi.arg))
    raise LogicError(f"not a trace formula: {phi}")


def _relations(n1: int, n2: int, exhaustive_limit: int, samples: int, seed: int):
    if n1 * n2 <= exhaustive_limit:
        return (Relation(n1, n2, b) for b in range(1 << (n1 * n2))), True
    rng = random.Random(seed)
    return (Relation(n1, n2, rng.getrandbits(n1 * n2)) for _ in range(samples)), False


def check_translation_invariance(
    m1: SetSystem, m2: SetSystem, pair: tuple[str, str] = ("trace", "hm"),
    exhaustive_limit: int = 12, samples: int = 2000, seed: int = 0,
) -> dict:
    """Compare the sets of passing relations of two logics.

    ``pair`` names two catalogue logics; a name ending in ``-dia`` is the
    diamond-only signature of the named logic (e.g. ``("pml", "pml-dia")``).
    """
    def resolve(name: str) -> Logic:
        if name.endswith("-dia"):
            return diamond_only(get_logic(name[:-4]))
        return get_logic(name)

    c1 = RhoChecker(resolve(pair[0]), m1, m2)
    c2 = RhoChecker(resolve(pair[1]), m1, m2)
    rels, exhaustive = _relations(m1.n, m2.n, exhaustive_limit, samples, seed)
    checked = 0
    diffs = []
    for B in rels:
        checked += 1
        v1, v2 = c1.check(B).verdict, c2.check(B).verdict
        if v1 != v2:
            diffs.append({"relation": B.to_json(), pair[0]: v1, pair[1]: v2})
    return {
        "logics": list(pair),
        "verdict": "equal" if not diffs else "different",
        "exhaustive": exhaustive,
        "checked": checked,
        "discrepancies": diffs,
    }


def _separating_formula(m1, m2, i: int, j: int):
    from .logics import definable_predicates

    for (e1, e2), f in definable_predicates(get_logic("hm"), [m1, m2]):
        if (e1 >> i & 1) != (e2 >> j & 1):
            return str(f)
    return None


def hennessy_milner_check(logic: Logic, m1, m2) -> dict:
    """Compare logical equivalence with rho-bisimilarity.

    For hm/kripke the two must coincide; for the linear logics the
    observability kernel must equal the greatest linear bisimulation; for
    trace logic the report lists pairs that are logically equivalent without
    being rho-bisimilar.
    """
    if logic.domain == "linear":
        from .linear import greatest_linear_bisim, observability_kernel

        k = observability_kernel(m1, m2)
        g = greatest_linear_bisim(logic, m1, m2)
        return {"logic": logic.name, "kernel": k.to_json(), "gfp": g.to_json(), "coincide": k == g}
    k = theory_kernel(logic, m1, m2)
    g, _ = greatest_rho_bisim(logic, m1, m2)
    extra = sorted(set(k.pairs()) - set(g.pairs()))
    out = {"logic": logic.name, "kernel": k.to_json(), "gfp": g.to_json(), "coincide": k == g}
    if extra:
        out["separating_pairs"] = [list(p) for p in extra]
        if logic.name == "trace":
            # the pairs are told apart by a boolean combination that trace logic lacks
            out["hm_witness"] = {f"{i},{j}": _separating_formula(m1, m2, i, j) for i, j in extra}
    return out


# --------------------------------------------------------------- comparison

def _compare(r: Relation, s: Relation) -> str:
    if r == s:
        return "="
    if r <= s:
        return "<"
    if s <= r:
        return ">"
    return "|"


def comparison_table(logic: Logic, m1: SetSystem, m2: SetSystem) -> dict:
    """The five relations and their pairwise inclusions.

    Entries read row-versus-column: ``<`` strict inclusion, ``>`` strict
    containment, ``=`` equal, ``|`` incomparable.
    """
    rels = {
        "T-bisimulation": greatest_T_bisim(m1, m2),
        "precocongruence": greatest_precocongruence(m1, m2),
        "behavioural": behavioural_equivalence(m1, m2),
        "theory-kernel": theory_kernel(logic, m1, m2),
        "rho-bisimilarity": greatest_rho_bisim(logic, m1, m2)[0],
    }
    names = list(rels)
    table = {a: {b: _compare(rels[a], rels[b]) for b in names} for a in names}
    return {"logic": logic.name, "relations": {k: v.to_json() for k, v in rels.items()}, "table": table}

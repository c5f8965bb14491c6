"""Modal signatures given by predicate liftings, their one-step semantics on
concrete system types, formula evaluation through the complex algebra, formula
enumeration and exact logical-equivalence kernels.

A logic lists lifting *families*; a family is instantiated once per label
(diamonds, boxes), once per atomic proposition, or once overall (top, the
linear termination predicate).  ``Logic.liftings(labels, props)`` performs the
instantiation against a concrete alphabet.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from . import linalg
from .formulas import (
    Add, And, Atom, Box, Bot, Dia, Formula, Not, Or, Scale, Top, Zero, conj, disj, word,
)
from .models import SetSystem, WeightedAutomaton, bits
from .relations import Relation

SET_BASE = "set-base"
BOOLEAN_BASE = "boolean-base"
LATTICE_BASE = "lattice-base"
LINEAR_BASE = "linear-base"

_CONNECTIVES = {
    SET_BASE: frozenset(),
    BOOLEAN_BASE: frozenset({Top, Bot, Not, And, Or}),
    LATTICE_BASE: frozenset({Top, Bot, And, Or}),
    LINEAR_BASE: frozenset({Zero, Scale, Add}),
}


class LogicError(ValueError):
    pass


class AlphabetMismatch(LogicError):
    pass


@dataclass(frozen=True)
class LiftingFamily:
    kind: str  # top | dia | box | prop | lin_p | lin_dia
    arity: int
    indexed_by: str | None = None  # "label", "prop" or None
    join_preserving: bool = False


@dataclass(frozen=True)
class Lifting:
    """One instantiated predicate lifting."""

    kind: str
    name: str
    arity: int
    index: int = 0
    join_preserving: bool = False

    def holds(self, behaviour, args: Sequence[int]) -> bool:
        """Set-based one-step semantics: is gamma(x) in lambda(args)?"""
        succ, val = behaviour
        if self.kind == "top":
            return True
        if self.kind == "prop":
            return bool(val >> self.index & 1)
        if self.kind == "dia":
            return succ[self.index] & args[0] != 0
        if self.kind == "box":
            return succ[self.index] & ~args[0] == 0
        raise LogicError(f"lifting {self.name} is not set-based")

    def value(self, aut: WeightedAutomaton, x: Sequence, args: Sequence):
        """Linear one-step semantics: the scalar lambda(args)(gamma(x))."""
        f = aut.field
        if self.kind == "lin_p":
            return linalg.dot(aut.output, x, f)
        if self.kind == "lin_dia":
            return linalg.dot(args[0], linalg.matvec(aut.trans[self.index], x, f), f)
        raise LogicError(f"lifting {self.name} is not linear")


TOP = LiftingFamily("top", 0)
DIA = LiftingFamily("dia", 1, "label", join_preserving=True)
BOX = LiftingFamily("box", 1, "label")
PROP = LiftingFamily("prop", 0, "prop")
LIN_P = LiftingFamily("lin_p", 0)
LIN_DIA = LiftingFamily("lin_dia", 1, "label", join_preserving=True)


@dataclass(frozen=True)
class Logic:
    name: str
    base: str
    families: tuple[LiftingFamily, ...]
    domain: str = "set"  # "set" or "linear"
    kernel: str | None = None  # procedure used by theory_kernel

    @property
    def connectives(self) -> frozenset:
        return _CONNECTIVES[self.base]

    @property
    def join_preserving(self) -> bool:
        """All unary liftings preserve joins, so coherent generators suffice."""
        return all(f.arity == 0 or f.join_preserving for f in self.families)

    @property
    def uses_props(self) -> bool:
        return any(f.indexed_by == "prop" for f in self.families)

    def liftings(self, labels: Sequence[str], props: Sequence[str] = ()) -> tuple[Lifting, ...]:
        out = []
        for fam in self.families:
            if fam.indexed_by == "label":
                for i, a in enumerate(labels):
                    nm = f"<{a}>" if fam.kind in ("dia", "lin_dia") else f"[{a}]"
                    out.append(Lifting(fam.kind, nm, fam.arity, i, fam.join_preserving))
            elif fam.indexed_by == "prop":
                for i, p in enumerate(props):
                    out.append(Lifting(fam.kind, p, 0, i))
            else:
                out.append(Lifting(fam.kind, "p" if fam.kind == "lin_p" else "T", fam.arity, 0))
        names = [lf.name for lf in out]
        if len(set(names)) != len(names):
            raise LogicError(f"lifting names clash in {self.name}: {names}")
        return tuple(out)

    def liftings_for(self, m1, m2=None) -> tuple[Lifting, ...]:
        check_domain(self, m1)
        labels, props = m1.alphabet()
        if m2 is not None:
            check_domain(self, m2)
            if m2.labels != labels:
                raise AlphabetMismatch(f"label mismatch: {list(labels)} vs {list(m2.labels)}")
            if self.uses_props and m2.alphabet()[1] != props:
                raise AlphabetMismatch(f"prop mismatch: {list(props)} vs {list(m2.alphabet()[1])}")
        return self.liftings(labels, props if self.uses_props else ())

    def lifting(self, name: str, m) -> Lifting:
        lifts = self.liftings_for(m)
        for lf in lifts:
            if lf.name == name:
                return lf
        # unlabelled aliases when there is a single label
        if name in ("dia", "box", "<>", "[]") and len(m.labels) == 1:
            kind = {"dia": "<", "<>": "<", "box": "[", "[]": "["}[name]
            for lf in lifts:
                if lf.name.startswith(kind):
                    return lf
        raise LogicError(f"unknown lifting {name!r} for logic {self.name}")


def _catalogue() -> dict[str, Logic]:
    return {
        "trace": Logic("trace", SET_BASE, (TOP, DIA), kernel="trace"),
        "hm": Logic("hm", BOOLEAN_BASE, (TOP, DIA), kernel="bisim"),
        "pml": Logic("pml", LATTICE_BASE, (BOX, DIA), kernel="positive"),
        "kripke": Logic("kripke", BOOLEAN_BASE, (DIA, PROP), kernel="bisim"),
        "linear-trace": Logic("linear-trace", SET_BASE, (LIN_P, LIN_DIA), "linear", kernel="linear"),
        "linear-hm": Logic("linear-hm", LINEAR_BASE, (LIN_P, LIN_DIA), "linear", kernel="linear"),
    }


def builtin_logics() -> list[Logic]:
    return list(_catalogue().values())


def get_logic(name: str) -> Logic:
    cat = _catalogue()
    if name not in cat:
        raise LogicError(f"unknown logic {name!r}; choose from {sorted(cat)}")
    return cat[name]


def modal_reduct(logic: Logic) -> Logic:
    """Same liftings, no propositional connectives."""
    return Logic(f"{logic.name}-reduct", SET_BASE, logic.families, logic.domain, kernel=None)


def diamond_only(logic: Logic) -> Logic:
    """Keep only the diamond families (and nullaries) of a Set logic."""
    fams = tuple(f for f in logic.families if f.kind != "box")
    return Logic(f"{logic.name}-dia", logic.base, fams, logic.domain, kernel=None)


def check_domain(logic: Logic, m) -> None:
    if logic.domain == "linear" and not isinstance(m, WeightedAutomaton):
        raise LogicError(f"logic {logic.name} needs a weighted automaton, got {type(m).__name__}")
    if logic.domain == "set" and not isinstance(m, SetSystem):
        raise LogicError(f"logic {logic.name} needs an LTS or Kripke model, got {type(m).__name__}")


# ------------------------------------------------------------ evaluation

def eval_lifting(logic: Logic, lifting: str, m, x, args: Sequence = ()):
    """lambda_X(args) at gamma(x): a bool for Set logics, a scalar for linear ones."""
    lf = logic.lifting(lifting, m)
    if len(args) != lf.arity:
        raise LogicError(f"lifting {lf.name} has arity {lf.arity}, got {len(args)} arguments")
    if logic.domain == "linear":
        f = m.field
        vec = tuple(f.coerce(v) for v in x)
        if len(vec) != m.dim:
            raise LogicError(f"state vector of length {len(vec)}, automaton dimension {m.dim}")
        rows = [tuple(f.coerce(v) for v in a) for a in args]
        if any(len(r) != m.dim for r in rows):
            raise LogicError("predicate length does not match the automaton dimension")
        return lf.value(m, vec, rows)
    for a in args:
        if a >> m.n:
            raise LogicError("predicate mentions states outside the model")
    return lf.holds(m.behaviour(m.state_index(x)), args)


def _resolve_label(m, label: str | None) -> int:
    if label is None:
        if len(m.labels) != 1:
            raise LogicError("unlabelled modality needs a model with exactly one label")
        return 0
    if label not in m.labels:
        raise LogicError(f"unknown label {label!r}")
    return m.labels.index(label)


def validate_formula(logic: Logic, phi: Formula) -> None:
    kinds = {f.kind for f in logic.families}
    allowed = set(logic.connectives)
    if "top" in kinds:
        allowed.add(Top)
    if kinds & {"dia", "lin_dia"}:
        allowed.add(Dia)
    if "box" in kinds:
        allowed.add(Box)
    if kinds & {"prop", "lin_p"}:
        allowed.add(Atom)
    stack = [phi]
    while stack:
        f = stack.pop()
        if type(f) not in allowed:
            raise LogicError(f"{type(f).__name__} is not part of logic {logic.name}")
        if isinstance(f, Atom) and logic.domain == "linear" and f.name != "p":
            raise LogicError(f"linear logics only know the predicate p, got {f.name!r}")
        stack.extend(f.children())


def eval_formula(logic: Logic, m, phi: Formula):
    """Extension of phi: a state bitmask (Set logics) or a row functional (linear)."""
    check_domain(logic, m)
    validate_formula(logic, phi)
    if logic.domain == "linear":
        return _eval_linear(m, phi)
    lifts = {(lf.kind, lf.index): lf for lf in logic.liftings(m.labels, m.props if logic.uses_props else ())}
    full = (1 << m.n) - 1
    memo: dict[Formula, int] = {}

    def ev(f: Formula) -> int:
        if f in memo:
            return memo[f]
        if isinstance(f, Top):
            r = full
        elif isinstance(f, Bot):
            r = 0
        elif isinstance(f, Not):
            r = full & ~ev(f.arg)
        elif isinstance(f, And):
            r = ev(f.left) & ev(f.right)
        elif isinstance(f, Or):
            r = ev(f.left) | ev(f.right)
        elif isinstance(f, Atom):
            if f.name not in m.props:
                raise LogicError(f"unknown proposition {f.name!r}")
            lf = lifts[("prop", m.props.index(f.name))]
            r = sum(1 << x for x in range(m.n) if lf.holds(m.behaviour(x), ()))
        elif isinstance(f, (Dia, Box)):
            lf = lifts[("dia" if isinstance(f, Dia) else "box", _resolve_label(m, f.label))]
            arg = ev(f.arg)
            # complex algebra: preimage under gamma of the lifted predicate
            r = sum(1 << x for x in range(m.n) if lf.holds(m.behaviour(x), (arg,)))
        else:
            raise LogicError(f"cannot evaluate {type(f).__name__} in {logic.name}")
        memo[f] = r
        return r

    return ev(phi)


def _eval_linear(m: WeightedAutomaton, phi: Formula) -> tuple:
    f = m.field
    n = m.dim
    if isinstance(phi, Zero):
        return (f.zero,) * n
    if isinstance(phi, Atom):
        return tuple(m.output)
    if isinstance(phi, Scale):
        r = f.coerce(phi.coeff)
        return tuple(r * v for v in _eval_linear(m, phi.arg))
    if isinstance(phi, Add):
        return tuple(a + b for a, b in zip(_eval_linear(m, phi.left), _eval_linear(m, phi.right)))
    if isinstance(phi, Dia):
        # x |-> [[phi]](M_a x), i.e. the row [[phi]] . M_a
        return linalg.vecmat(_eval_linear(m, phi.arg), m.trans[_resolve_label(m, phi.label)], n, f)
    raise LogicError(f"cannot evaluate {type(phi).__name__} linearly")


# ------------------------------------------------------------ enumeration

def _truth_table_formula(table: int, gens: list[Formula], monotone: bool) -> Formula:
    """Canonical normal form of a boolean function given by its truth table.

    Bit ``v`` of ``table`` is the value at the assignment whose bit ``i`` is
    generator ``i``.  Only essential generators appear; boolean functions come
    out as DNF over minterms, monotone ones as a join of meets of their minimal
    true points.
    """
    k = len(gens)
    full = (1 << (1 << k)) - 1
    if table == 0:
        return Bot()
    if table == full:
        return Top()
    essential = [
        i for i in range(k)
        if any((table >> v & 1) != (table >> (v ^ (1 << i)) & 1) for v in range(1 << k))
    ]
    if monotone:
        trues = [v for v in range(1 << k) if table >> v & 1]
        minimal = [v for v in trues if not any(u != v and u & v == u for u in trues)]
        return disj([conj([gens[i] for i in essential if v >> i & 1]) for v in minimal])
    terms = []
    for v in range(1 << k):
        if not table >> v & 1:
            continue
        # only emit each minterm over the essential variables once
        if any(v >> i & 1 for i in range(k) if i not in essential):
            continue
        terms.append(conj([gens[i] if v >> i & 1 else Not(gens[i]) for i in essential]))
    return disj(terms)


def _is_monotone(table: int, k: int) -> bool:
    for v in range(1 << k):
        if table >> v & 1:
            for i in range(k):
                if not table >> (v | 1 << i) & 1:
                    return False
    return True


def _functions(gens: list[Formula], monotone: bool) -> Iterator[Formula]:
    k = len(gens)
    seen = set()
    for table in range(1 << (1 << k)):
        if monotone and not _is_monotone(table, k):
            continue
        f = _truth_table_formula(table, gens, monotone)
        if f not in seen:
            seen.add(f)
            yield f


def enumerate_formulas(
    logic: Logic,
    depth: int,
    labels: Sequence[str],
    props: Sequence[str] = (),
    models: Sequence | None = None,
) -> Iterator[Formula]:
    """All formulas of modal depth <= ``depth``, normalised.

    Without ``models`` the propositional layer is deduplicated by truth tables
    over the modal generators (boolean functions for the boolean base, monotone
    ones for the lattice base); the stream grows doubly exponentially with the
    depth, so callers bound it.  With ``models`` one representative per
    distinct extension on the given models is produced, which is finite at any
    depth and has the same logical-equivalence kernel.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if models is not None:
        yield from _semantic_formulas(logic, depth, list(models))
        return
    labels = list(labels)
    if logic.base in (SET_BASE, LINEAR_BASE):
        tail = Atom("p") if logic.domain == "linear" else Top()
        for k in range(depth + 1):
            for w in product(labels, repeat=k):
                yield word(w, tail)
        return
    monotone = logic.base == LATTICE_BASE
    kinds = [f.kind for f in logic.families]
    base_gens = [Atom(p) for p in props] if "prop" in kinds else []
    emitted: set = set()
    prev: list[Formula] = []
    for d in range(depth + 1):
        gens = list(base_gens)
        for phi in prev:
            for a in labels:
                if "box" in kinds and not isinstance(phi, Top):
                    gens.append(Box(a, phi))  # [a]T = T
                if "dia" in kinds and not isinstance(phi, Bot):
                    gens.append(Dia(a, phi))  # <a>F = F
        layer = []
        for f in _functions(gens, monotone):
            layer.append(f)
            if f not in emitted:
                emitted.add(f)
                yield f
        prev = layer


def _semantic_formulas(logic: Logic, depth: int, models: list) -> Iterator[Formula]:
    """Representatives of the definable predicates on the disjoint union of ``models``."""
    reps = definable_predicates(logic, models, depth)
    for _, f in reps:
        yield f


def definable_predicates(logic: Logic, models: list, depth: int | None = None) -> list[tuple[tuple, Formula]]:
    """(extension tuple, representative formula) for every predicate definable
    up to ``depth`` (to saturation when ``depth`` is None), on each of ``models``.

    Extensions are tuples with one entry per model (a state mask, or a row
    functional for linear logics).  For linear logics only the word observables
    spanning the definable space are listed.
    """
    for m in models:
        check_domain(logic, m)
    if logic.domain == "linear":
        return _definable_linear(logic, models, depth)
    labels = models[0].labels
    props = models[0].props
    for m in models[1:]:
        if m.labels != labels or (logic.uses_props and m.props != props):
            raise AlphabetMismatch("models must share labels and props")
    kinds = {f.kind for f in logic.families}
    fulls = tuple((1 << m.n) - 1 for m in models)
    lifted = {}
    for m in models:
        lifted[id(m)] = {(lf.kind, lf.index): lf for lf in logic.liftings(labels, props if logic.uses_props else ())}

    def apply(kind: str, idx: int, ext: tuple) -> tuple:
        return tuple(
            sum(1 << x for x in range(m.n) if lifted[id(m)][(kind, idx)].holds(m.behaviour(x), (e,)))
            for m, e in zip(models, ext)
        )

    known: dict[tuple, Formula] = {}
    order: list[tuple] = []

    def add(ext, f) -> bool:
        if ext in known:
            return False
        known[ext] = f
        order.append(ext)
        return True

    base: list[tuple[tuple, Formula]] = []
    if "top" in kinds or logic.base != SET_BASE:
        base.append((fulls, Top()))
    if logic.base in (BOOLEAN_BASE, LATTICE_BASE):
        base.append((tuple(0 for _ in models), Bot()))
    if "prop" in kinds:
        for i, p in enumerate(props):
            base.append((tuple(sum(1 << x for x in range(m.n) if m.val[x] >> i & 1) for m in models), Atom(p)))
    for ext, f in base:
        add(ext, f)
    _close(logic, known, order, fulls)
    d = 0
    while depth is None or d < depth:
        before = len(order)
        frontier = list(order)
        for ext in frontier:
            f = known[ext]
            for ai, a in enumerate(labels):
                if "dia" in kinds:
                    add(apply("dia", ai, ext), Dia(a, f))
                if "box" in kinds:
                    add(apply("box", ai, ext), Box(a, f))
        _close(logic, known, order, fulls)
        d += 1
        if len(order) == before:
            break
    return [(ext, known[ext]) for ext in order]


def _close(logic: Logic, known: dict, order: list, fulls: tuple) -> None:
    """Close the known extensions under the base connectives."""
    if logic.base == SET_BASE:
        return
    changed = True
    while changed:
        changed = False
        current = list(order)
        if logic.base == BOOLEAN_BASE:
            for e in current:
                c = tuple(fu & ~x for fu, x in zip(fulls, e))
                if c not in known:
                    known[c] = Not(known[e])
                    order.append(c)
                    changed = True
        current = list(order)
        for i, e1 in enumerate(current):
            for e2 in current[i + 1:]:
                for ext, f in (
                    (tuple(x & y for x, y in zip(e1, e2)), And(known[e1], known[e2])),
                    (tuple(x | y for x, y in zip(e1, e2)), Or(known[e1], known[e2])),
                ):
                    if ext not in known:
                        known[ext] = f
                        order.append(ext)
                        changed = True


def _definable_linear(logic: Logic, models: list, depth: int | None):
    labels = models[0].labels
    for m in models[1:]:
        if m.labels != labels:
            raise AlphabetMismatch("models must share labels")
    fld = models[0].field
    total = sum(m.dim for m in models)
    limit = total if depth is None else depth
    out = []
    basis: list = []
    frontier = [((), tuple(tuple(m.output) for m in models))]
    for k in range(limit + 1):
        nxt = []
        for w, ext in frontier:
            flat = tuple(v for e in ext for v in e)
            if linalg.rank(basis + [flat], total, fld) == len(basis):
                continue
            basis.append(flat)
            out.append((ext, word(reversed(w), Atom("p"))))
            for ai, a in enumerate(labels):
                nxt.append(((*w, a), tuple(linalg.vecmat(e, m.trans[ai], m.dim, fld) for e, m in zip(ext, models))))
        frontier = nxt
        if not frontier:
            break
    return out


# ------------------------------------------------------------ theory kernels

def theory_kernel(logic: Logic, m1, m2):
    """Logical equivalence between the states of m1 and m2.

    Returns a :class:`Relation` for Set logics and a
    :class:`~rhobisim.linear.SubspaceRelation` for linear ones.
    """
    logic.liftings_for(m1, m2)
    if logic.kernel == "linear":
        from .linear import observability_kernel

        return observability_kernel(m1, m2)
    if logic.kernel == "trace":
        return _trace_kernel(m1, m2)
    if logic.kernel == "bisim":
        return _bisim_kernel(m1, m2, use_props=logic.uses_props)
    if logic.kernel == "positive":
        return _positive_kernel(m1, m2)
    return definable_kernel(logic, m1, m2)


def definable_kernel(logic: Logic, m1, m2) -> Relation:
    """Kernel of all definable predicates, by saturating the definable set."""
    reps = definable_predicates(logic, [m1, m2])
    pairs = []
    for x1 in range(m1.n):
        for x2 in range(m2.n):
            if all((e1 >> x1 & 1) == (e2 >> x2 & 1) for (e1, e2), _ in reps):
                pairs.append((x1, x2))
    return Relation.from_pairs(m1.n, m2.n, pairs)


def _union_succ(m1, m2):
    """Successor masks on the disjoint union (m2's states shifted by m1.n)."""
    n1 = m1.n
    succ = [tuple(m1.succ[x]) for x in range(n1)]
    succ += [tuple(s << n1 for s in m2.succ[x]) for x in range(m2.n)]
    return succ


def _restrict(classes: list, n1: int, n2: int) -> Relation:
    return Relation.from_pairs(n1, n2, ((i, j) for i in range(n1) for j in range(n2) if classes[i] == classes[n1 + j]))


def _trace_kernel(m1, m2) -> Relation:
    """Trace-language equivalence via the subset construction on m1 + m2."""
    succ = _union_succ(m1, m2)
    nl = len(m1.labels)
    n = len(succ)

    def step(S: int, a: int) -> int:
        out = 0
        for x in bits(S):
            out |= succ[x][a]
        return out

    start = [1 << x for x in range(n)]
    delta: dict[int, tuple[int, ...]] = {}
    todo = list(start)
    while todo:
        S = todo.pop()
        if S in delta:
            continue
        delta[S] = tuple(step(S, a) for a in range(nl))
        todo.extend(T for T in delta[S] if T not in delta)
    cls = {S: int(S != 0) for S in delta}
    while True:
        sig = {S: (cls[S], tuple(cls[T] for T in delta[S])) for S in delta}
        ids: dict = {}
        new = {S: ids.setdefault(sig[S], len(ids)) for S in sorted(delta)}
        if len(ids) == len(set(cls.values())):
            break
        cls = new
    return _restrict([cls[S] for S in start], m1.n, m2.n)


def _bisim_kernel(m1, m2, use_props: bool) -> Relation:
    """Moore-style signature refinement on m1 + m2 (bisimilarity)."""
    succ = _union_succ(m1, m2)
    val = list(m1.val) + list(m2.val) if use_props else [0] * len(succ)
    cls = list(val)
    while True:
        sig = [(cls[x], tuple(frozenset(cls[y] for y in bits(s)) for s in succ[x])) for x in range(len(succ))]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == len(set(cls)):
            return _restrict(new, m1.n, m2.n)
        cls = new


def _positive_kernel(m1, m2) -> Relation:
    """Positive modal equivalence: mutual inclusion under the greatest directed
    simulation (forth along diamonds, back along boxes) on m1 + m2."""
    succ = _union_succ(m1, m2)
    n = len(succ)
    nl = len(m1.labels)
    Z = [[True] * n for _ in range(n)]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(n):
                if not Z[x][y]:
                    continue
                ok = True
                for a in range(nl):
                    sx, sy = bits(succ[x][a]), bits(succ[y][a])
                    if any(not any(Z[u][v] for v in sy) for u in sx) or any(
                        not any(Z[u][v] for u in sx) for v in sy
                    ):
                        ok = False
                        break
                if not ok:
                    Z[x][y] = False
                    changed = True
    n1 = m1.n
    return Relation.from_pairs(
        n1, m2.n, ((i, j) for i in range(n1) for j in range(m2.n) if Z[i][n1 + j] and Z[n1 + j][i])
    )


def formula_kernel(logic: Logic, m1, m2, formulas) -> Relation:
    """Pairs agreeing on every formula of ``formulas``, evaluated model by model."""
    exts = [(eval_formula(logic, m1, f), eval_formula(logic, m2, f)) for f in formulas]
    return Relation.from_pairs(
        m1.n, m2.n,
        ((i, j) for i in range(m1.n) for j in range(m2.n) if all((e1 >> i & 1) == (e2 >> j & 1) for e1, e2 in exts)),
    )


"""The vector-space instance: relations are subspaces of X1 + X2.

Everything is kept as canonical RREF row bases, so subspace equality is
tuple equality.  A vector of X1 + X2 is written ``(x1 | x2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .engine import BisimReport
from .fields import QQ, Field
from .logics import Logic
from .models import WeightedAutomaton


@dataclass(frozen=True)
class SubspaceRelation:
    n1: int
    n2: int
    basis: tuple  # RREF rows of length n1 + n2
    field: Field = QQ

    @classmethod
    def span(cls, n1: int, n2: int, rows: Sequence[Sequence], field: Field = QQ) -> "SubspaceRelation":
        return cls(n1, n2, linalg.span(rows, n1 + n2, field), field)

    @classmethod
    def zero(cls, n1: int, n2: int, field: Field = QQ) -> "SubspaceRelation":
        return cls(n1, n2, (), field)

    @classmethod
    def full(cls, n1: int, n2: int, field: Field = QQ) -> "SubspaceRelation":
        return cls(n1, n2, linalg.identity(n1 + n2, field), field)

    @classmethod
    def diagonal(cls, n: int, field: Field = QQ) -> "SubspaceRelation":
        z, one = field.zero, field.one
        rows = [tuple(one if k in (i, n + i) else z for k in range(2 * n)) for i in range(n)]
        return cls.span(n, n, rows, field)

    @property
    def ncols(self) -> int:
        return self.n1 + self.n2

    @property
    def rank(self) -> int:
        return len(self.basis)

    def split(self, v: Sequence) -> tuple[tuple, tuple]:
        return tuple(v[: self.n1]), tuple(v[self.n1:])

    def contains(self, x1: Sequence, x2: Sequence) -> bool:
        v = [self.field.coerce(t) for t in (*x1, *x2)]
        return linalg.contains(self.basis, v, self.ncols, self.field)

    def _same(self, other: "SubspaceRelation"):
        if (self.n1, self.n2) != (other.n1, other.n2) or self.field != other.field:
            raise ValueError(f"subspaces of {self.n1}+{self.n2} and {other.n1}+{other.n2} do not match")

    def __or__(self, other: "SubspaceRelation") -> "SubspaceRelation":
        self._same(other)
        return SubspaceRelation(self.n1, self.n2, linalg.subspace_sum(self.basis, other.basis, self.ncols, self.field), self.field)

    def __and__(self, other: "SubspaceRelation") -> "SubspaceRelation":
        self._same(other)
        return SubspaceRelation(self.n1, self.n2, linalg.intersect(self.basis, other.basis, self.ncols, self.field), self.field)

    def __le__(self, other: "SubspaceRelation") -> bool:
        self._same(other)
        return linalg.is_subspace(self.basis, other.basis, self.ncols, self.field)

    def to_json(self) -> list[list]:
        return [[self.field.dump(v) for v in row] for row in self.basis]

    def __repr__(self):
        return f"SubspaceRelation({self.n1}+{self.n2}, {self.to_json()})"


@dataclass(frozen=True)
class DualPairBasis:
    """Pairs (h1, h2) of functionals with h1(x1) = h2(x2) on the relation."""

    n1: int
    n2: int
    pairs: tuple  # of (h1, h2)

    def __len__(self):
        return len(self.pairs)

    def to_json(self, field: Field = QQ):
        return [[[field.dump(v) for v in h1], [field.dump(v) for v in h2]] for h1, h2 in self.pairs]


def dual_pairs(B: SubspaceRelation) -> DualPairBasis:
    """Canonical basis of B-bar: (h1, -h2) runs through the annihilator of B."""
    ann = linalg.annihilator(B.basis, B.ncols, B.field)
    return DualPairBasis(B.n1, B.n2, tuple((g[: B.n1], tuple(-v for v in g[B.n1:])) for g in ann))


def _check_pair(w1: WeightedAutomaton, w2: WeightedAutomaton):
    if w1.labels != w2.labels:
        raise ValueError(f"label mismatch: {list(w1.labels)} vs {list(w2.labels)}")
    if w1.field != w2.field:
        raise ValueError(f"field mismatch: {w1.field.tag} vs {w2.field.tag}")


def _check_shape(w1, w2, B: SubspaceRelation):
    if (B.n1, B.n2) != (w1.dim, w2.dim):
        raise ValueError(f"dimension mismatch: subspace of {B.n1}+{B.n2}, automata of dimension {w1.dim} and {w2.dim}")


@dataclass
class LinearWitness:
    vector: int  # index of the basis vector of B
    lifting: str
    dual: int | None  # index of the dual pair, for unary liftings
    left: object
    right: object

    def to_json(self, field: Field = QQ) -> dict:
        return {
            "vector": self.vector,
            "lifting": self.lifting,
            "dual": self.dual,
            "left": field.dump(self.left),
            "right": field.dump(self.right),
        }


def check_linear_bisim(logic: Logic, w1: WeightedAutomaton, w2: WeightedAutomaton, B: SubspaceRelation) -> BisimReport:
    """Check the lifted equations on the basis of B and of its dual pairs.

    Scan order: basis vectors, then liftings, then dual pairs.
    """
    lifts = logic.liftings_for(w1, w2)
    _check_pair(w1, w2)
    _check_shape(w1, w2, B)
    duals = dual_pairs(B).pairs
    for k, v in enumerate(B.basis):
        x1, x2 = B.split(v)
        for lf in lifts:
            argsets = [((), ())] if lf.arity == 0 else [((h1,), (h2,)) for h1, h2 in duals]
            for d, (a1, a2) in enumerate(argsets):
                l, r = lf.value(w1, x1, a1), lf.value(w2, x2, a2)
                if l != r:
                    w = LinearWitness(k, lf.name, None if lf.arity == 0 else d, l, r)
                    return BisimReport(False, w, mode="linear")
    return BisimReport(True, None, mode="linear")


def linear_refine(w1: WeightedAutomaton, w2: WeightedAutomaton, B: SubspaceRelation) -> SubspaceRelation:
    """{(x1, x2) : o1 x1 = o2 x2 and (M_a x1, M_a x2) in B for every a}."""
    _check_pair(w1, w2)
    _check_shape(w1, w2, B)
    f, n1, n2 = w1.field, w1.dim, w2.dim
    rows = [tuple(w1.output) + tuple(-v for v in w2.output)]
    ann = linalg.annihilator(B.basis, n1 + n2, f)
    for m1, m2 in zip(w1.trans, w2.trans):
        for g in ann:
            rows.append(linalg.vecmat(g[:n1], m1, n1, f) + linalg.vecmat(g[n1:], m2, n2, f))
    return SubspaceRelation(n1, n2, linalg.nullspace(rows, n1 + n2, f), f)


def linear_fixpoint(logic: Logic, w1: WeightedAutomaton, w2: WeightedAutomaton) -> tuple[SubspaceRelation, BisimReport]:
    logic.liftings_for(w1, w2)
    _check_pair(w1, w2)
    B = SubspaceRelation.full(w1.dim, w2.dim, w1.field)
    it = 0
    while True:
        it += 1
        nxt = linear_refine(w1, w2, B)
        if nxt == B:
            return B, BisimReport(True, None, iterations=it, mode="linear")
        B = nxt


def greatest_linear_bisim(logic: Logic, w1: WeightedAutomaton, w2: WeightedAutomaton) -> SubspaceRelation:
    """Greatest fixpoint of :func:`linear_refine`, from the full space down."""
    return linear_fixpoint(logic, w1, w2)[0]


def observability_kernel(w1: WeightedAutomaton, w2: WeightedAutomaton) -> SubspaceRelation:
    """Pairs agreeing on every word observable o M_w.

    Rows (o1 M_w | -o2 M_w) are generated breadth first; a row already in the
    span is not extended, so at most n1 + n2 rows are ever kept.
    """
    _check_pair(w1, w2)
    f, n1, n2 = w1.field, w1.dim, w2.dim
    n = n1 + n2
    start = tuple(w1.output) + tuple(-v for v in w2.output)
    kept: list = []
    queue = [start]
    while queue:
        nxt = []
        for r in queue:
            if linalg.contains(kept, r, n, f):
                continue
            kept.append(r)
            for m1, m2 in zip(w1.trans, w2.trans):
                nxt.append(linalg.vecmat(r[:n1], m1, n1, f) + linalg.vecmat(r[n1:], m2, n2, f))
        queue = nxt
    return SubspaceRelation(n1, n2, linalg.nullspace(kept, n, f), f)


def subspace_from_rows(w1: WeightedAutomaton, w2: WeightedAutomaton, rows) -> SubspaceRelation:
    f = w1.field
    rows = [[f.coerce(v) for v in r] for r in rows]
    for r in rows:
        if len(r) != w1.dim + w2.dim:
            raise ValueError(f"row of length {len(r)}, expected {w1.dim + w2.dim}")
    return SubspaceRelation.span(w1.dim, w2.dim, rows, f)

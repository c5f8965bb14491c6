"""Relations between finite state sets and their B-coherent predicate pairs.

A :class:`Relation` is a bitset over ``X1 x X2`` (bit ``i * n2 + j`` for the
pair ``(i, j)``); the span of coordinate projections it induces is jointly
mono by construction.  Predicates are bitmasks over a state set.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, NamedTuple

from .models import bits

DEFAULT_BOUND = 24


class ShapeError(ValueError):
    pass


class CoherentPairBoundError(RuntimeError):
    """Brute-force coherent pair enumeration was asked for more than the cap."""


@dataclass(frozen=True)
class Relation:
    n1: int
    n2: int
    bits: int = 0

    @classmethod
    def from_pairs(cls, n1: int, n2: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        b = 0
        for i, j in pairs:
            if not (0 <= i < n1 and 0 <= j < n2):
                raise ShapeError(f"pair ({i}, {j}) outside {n1}x{n2}")
            b |= 1 << (i * n2 + j)
        return cls(n1, n2, b)

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls.from_pairs(n, n, ((i, i) for i in range(n)))

    @classmethod
    def total(cls, n1: int, n2: int) -> "Relation":
        return cls(n1, n2, (1 << (n1 * n2)) - 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [divmod(k, self.n2) for k in bits(self.bits)] if self.n2 else []

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self.bits >> (i * self.n2 + j) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self):
        return iter(self.pairs())

    def _same_shape(self, other: "Relation"):
        if (self.n1, self.n2) != (other.n1, other.n2):
            raise ShapeError(f"shape mismatch: {self.n1}x{self.n2} vs {other.n1}x{other.n2}")

    def __or__(self, other: "Relation") -> "Relation":
        self._same_shape(other)
        return Relation(self.n1, self.n2, self.bits | other.bits)

    def __and__(self, other: "Relation") -> "Relation":
        self._same_shape(other)
        return Relation(self.n1, self.n2, self.bits & other.bits)

    def __le__(self, other: "Relation") -> bool:
        self._same_shape(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "Relation") -> bool:
        return self <= other and self.bits != other.bits

    def row(self, i: int) -> int:
        """B[{i}] as a mask over X2."""
        return (self.bits >> (i * self.n2)) & ((1 << self.n2) - 1)

    def col(self, j: int) -> int:
        """B^-1[{j}] as a mask over X1."""
        m = 0
        for i in range(self.n1):
            if self.bits >> (i * self.n2 + j) & 1:
                m |= 1 << i
        return m

    def image(self, a1: int) -> int:
        out = 0
        for i in bits(a1):
            out |= self.row(i)
        return out

    def preimage(self, a2: int) -> int:
        out = 0
        for j in bits(a2):
            out |= self.col(j)
        return out

    def converse(self) -> "Relation":
        return Relation.from_pairs(self.n2, self.n1, ((j, i) for i, j in self.pairs()))

    def domain(self) -> int:
        return mask_filter(self.n1, self.row)

    def codomain(self) -> int:
        return mask_filter(self.n2, self.col)

    def to_json(self) -> list[list[int]]:
        return [[i, j] for i, j in self.pairs()]

    def __repr__(self):
        return f"Relation({self.n1}x{self.n2}, {self.pairs()})"


def mask_filter(n: int, f) -> int:
    m = 0
    for i in range(n):
        if f(i):
            m |= 1 << i
    return m


class CoherentPair(NamedTuple):
    a1: int
    a2: int

    def sets(self) -> tuple[list[int], list[int]]:
        return bits(self.a1), bits(self.a2)


def is_coherent(B: Relation, a1: int, a2: int) -> bool:
    """B[a1] is contained in a2 and B^-1[a2] is contained in a1."""
    return B.image(a1) & ~a2 == 0 and B.preimage(a2) & ~a1 == 0


def components(B: Relation) -> list[CoherentPair]:
    """Connected components of the bipartite graph of B on X1 + X2.

    A pair (a1, a2) is B-coherent exactly when a1 + a2 is a union of these
    components, so they are the atoms of the coherent-pair algebra.  Ordered by
    their least state (left states before right states).
    """
    seen1 = seen2 = 0
    out = []
    for seed_side, n in ((0, B.n1), (1, B.n2)):
        for s in range(n):
            if (seen1 if seed_side == 0 else seen2) >> s & 1:
                continue
            c = closure(B, seed_side, s)
            seen1 |= c.a1
            seen2 |= c.a2
            out.append(c)
    return out


def closure(B: Relation, side: int, x: int) -> CoherentPair:
    """Least coherent pair containing state ``x`` of X1 (side 0) or X2 (side 1)."""
    a1, a2 = (1 << x, 0) if side == 0 else (0, 1 << x)
    while True:
        n2 = a2 | B.image(a1)
        n1 = a1 | B.preimage(n2)
        if (n1, n2) == (a1, a2):
            return CoherentPair(a1, a2)
        a1, a2 = n1, n2


def _order_key(n1: int):
    return lambda p: (p.a2 << n1) | p.a1


def coherent_pairs(B: Relation, bound: int = DEFAULT_BOUND) -> list[CoherentPair]:
    """All B-coherent pairs, ordered by the combined index ``a2 << n1 | a1``.

    That is the order a filter over every candidate in ``2^X1 x 2^X2`` would
    produce; the pairs themselves are assembled from :func:`components`.
    """
    if B.n1 + B.n2 > bound:
        raise CoherentPairBoundError(
            f"{B.n1}+{B.n2} states exceed the coherent-pair bound {bound}; use generator mode"
        )
    comps = components(B)
    out = []
    for choice in product((0, 1), repeat=len(comps)):
        a1 = a2 = 0
        for take, c in zip(choice, comps):
            if take:
                a1 |= c.a1
                a2 |= c.a2
        out.append(CoherentPair(a1, a2))
    out.sort(key=_order_key(B.n1))
    return out


def coherent_pairs_bruteforce(B: Relation) -> Iterator[CoherentPair]:
    """Filter every candidate pair; exponential, kept for cross-checks."""
    for c in range(1 << (B.n1 + B.n2)):
        a1 = c & ((1 << B.n1) - 1)
        a2 = c >> B.n1
        if is_coherent(B, a1, a2):
            yield CoherentPair(a1, a2)


def coherent_generators(B: Relation) -> list[CoherentPair]:
    """Point closures of every state of X1, then of X2, without repeats."""
    out = []
    for side, n in ((0, B.n1), (1, B.n2)):
        for x in range(n):
            c = closure(B, side, x)
            if c not in out:
                out.append(c)
    return out


def seeded_generators(B: Relation) -> dict[tuple[int, int], CoherentPair]:
    """Point closure keyed by (side, state)."""
    return {(side, x): closure(B, side, x) for side, n in ((0, B.n1), (1, B.n2)) for x in range(n)}


def bottom(n1: int, n2: int) -> Relation:
    return Relation(n1, n2, 0)


def join(rs: Iterable[Relation], n1: int | None = None, n2: int | None = None) -> Relation:
    """Union of relations; the empty join is the bottom relation of shape (n1, n2)."""
    rs = list(rs)
    if n1 is None or n2 is None:
        if not rs:
            raise ShapeError("empty join needs an explicit shape")
        n1, n2 = rs[0].n1, rs[0].n2
    acc = bottom(n1, n2)
    for r in rs:
        acc = acc | r
    return acc


def compose(B: Relation, C: Relation) -> Relation:
    """Relational composition: (x1, x3) with some x2 in between."""
    if B.n2 != C.n1:
        raise ShapeError(f"cannot compose {B.n1}x{B.n2} with {C.n1}x{C.n2}")
    out = 0
    for i in range(B.n1):
        row = 0
        for j in bits(B.row(i)):
            row |= C.row(j)
        out |= row << (i * C.n2)
    return Relation(B.n1, C.n2, out)


def is_full(B: Relation) -> bool:
    """Both projections are surjective."""
    return B.domain() == (1 << B.n1) - 1 and B.codomain() == (1 << B.n2) - 1

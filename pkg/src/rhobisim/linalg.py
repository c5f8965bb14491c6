"""Exact dense linear algebra over a :class:`~rhobisim.fields.Field`.

Vectors are tuples, matrices are tuples of row tuples.  Subspaces are always
handed around as the nonzero rows of a reduced row echelon form, which is a
canonical representative: two subspaces are equal iff their RREF bases are
equal as tuples.
"""
from __future__ import annotations

from typing import Sequence

from .fields import Field, QQ

Vector = tuple
Matrix = tuple  # tuple of row vectors


def rref(rows: Sequence[Sequence], ncols: int, field: Field = QQ) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Pivots are the first nonzero entry in column order, no pivoting heuristics.
    """
    m = [[field.coerce(v) for v in r] for r in rows]
    for r in m:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)}, expected {ncols}")
    pivots = []
    top = 0
    for c in range(ncols):
        pr = next((i for i in range(top, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[top], m[pr] = m[pr], m[top]
        inv = field.one / m[top][c]
        m[top] = [v * inv for v in m[top]]
        for i in range(len(m)):
            if i != top and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[top])]
        pivots.append(c)
        top += 1
        if top == len(m):
            break
    return tuple(tuple(r) for r in m[:top]), tuple(pivots)


def span(rows: Sequence[Sequence], ncols: int, field: Field = QQ) -> Matrix:
    return rref(rows, ncols, field)[0]


def rank(rows: Sequence[Sequence], ncols: int, field: Field = QQ) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field = QQ) -> Matrix:
    """Canonical basis of {v : r . v = 0 for every row r}."""
    basis, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, p in zip(basis, pivots):
            v[p] = -r[f]
        vecs.append(v)
    return span(vecs, ncols, field)


def annihilator(basis: Sequence[Sequence], ncols: int, field: Field = QQ) -> Matrix:
    """Row functionals vanishing on the span of ``basis``; same as the null space."""
    return nullspace(basis, ncols, field)


def intersect(u: Sequence[Sequence], v: Sequence[Sequence], ncols: int, field: Field = QQ) -> Matrix:
    constraints = list(annihilator(u, ncols, field)) + list(annihilator(v, ncols, field))
    return nullspace(constraints, ncols, field)


def subspace_sum(u: Sequence[Sequence], v: Sequence[Sequence], ncols: int, field: Field = QQ) -> Matrix:
    return span(list(u) + list(v), ncols, field)


def contains(basis: Sequence[Sequence], vec: Sequence, ncols: int, field: Field = QQ) -> bool:
    return rank(list(basis) + [vec], ncols, field) == len(basis)


def is_subspace(u: Sequence[Sequence], v: Sequence[Sequence], ncols: int, field: Field = QQ) -> bool:
    """u is contained in v (both given by spanning rows)."""
    return rank(list(v) + list(u), ncols, field) == rank(v, ncols, field)


def identity(n: int, field: Field = QQ) -> Matrix:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def matvec(m: Sequence[Sequence], x: Sequence, field: Field = QQ) -> Vector:
    if m and len(m[0]) != len(x):
        raise ValueError(f"dimension mismatch: {len(m[0])} columns, vector of length {len(x)}")
    acc = []
    for row in m:
        s = field.zero
        for a, b in zip(row, x):
            if a != 0 and b != 0:
                s = s + a * b
        acc.append(s)
    return tuple(acc)


def vecmat(x: Sequence, m: Sequence[Sequence], ncols: int, field: Field = QQ) -> Vector:
    """Row vector times matrix."""
    if len(x) != len(m):
        raise ValueError(f"dimension mismatch: vector of length {len(x)}, {len(m)} rows")
    acc = [field.zero] * ncols
    for a, row in zip(x, m):
        if a == 0:
            continue
        for j, b in enumerate(row):
            if b != 0:
                acc[j] = acc[j] + a * b
    return tuple(acc)


def dot(x: Sequence, y: Sequence, field: Field = QQ):
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    s = field.zero
    for a, b in zip(x, y):
        s = s + a * b
    return s


def block_diag(a: Sequence[Sequence], n1: int, b: Sequence[Sequence], n2: int, field: Field = QQ) -> Matrix:
    z = field.zero
    top = [tuple(r) + (z,) * n2 for r in a]
    bottom = [(z,) * n1 + tuple(r) for r in b]
    return tuple(top + bottom)

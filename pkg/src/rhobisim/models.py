"""Finite coalgebras: labelled transition systems, Kripke models and linear
weighted automata, plus the JSON document format they are read from.

Set-based systems store their structure map as bitmasks: ``succ[x][a]`` is an
int whose bit ``y`` is set iff ``x -a-> y``, and ``val[x]`` is a bitmask over
``props``.  States, labels and props keep declaration order, so every output
derived from a model is reproducible.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence, Union

from . import linalg
from .fields import QQ, Field, FieldError, field_from_tag

# the single accessibility relation of a Kripke model is exposed as this label
KRIPKE_LABEL = "R"


class ModelError(ValueError):
    """Raised for malformed model documents."""


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class SetSystem:
    """Common shape of the Set-based coalgebras (``Lts`` and ``KripkeModel``)."""

    states: tuple[str, ...]
    labels: tuple[str, ...]
    succ: tuple[tuple[int, ...], ...]
    props: tuple[str, ...] = ()
    val: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.val:
            object.__setattr__(self, "val", (0,) * len(self.states))

    @property
    def n(self) -> int:
        return len(self.states)

    def state_index(self, x: int | str) -> int:
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise KeyError(f"no state {x}")
            return x
        return self.states.index(x)

    def label_index(self, a: int | str) -> int:
        if isinstance(a, int):
            if not 0 <= a < len(self.labels):
                raise KeyError(f"no label {a}")
            return a
        return self.labels.index(a)

    def behaviour(self, x: int) -> tuple[tuple[int, ...], int]:
        """gamma(x): successor mask per label and the valuation mask."""
        return self.succ[x], self.val[x]

    def alphabet(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return self.labels, self.props


@dataclass(frozen=True)
class Lts(SetSystem):
    pass


@dataclass(frozen=True)
class KripkeModel(SetSystem):
    @property
    def relation(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in bits(self.succ[x][0])]


@dataclass(frozen=True)
class WeightedAutomaton:
    """A linear weighted automaton over ``field``: gamma(x) = (o.x, a -> M_a x)."""

    dim: int
    labels: tuple[str, ...]
    output: tuple
    trans: tuple  # one dim x dim matrix per label, in label order
    field: Field = QQ

    @property
    def matrices(self) -> dict[str, tuple]:
        return dict(zip(self.labels, self.trans))

    def matrix(self, a: int | str) -> tuple:
        if isinstance(a, str):
            a = self.labels.index(a)
        return self.trans[a]

    def alphabet(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return self.labels, ()


Model = Union[Lts, KripkeModel, WeightedAutomaton]


def successors(m: SetSystem, x: int | str, a: int | str) -> int:
    """gamma(x)(a) as a bitmask; empty for deadlocks."""
    return m.succ[m.state_index(x)][m.label_index(a)]


def step_vector(m: WeightedAutomaton, x: Sequence, a: int | str) -> tuple:
    """M_a . x, exactly."""
    if len(x) != m.dim:
        raise ValueError(f"dimension mismatch: vector of length {len(x)}, automaton of dimension {m.dim}")
    vec = tuple(m.field.coerce(v) for v in x)
    return linalg.matvec(m.matrix(a), vec, m.field)


# ---------------------------------------------------------------- documents

_KEYS = {
    "lts": {"type", "states", "labels", "edges"},
    "kripke": {"type", "states", "edges", "props", "valuation"},
    "wa": {"type", "dim", "field", "output", "matrices", "labels"},
}


def _unique(ids: Any, what: str) -> tuple[str, ...]:
    if not isinstance(ids, list):
        raise ModelError(f"{what} must be a list")
    out = []
    for i in ids:
        if isinstance(i, bool) or not isinstance(i, (str, int)):
            raise ModelError(f"bad {what[:-1]} id {i!r}")
        s = str(i)
        if s in out:
            raise ModelError(f"duplicate id {s!r} in {what}")
        out.append(s)
    return tuple(out)


def _check_keys(doc: dict, kind: str, required: set):
    unknown = set(doc) - _KEYS[kind]
    if unknown:
        raise ModelError(f"unknown keys {sorted(unknown)} in {kind} document")
    missing = required - set(doc)
    if missing:
        raise ModelError(f"missing keys {sorted(missing)} in {kind} document")


def _lookup(index: dict, key: Any, what: str) -> int:
    if isinstance(key, bool):
        raise ModelError(f"bad {what} reference {key!r}")
    k = str(key) if isinstance(key, (str, int)) else key
    if k not in index:
        if what == "state":
            raise ModelError(f"dangling successor: undeclared state {key!r}")
        raise ModelError(f"undeclared {what} {key!r}")
    return index[k]


def _edges(doc: dict, sidx: dict, lidx: dict | None, n: int, nl: int) -> tuple:
    succ = [[0] * nl for _ in range(n)]
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise ModelError("edges must be a list")
    for e in edges:
        if not isinstance(e, dict):
            raise ModelError(f"bad edge {e!r}")
        allowed = {"from", "label", "to"} if lidx is not None else {"from", "to"}
        if set(e) - allowed:
            raise ModelError(f"unknown keys {sorted(set(e) - allowed)} in edge")
        if "from" not in e or "to" not in e or (lidx is not None and "label" not in e):
            raise ModelError(f"incomplete edge {e!r}")
        x = _lookup(sidx, e["from"], "state")
        y = _lookup(sidx, e["to"], "state")
        a = _lookup(lidx, e["label"], "label") if lidx is not None else 0
        succ[x][a] |= 1 << y
    return tuple(tuple(r) for r in succ)


def _matrix(raw: Any, n: int, fld: Field, label: str) -> tuple:
    if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
        raise ModelError(f"non-square matrix for label {label!r}: expected {n}x{n}")
    try:
        return tuple(tuple(fld.coerce(v) for v in r) for r in raw)
    except FieldError as exc:
        raise ModelError(str(exc)) from exc


def validate_model(doc: Any) -> Model:
    """Parse a JSON-style document into a validated model."""
    if not isinstance(doc, dict):
        raise ModelError("model document must be an object")
    kind = doc.get("type")
    if kind not in _KEYS:
        raise ModelError(f"unknown model type {kind!r}")
    if kind == "lts":
        _check_keys(doc, kind, {"type", "states", "labels"})
        states = _unique(doc["states"], "states")
        labels = _unique(doc["labels"], "labels")
        sidx = {s: i for i, s in enumerate(states)}
        lidx = {a: i for i, a in enumerate(labels)}
        return Lts(states, labels, _edges(doc, sidx, lidx, len(states), len(labels)))
    if kind == "kripke":
        _check_keys(doc, kind, {"type", "states"})
        states = _unique(doc["states"], "states")
        props = _unique(doc.get("props", []), "props")
        sidx = {s: i for i, s in enumerate(states)}
        pidx = {p: i for i, p in enumerate(props)}
        succ = _edges(doc, sidx, None, len(states), 1)
        val = [0] * len(states)
        raw = doc.get("valuation", {})
        if not isinstance(raw, dict):
            raise ModelError("valuation must map states to lists of props")
        for s, ps in raw.items():
            x = _lookup(sidx, s, "state")
            if not isinstance(ps, list):
                raise ModelError(f"valuation of {s!r} must be a list")
            for p in ps:
                val[x] |= 1 << _lookup(pidx, p, "prop")
        return KripkeModel(states, (KRIPKE_LABEL,), succ, props, tuple(val))
    _check_keys(doc, kind, {"type", "dim", "output", "matrices"})
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ModelError(f"dim must be a non-negative integer, got {n!r}")
    try:
        fld = field_from_tag(doc.get("field", "rational"))
    except FieldError as exc:
        raise ModelError(f"unknown field tag {doc.get('field')!r}") from exc
    out = doc["output"]
    if not isinstance(out, list) or len(out) != n:
        raise ModelError(f"output must be a list of length {n}")
    try:
        output = tuple(fld.coerce(v) for v in out)
    except FieldError as exc:
        raise ModelError(str(exc)) from exc
    mats = doc["matrices"]
    if not isinstance(mats, dict):
        raise ModelError("matrices must map labels to matrices")
    labels = _unique(doc["labels"], "labels") if "labels" in doc else tuple(str(a) for a in mats)
    if set(labels) != set(mats):
        raise ModelError("labels and matrix keys disagree")
    trans = tuple(_matrix(mats[a], n, fld, a) for a in labels)
    return WeightedAutomaton(n, labels, output, trans, fld)


def serialize_model(m: Model) -> dict:
    """Inverse of :func:`validate_model` (canonical ordering)."""
    if isinstance(m, WeightedAutomaton):
        return {
            "type": "wa",
            "dim": m.dim,
            "field": m.field.tag,
            "labels": list(m.labels),
            "output": [m.field.dump(v) for v in m.output],
            "matrices": {a: [[m.field.dump(v) for v in r] for r in mat] for a, mat in zip(m.labels, m.trans)},
        }
    if isinstance(m, KripkeModel):
        return {
            "type": "kripke",
            "states": list(m.states),
            "props": list(m.props),
            "edges": [{"from": m.states[x], "to": m.states[y]} for x, y in m.relation],
            "valuation": {m.states[x]: [m.props[p] for p in bits(m.val[x])] for x in range(m.n) if m.val[x]},
        }
    return {
        "type": "lts",
        "states": list(m.states),
        "labels": list(m.labels),
        "edges": [
            {"from": m.states[x], "label": a, "to": m.states[y]}
            for x in range(m.n)
            for ai, a in enumerate(m.labels)
            for y in bits(m.succ[x][ai])
        ],
    }


def load_model(path: str | Path) -> Model:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON: {exc}") from exc
    return validate_model(doc)


def lts_from_edges(n: int, labels: Sequence[str], edges, names: Sequence[str] | None = None) -> Lts:
    """Convenience constructor from index triples (x, label, y)."""
    labels = tuple(labels)
    succ = [[0] * len(labels) for _ in range(n)]
    for x, a, y in edges:
        succ[x][labels.index(a) if isinstance(a, str) else a] |= 1 << y
    names = tuple(names) if names is not None else tuple(f"s{i}" for i in range(n))
    return Lts(names, labels, tuple(tuple(r) for r in succ))


def kripke_from_edges(n: int, edges, props: Sequence[str] = (), val=None, names=None) -> KripkeModel:
    succ = [[0] for _ in range(n)]
    for x, y in edges:
        succ[x][0] |= 1 << y
    props = tuple(props)
    vmask = [0] * n
    for x, ps in (val or {}).items():
        vmask[x] = mask_of(props.index(p) for p in ps)
    names = tuple(names) if names is not None else tuple(f"s{i}" for i in range(n))
    return KripkeModel(names, (KRIPKE_LABEL,), tuple(tuple(r) for r in succ), props, tuple(vmask))


def automaton(output, matrices: dict, field: Field = QQ) -> WeightedAutomaton:
    """Build a weighted automaton from plain Python numbers / "p/q" strings."""
    out = tuple(field.coerce(v) for v in output)
    labels = tuple(matrices)
    trans = tuple(tuple(tuple(field.coerce(v) for v in r) for r in matrices[a]) for a in labels)
    for a, mat in zip(labels, trans):
        if len(mat) != len(out) or any(len(r) != len(out) for r in mat):
            raise ModelError(f"non-square matrix for label {a!r}")
    return WeightedAutomaton(len(out), labels, out, trans, field)

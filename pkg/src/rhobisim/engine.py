"""rho-bisimulations for Set-based coalgebras.

A relation B is a rho-bisimulation when, for every related pair (x1, x2),
every lifting and every B-coherent pair of predicates (a1, a2), gamma1(x1) is
in lambda(a1) exactly when gamma2(x2) is in lambda(a2).

All checks go through the *signature* of a state: the vector of truth values
of every lifting on every coherent argument tuple, in scan order (liftings
first, then coherent pairs).  The signatures only depend on the coherent pairs,
which only depend on the connected components of B, so they are cached per
component structure.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .logics import Lifting, Logic, LogicError
from .models import SetSystem
from .relations import (
    DEFAULT_BOUND, CoherentPair, CoherentPairBoundError, Relation, coherent_pairs, components,
)


@dataclass
class Witness:
    pair: tuple[int, int]
    lifting: str
    args: tuple[CoherentPair, ...]
    left: bool
    right: bool

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "lifting": self.lifting,
            "coherent": [[[*CoherentPair(*a).sets()[0]], [*CoherentPair(*a).sets()[1]]] for a in self.args],
            "left": self.left,
            "right": self.right,
        }


@dataclass
class BisimReport:
    verdict: bool
    witness: Witness | None = None
    iterations: int = 0
    mode: str = "brute"
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "iterations": self.iterations, "mode": self.mode}
        out["witness"] = self.witness.to_json() if self.witness else None
        return out


def threads() -> int:
    try:
        return max(1, int(os.environ.get("RHOBISIM_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Order-preserving map, threaded when RHOBISIM_THREADS > 1."""
    items = list(items)
    k = threads()
    if k == 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


class RhoChecker:
    """Check, lift and refine relations between two fixed Set coalgebras.

    ``mode`` is ``"brute"`` (all coherent pairs, capped at ``bound`` states),
    ``"generators"`` (component atoms only; sound for join-preserving
    signatures) or ``"auto"`` (brute within the cap, generators beyond it).
    """

    def __init__(self, logic: Logic, m1: SetSystem, m2: SetSystem, mode: str = "auto", bound: int = DEFAULT_BOUND):
        if type(m1) is not type(m2):
            raise LogicError(f"cannot relate a {type(m1).__name__} to a {type(m2).__name__}")
        self.logic = logic
        self.m1, self.m2 = m1, m2
        self.lifts: tuple[Lifting, ...] = logic.liftings_for(m1, m2)
        if max((lf.arity for lf in self.lifts), default=0) > 1 and mode != "brute":
            mode = "brute"
        self.mode = mode
        self.bound = bound
        self._cache: dict = {}
        self.beh1 = [m1.behaviour(x) for x in range(m1.n)]
        self.beh2 = [m2.behaviour(x) for x in range(m2.n)]

    # -- coherent arguments

    def effective_mode(self, B: Relation) -> str:
        if self.mode == "generators" or (self.mode == "auto" and B.n1 + B.n2 > self.bound):
            if not self.logic.join_preserving:
                raise CoherentPairBoundError(
                    f"logic {self.logic.name} is not join-preserving; generator mode refused "
                    f"({B.n1}+{B.n2} states, bound {self.bound})"
                )
            return "generators"
        return "brute"

    def _predicates(self, B: Relation, mode: str) -> list[CoherentPair]:
        if mode == "generators":
            return components(B)
        return coherent_pairs(B, self.bound)

    def _table(self, B: Relation):
        """(argument tuples per lifting, signature function), cached by components."""
        mode = self.effective_mode(B)
        key = (mode, tuple(components(B)))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        preds = self._predicates(B, mode)
        scan = []
        for lf in self.lifts:
            for args in product(preds, repeat=lf.arity):
                scan.append((lf, args))
        args1 = [(lf, tuple(a.a1 for a in args)) for lf, args in scan]
        args2 = [(lf, tuple(a.a2 for a in args)) for lf, args in scan]

        def sig(beh, args):
            s = 0
            for k, (lf, a) in enumerate(args):
                if lf.holds(beh, a):
                    s |= 1 << k
            return s

        memo1: dict = {}
        memo2: dict = {}

        def sig1(x: int) -> int:
            if x not in memo1:
                memo1[x] = sig(self.beh1[x], args1)
            return memo1[x]

        def sig2(x: int) -> int:
            if x not in memo2:
                memo2[x] = sig(self.beh2[x], args2)
            return memo2[x]

        entry = (scan, sig1, sig2, mode)
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[key] = entry
        return entry

    # -- the three operations

    def check(self, B: Relation) -> BisimReport:
        self._shape(B)
        scan, sig1, sig2, mode = self._table(B)

        def first_violation(pair):
            x1, x2 = pair
            diff = sig1(x1) ^ sig2(x2)
            if not diff:
                return None
            k = (diff & -diff).bit_length() - 1
            lf, args = scan[k]
            return Witness(pair, lf.name, tuple(args), bool(sig1(x1) >> k & 1), bool(sig2(x2) >> k & 1))

        pairs = B.pairs()
        if len(pairs) > 64 and _threads_enabled():
            # fill the memo tables first so worker threads only read them
            for x1, x2 in pairs:
                sig1(x1), sig2(x2)
            results = parallel_map(first_violation, pairs)
            w = next((r for r in results if r is not None), None)
        else:
            w = None
            for p in pairs:
                w = first_violation(p)
                if w is not None:
                    break
        return BisimReport(w is None, w, mode=mode)

    def refine(self, B: Relation) -> Relation:
        """{(x1, x2) : (gamma1(x1), gamma2(x2)) is in the lifted relation}."""
        self._shape(B)
        _, sig1, sig2, _ = self._table(B)
        n2 = self.m2.n
        s2 = [sig2(j) for j in range(n2)]
        out = 0
        for i in range(self.m1.n):
            s = sig1(i)
            for j in range(n2):
                if s2[j] == s:
                    out |= 1 << (i * n2 + j)
        return Relation(self.m1.n, n2, out)

    def lift(self, B: Relation) -> set:
        """Pairs of (reachable) one-step behaviours not separated by lifted coherent predicates."""
        self._shape(B)
        scan, _, _, _ = self._table(B)
        args1 = [(lf, tuple(a.a1 for a in args)) for lf, args in scan]
        args2 = [(lf, tuple(a.a2 for a in args)) for lf, args in scan]
        t1 = sorted(set(self.beh1))
        t2 = sorted(set(self.beh2))
        v1 = {t: tuple(lf.holds(t, a) for lf, a in args1) for t in t1}
        v2 = {t: tuple(lf.holds(t, a) for lf, a in args2) for t in t2}
        return {(a, b) for a in t1 for b in t2 if v1[a] == v2[b]}

    def greatest(self) -> tuple[Relation, BisimReport]:
        B = Relation.total(self.m1.n, self.m2.n)
        it = 0
        while True:
            it += 1
            nxt = self.refine(B)
            if nxt == B:
                return B, BisimReport(True, None, iterations=it, mode=self.effective_mode(B))
            B = nxt

    def _shape(self, B: Relation):
        if (B.n1, B.n2) != (self.m1.n, self.m2.n):
            raise ValueError(f"relation of shape {B.n1}x{B.n2} for systems with {self.m1.n} and {self.m2.n} states")


def _threads_enabled() -> bool:
    return threads() > 1


def check_rho_bisim(logic: Logic, m1, m2, B: Relation, mode: str = "auto", bound: int = DEFAULT_BOUND) -> BisimReport:
    return RhoChecker(logic, m1, m2, mode, bound).check(B)


def lift_relation(logic: Logic, m1, m2, B: Relation, mode: str = "auto", bound: int = DEFAULT_BOUND) -> set:
    """The relation lifting restricted to behaviours gamma1(X1) x gamma2(X2).

    Behaviours are ``(successor masks per label, valuation mask)``.
    """
    return RhoChecker(logic, m1, m2, mode, bound).lift(B)


def refine(logic: Logic, m1, m2, B: Relation, mode: str = "auto", bound: int = DEFAULT_BOUND) -> Relation:
    return RhoChecker(logic, m1, m2, mode, bound).refine(B)


def greatest_rho_bisim(logic: Logic, m1, m2, mode: str = "auto", bound: int = DEFAULT_BOUND):
    """Iterate refine from the total relation down to its greatest fixpoint."""
    return RhoChecker(logic, m1, m2, mode, bound).greatest()


def check_adequacy(logic: Logic, m1, m2, B: Relation) -> bool:
    """B is contained in logical equivalence."""
    from .logics import theory_kernel

    return B <= theory_kernel(logic, m1, m2)

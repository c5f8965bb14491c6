import pytest
from hypothesis import given, settings

from rhobisim.engine import greatest_rho_bisim
from rhobisim.linear import SubspaceRelation, greatest_linear_bisim
from rhobisim.logics import get_logic
from rhobisim.models import automaton, lts_from_edges
from rhobisim.oracle import (
    InstanceFamily, OracleBoundError, enumerate_relations, naive_check, oracle_greatest_bisim, oracle_linear_gfp,
    passing_relations, run_suite,
)
from rhobisim.relations import Relation, join
from strategies import lts_st

HM = get_logic("hm")


def test_enumerate_relations_counts():
    assert [r.pairs() for r in enumerate_relations(1, 1)] == [[], [(0, 0)]]
    assert len(list(enumerate_relations(2, 1))) == 4
    assert len(list(enumerate_relations(2, 2))) == 16
    assert len(list(enumerate_relations(0, 5))) == 1
    with pytest.raises(OracleBoundError):
        list(enumerate_relations(4, 5))


def test_family_is_deterministic():
    fam = InstanceFamily(sizes=[(2, 3), (3, 2)], labels=2, seed=7, count=5)
    first, second = list(fam), list(fam)
    assert first == second
    assert [(a.n, b.n) for a, b in first] == [(2, 3), (3, 2), (2, 3), (3, 2), (2, 3)]
    assert fam.instance(3) == first[3]
    assert list(InstanceFamily(seed=8, count=5)) != list(InstanceFamily(seed=0, count=5))
    w = InstanceFamily(kind="wa", sizes=[(2, 1)], count=2)
    assert [(a.dim, b.dim) for a, b in w] == [(2, 1), (2, 1)]


def test_family_rejects_bad_spec():
    with pytest.raises(ValueError):
        InstanceFamily(kind="petri")
    with pytest.raises(ValueError):
        InstanceFamily(sizes=[(1, -1)])
    with pytest.raises(ValueError):
        InstanceFamily(labels=0)


def test_oracle_gfp_examples(one_step, fork, abc_sum, ab_ac):
    assert oracle_greatest_bisim(HM, one_step, fork).pairs() == [(0, 0), (1, 1), (1, 2)]
    dead = lts_from_edges(1, ["a"], [])
    for name in ("trace", "hm", "pml"):
        assert oracle_greatest_bisim(get_logic(name), dead, dead) == Relation.total(1, 1)
    p = lts_from_edges(2, ["a", "b", "c"], [(0, "a", 1), (1, "b", 1)])
    q = lts_from_edges(3, ["a", "b", "c"], [(0, "a", 1), (0, "a", 2), (1, "b", 1)])
    assert (0, 0) not in oracle_greatest_bisim(get_logic("trace"), p, q)
    with pytest.raises(OracleBoundError):
        oracle_greatest_bisim(HM, abc_sum, ab_ac)


def test_oracle_linear_examples(wa_scalar, wa_shift):
    w = automaton([1, 2], {"a": [[0, 1], [1, 0]]})
    assert SubspaceRelation.diagonal(2) <= oracle_linear_gfp(w, w)
    z = automaton([0, 0], {"a": [[0, 0], [0, 0]]})
    assert oracle_linear_gfp(z, z) == SubspaceRelation.full(2, 2)
    assert oracle_linear_gfp(wa_scalar, wa_shift) == greatest_linear_bisim(get_logic("linear-hm"), wa_scalar, wa_shift)
    big = automaton([0] * 7, {"a": [[0] * 7 for _ in range(7)]})
    with pytest.raises(OracleBoundError):
        oracle_linear_gfp(big, big)


def test_union_skip_matches_plain_union(one_step, fork):
    # the skip in oracle_greatest_bisim is an optimisation only
    for name in ("trace", "hm", "pml"):
        lg = get_logic(name)
        plain = join(passing_relations(lg, one_step, fork), one_step.n, fork.n)
        assert plain == oracle_greatest_bisim(lg, one_step, fork)


@settings(max_examples=30)
@given(lts_st(max_states=3), lts_st(max_states=3))
def test_union_of_passing_relations_passes(a, b):
    lg = get_logic("pml")
    rels = passing_relations(lg, a, b)
    assert Relation(a.n, b.n, 0) in rels
    u = join(rels, a.n, b.n)
    assert naive_check(lg, a, b, u)
    assert u == oracle_greatest_bisim(lg, a, b) == greatest_rho_bisim(lg, a, b)[0]


def test_run_suite_small_families():
    for fam in (
        InstanceFamily(count=15),
        InstanceFamily(kind="kripke", sizes=[(2, 3)], props=2, count=10),
        InstanceFamily(kind="wa", sizes=[(2, 2)], count=15),
    ):
        rep = run_suite(fam)
        assert rep["ok"] and rep["mismatches"] == []
        assert rep["family"]["kind"] == fam.kind
    assert run_suite(InstanceFamily(count=4), ["hm"])["checked"] == 4

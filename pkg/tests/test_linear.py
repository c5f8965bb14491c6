from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhobisim import linalg
from rhobisim.fields import PrimeField
from rhobisim.linear import (
    SubspaceRelation, check_linear_bisim, dual_pairs, greatest_linear_bisim, linear_fixpoint, linear_refine,
    observability_kernel,
)
from rhobisim.logics import get_logic
from rhobisim.models import automaton
from rhobisim.oracle import oracle_linear_gfp
from strategies import automaton_st, rationals

LHM = get_logic("linear-hm")
LTR = get_logic("linear-trace")


def subspace_st(n1, n2):
    return st.lists(st.lists(rationals, min_size=n1 + n2, max_size=n1 + n2), max_size=n1 + n2).map(
        lambda rows: SubspaceRelation.span(n1, n2, rows))


def test_dual_pairs_examples():
    d = dual_pairs(SubspaceRelation.diagonal(1))
    assert d.pairs == (((1,), (1,)),)
    assert len(dual_pairs(SubspaceRelation.zero(2, 3))) == 5
    assert len(dual_pairs(SubspaceRelation.full(2, 3))) == 0


def test_check_examples():
    w = automaton([2], {"a": [[3]]})
    assert check_linear_bisim(LHM, w, w, SubspaceRelation.diagonal(1)).verdict
    w1, w2 = automaton([1], {"a": [[0]]}), automaton([2], {"a": [[0]]})
    rep = check_linear_bisim(LHM, w1, w2, SubspaceRelation.diagonal(1))
    assert not rep.verdict
    assert rep.witness.lifting == "p" and (rep.witness.left, rep.witness.right) == (1, 2)
    assert check_linear_bisim(LHM, w1, w2, SubspaceRelation.zero(1, 1)).verdict


def test_gfp_example(wa_scalar, wa_shift):
    expected = SubspaceRelation.span(1, 2, [[1, 1, 0]])
    assert oracle_linear_gfp(wa_scalar, wa_shift) == expected
    assert greatest_linear_bisim(LHM, wa_scalar, wa_shift) == expected
    assert observability_kernel(wa_scalar, wa_shift) == expected
    assert not expected.contains((1,), (1, 1))
    assert expected.contains((2,), (2, 0))


def test_zero_automata_full_space():
    z1, z2 = automaton([0, 0], {"a": [[0, 0], [0, 0]]}), automaton([0], {"a": [[0]]})
    full = SubspaceRelation.full(2, 1)
    assert greatest_linear_bisim(LHM, z1, z2) == full == observability_kernel(z1, z2) == oracle_linear_gfp(z1, z2)


def test_identical_contains_diagonal():
    w = automaton([1, "1/2"], {"a": [[0, 1], [1, 0]], "b": [[2, 0], [0, "-1/3"]]})
    d = SubspaceRelation.diagonal(2)
    assert d <= greatest_linear_bisim(LHM, w, w)
    assert d <= observability_kernel(w, w)


def test_dimension_checks(wa_scalar, wa_shift):
    with pytest.raises(ValueError):
        check_linear_bisim(LHM, wa_scalar, wa_shift, SubspaceRelation.zero(1, 1))


def test_prime_field():
    f = PrimeField(5)
    w1 = automaton([1], {"a": [[2]]}, f)
    w2 = automaton([1, 0], {"a": [[2, 0], [0, 3]]}, f)
    g = greatest_linear_bisim(LHM, w1, w2)
    assert g == observability_kernel(w1, w2)
    assert g.contains((f.one,), (f.one, f.zero))


pair_st = st.tuples(st.integers(0, 3), st.integers(0, 3), st.sampled_from([("a",), ("a", "b")])).flatmap(
    lambda s: st.tuples(automaton_st(labels=s[2], dim=s[0]), automaton_st(labels=s[2], dim=s[1])))


@settings(max_examples=60)
@given(pair_st)
def test_gfp_observability_oracle_agree(pair):
    w1, w2 = pair
    g, rep = linear_fixpoint(LHM, w1, w2)
    assert g == observability_kernel(w1, w2) == oracle_linear_gfp(w1, w2)
    assert rep.iterations <= w1.dim + w2.dim + 1
    assert check_linear_bisim(LHM, w1, w2, g).verdict


@settings(max_examples=60)
@given(pair_st, st.data())
def test_post_fixpoint_and_invariance(pair, data):
    w1, w2 = pair
    B = data.draw(subspace_st(w1.dim, w2.dim))
    v = check_linear_bisim(LHM, w1, w2, B).verdict
    assert v == (B <= linear_refine(w1, w2, B))
    assert v == check_linear_bisim(LTR, w1, w2, B).verdict
    if v:
        assert B <= greatest_linear_bisim(LHM, w1, w2)


@settings(max_examples=40)
@given(pair_st, st.data())
def test_basis_level_check_is_enough(pair, data):
    w1, w2 = pair
    g = greatest_linear_bisim(LHM, w1, w2)
    f = w1.field
    coeffs = data.draw(st.lists(rationals, min_size=g.rank, max_size=g.rank))
    v = [f.zero] * g.ncols
    for c, row in zip(coeffs, g.basis):
        v = [a + c * b for a, b in zip(v, row)]
    x1, x2 = g.split(v)
    assert linalg.dot(w1.output, x1) == linalg.dot(w2.output, x2)
    for h1, h2 in dual_pairs(g).pairs:
        for m1, m2 in zip(w1.trans, w2.trans):
            assert linalg.dot(h1, linalg.matvec(m1, x1)) == linalg.dot(h2, linalg.matvec(m2, x2))


@settings(max_examples=40)
@given(pair_st, st.data())
def test_sum_of_bisimulations(pair, data):
    w1, w2 = pair
    assert check_linear_bisim(LHM, w1, w2, SubspaceRelation.zero(w1.dim, w2.dim)).verdict
    g = greatest_linear_bisim(LHM, w1, w2)
    assert linear_refine(w1, w2, g) == g
    B = data.draw(subspace_st(w1.dim, w2.dim))
    if check_linear_bisim(LHM, w1, w2, B).verdict:
        assert check_linear_bisim(LHM, w1, w2, g | B).verdict
    # on a self-pair the diagonal and the gfp both pass, and so does their sum
    d = SubspaceRelation.diagonal(w1.dim)
    gg = greatest_linear_bisim(LHM, w1, w1)
    assert check_linear_bisim(LHM, w1, w1, d).verdict
    assert check_linear_bisim(LHM, w1, w1, d | gg).verdict and d | gg == gg


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_double_annihilation(n1, n2, data):
    B = data.draw(subspace_st(n1, n2))
    rows = [tuple(h1) + tuple(-v for v in h2) for h1, h2 in dual_pairs(B).pairs]
    assert linalg.annihilator(rows, n1 + n2) == B.basis
    assert len(dual_pairs(B)) == n1 + n2 - B.rank
    for h1, h2 in dual_pairs(B).pairs:
        for row in B.basis:
            x1, x2 = B.split(row)
            assert linalg.dot(h1, x1) == linalg.dot(h2, x2)


def test_canonical_basis_is_rref():
    B = SubspaceRelation.span(1, 2, [[2, 4, 0], [1, 2, 0], [0, 0, Fraction(1, 3)]])
    assert B.basis == ((1, 2, 0), (0, 0, 1))

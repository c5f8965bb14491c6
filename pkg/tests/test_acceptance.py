"""Acceptance criteria 1-12, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the criterion lines are
written straight to the terminal, bypassing output capture.
"""
import itertools
import json
import os
import random
import subprocess
import sys
from functools import lru_cache
from pathlib import Path

import pytest

from rhobisim.cli import main
from rhobisim.engine import check_rho_bisim, greatest_rho_bisim, refine
from rhobisim.linear import greatest_linear_bisim, observability_kernel
from rhobisim.logics import get_logic, theory_kernel
from rhobisim.models import load_model, lts_from_edges, serialize_model
from rhobisim.oracle import (
    InstanceFamily, NaiveChecker, oracle_greatest_bisim, oracle_linear_gfp, random_kripke, random_lts,
)
from rhobisim.relations import Relation, compose, is_full, join
from rhobisim.zoo import (
    behavioural_equivalence, check_precocongruence, check_T_bisim, check_translation_invariance, greatest_T_bisim,
)

SET_LOGICS = ("trace", "hm", "pml")
DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def verdict(capsys):
    def _report(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return _report


def all_lts(n, labels=("a",)):
    """Every LTS on n states over the given labels."""
    slots = [(i, a, j) for i in range(n) for a in labels for j in range(n)]
    for mask in range(1 << len(slots)):
        yield lts_from_edges(n, labels, [e for k, e in enumerate(slots) if mask >> k & 1])


def relations(n1, n2):
    return [Relation(n1, n2, b) for b in range(1 << (n1 * n2))]


# ------------------------------------------------------------------ 1

def test_c01_identity_and_bottom(verdict):
    rng = random.Random(101)
    bad = []
    for k in range(100):
        n, labels = rng.randint(0, 6), ["a", "b"][: rng.randint(1, 2)]
        m = random_lts(rng, n, labels, rng.choice((0.2, 0.4, 0.6)))
        for name in SET_LOGICS:
            lg = get_logic(name)
            for B in (Relation.identity(n), Relation(n, n, 0)):
                if not check_rho_bisim(lg, m, m, B).verdict:
                    bad.append((k, name, len(B)))
        # the catalogue's fourth Set logic lives on Kripke models
        km = random_kripke(rng, n, ["p", "q"], 0.4)
        for B in (Relation.identity(n), Relation(n, n, 0)):
            if not check_rho_bisim(get_logic("kripke"), km, km, B).verdict:
                bad.append((k, "kripke", len(B)))
    verdict(1, not bad, f"100 LTSs x {len(SET_LOGICS)} logics + 100 Kripke models; failures={bad[:3]}")


# ------------------------------------------------------------------ 2

def test_c02_post_fixpoint_exhaustive(verdict):
    systems = list(all_lts(2))
    rels = relations(2, 2)
    bad = checked = 0
    for a, b in itertools.product(systems, systems):
        for name in SET_LOGICS:
            lg = get_logic(name)
            naive = NaiveChecker(lg, a, b)
            for B in rels:
                checked += 1
                engine = check_rho_bisim(lg, a, b, B).verdict
                post = B <= refine(lg, a, b, B)
                if not (engine == post == naive.check(B)):
                    bad += 1
    verdict(2, bad == 0 and checked == 256 * 16 * 3,
            f"{len(systems) ** 2} system pairs x 16 relations x 3 logics = {checked}; mismatches={bad}")


# ------------------------------------------------------------------ 3 / 4

SHAPES = [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (3, 4), (4, 3), (2, 6), (6, 2), (1, 5)]


@lru_cache(maxsize=1)
def seeded_family():
    out = []
    for labels, seed in ((1, 31), (2, 32)):
        fam = InstanceFamily(sizes=SHAPES, labels=labels, density=0.35, seed=seed, count=100)
        out += list(fam)
    return out


def test_c03_gfp_equals_oracle(verdict):
    bad = []
    for k, (a, b) in enumerate(seeded_family()):
        assert a.n * b.n <= 12
        for name in SET_LOGICS:
            lg = get_logic(name)
            if greatest_rho_bisim(lg, a, b)[0] != oracle_greatest_bisim(lg, a, b):
                bad.append((k, name))
    verdict(3, not bad, f"{len(seeded_family())} pairs x 3 logics, bit-exact; mismatches={bad[:3]}")


def test_c04_lattice_closure(verdict):
    rng = random.Random(404)
    bad = []
    joins = 0
    for k, (a, b) in enumerate(seeded_family()):
        for name in SET_LOGICS:
            lg = get_logic(name)
            naive = NaiveChecker(lg, a, b)
            if a.n * b.n <= 9:
                cands = relations(a.n, b.n)
            else:
                # sub-relations of the greatest one plus unconstrained draws
                top = oracle_greatest_bisim(lg, a, b).bits
                cands = [Relation(a.n, b.n, 0), Relation(a.n, b.n, top)]
                cands += [Relation(a.n, b.n, top & rng.getrandbits(a.n * b.n)) for _ in range(48)]
                cands += [Relation(a.n, b.n, rng.getrandbits(a.n * b.n)) for _ in range(16)]
            passing = [B for B in cands if naive.check(B)]
            for _ in range(8):
                B1, B2 = rng.choice(passing), rng.choice(passing)
                J = join([B1, B2])
                joins += 1
                if not (check_rho_bisim(lg, a, b, J).verdict and naive.check(J)):
                    bad.append((k, name, "pair"))
            whole = join(passing, a.n, b.n)
            if not (check_rho_bisim(lg, a, b, whole).verdict and naive.check(whole)):
                bad.append((k, name, "all"))
            if a.n * b.n <= 9 and whole != oracle_greatest_bisim(lg, a, b):
                bad.append((k, name, "union"))
    verdict(4, not bad, f"{joins} sampled joins + join of all passing, per pair and logic; failures={bad[:3]}")


# ------------------------------------------------------------------ 5

# a: both states -a-> {0, 1}; b: both states -a-> {1}; c: an a-loop
NON_FULL = (
    lts_from_edges(2, ["a"], [(0, "a", 0), (0, "a", 1), (1, "a", 0), (1, "a", 1)]),
    lts_from_edges(2, ["a"], [(0, "a", 1), (1, "a", 1)]),
    lts_from_edges(1, ["a"], [(0, "a", 0)]),
    Relation.from_pairs(2, 2, [(0, 0), (0, 1), (1, 0)]),
    Relation.from_pairs(2, 1, [(1, 0)]),
)


def test_c05_full_composition(verdict):
    rng = random.Random(505)
    bad = []
    composites = 0
    for seed in range(150):
        r = random.Random(f"c5:{seed}")
        sizes = [r.randint(1, 3) for _ in range(3)]
        a, b, c = (random_lts(r, n, ["a"], r.choice((0.3, 0.5, 0.7))) for n in sizes)
        for name in SET_LOGICS:
            lg = get_logic(name)
            nab, nbc, nac = NaiveChecker(lg, a, b), NaiveChecker(lg, b, c), NaiveChecker(lg, a, c)
            fab = [B for B in relations(a.n, b.n) if is_full(B) and nab.check(B)]
            fbc = [C for C in relations(b.n, c.n) if is_full(C) and nbc.check(C)]
            pairs = list(itertools.product(fab, fbc))
            for B, C in rng.sample(pairs, min(len(pairs), 12)):
                composites += 1
                BC = compose(B, C)
                if not (check_rho_bisim(lg, a, c, BC).verdict and nac.check(BC)):
                    bad.append((seed, name, B.pairs(), C.pairs()))
    a, b, c, B, C = NON_FULL
    hm = get_logic("hm")
    nf_ok = (
        NaiveChecker(hm, a, b).check(B) and NaiveChecker(hm, b, c).check(C)
        and is_full(B) and not is_full(C)
        and not NaiveChecker(hm, a, c).check(compose(B, C))
        and not check_rho_bisim(hm, a, c, compose(B, C)).verdict
    )
    ok = not bad and nf_ok and composites >= 300
    verdict(5, ok, f"{composites} full composites pass; stored non-full composite fails: {nf_ok}; failures={bad[:2]}")


# ------------------------------------------------------------------ 6

def test_c06_adequacy_of_cmd_gfp(verdict, tmp_path, capsys):
    rng = random.Random(606)
    cases = [("abc_sum.json", "ab_ac.json"), ("one_step.json", "fork.json"), ("kripke.json", "kripke.json")]
    cases = [(str(DATA / x), str(DATA / y)) for x, y in cases]
    for k in range(40):
        labels = ["a", "b"][: rng.randint(1, 2)]
        a, b = random_lts(rng, rng.randint(1, 5), labels, 0.35), random_lts(rng, rng.randint(1, 5), labels, 0.35)
        paths = []
        for tag, m in (("l", a), ("r", b)):
            p = tmp_path / f"{k}{tag}.json"
            p.write_text(json.dumps(serialize_model(m)))
            paths.append(str(p))
        cases.append(tuple(paths))
    bad = []
    checked = 0
    for p1, p2 in cases:
        m1, m2 = load_model(p1), load_model(p2)
        names = ["kripke"] if m1.props else list(SET_LOGICS)
        for name in names:
            code = main(["gfp", p1, p2, "--logic", name, "--format", "json"])
            rep = json.loads(capsys.readouterr().out)
            G = Relation.from_pairs(m1.n, m2.n, [tuple(p) for p in rep["result"]["relation"]["pairs"]])
            checked += 1
            if code != 0 or not G <= theory_kernel(get_logic(name), m1, m2):
                bad.append((p1, name))
    verdict(6, not bad, f"{checked} cmd_gfp outputs contained in their theory kernels; failures={bad[:2]}")


# ------------------------------------------------------------------ 7

def test_c07_hennessy_milner_classic(verdict):
    hm = get_logic("hm")
    bad = []
    for k in range(200):
        r = random.Random(f"c7:{k}")
        labels = ["a", "b"][: r.randint(1, 2)]
        a, b = random_lts(r, r.randint(0, 5), labels, r.choice((0.2, 0.35, 0.5))), \
            random_lts(r, r.randint(0, 5), labels, r.choice((0.2, 0.35, 0.5)))
        kern = theory_kernel(hm, a, b)
        gfp = greatest_rho_bisim(hm, a, b)[0]
        if not (kern == gfp == behavioural_equivalence(a, b) == greatest_T_bisim(a, b)):
            bad.append(k)
    verdict(7, not bad, f"200 pairs up to 5+5 states, four relations equal; failures={bad[:5]}")


# ------------------------------------------------------------------ 8

def test_c08_trace_logic_failure(verdict, abc_sum, ab_ac):
    tr = get_logic("trace")
    kern = theory_kernel(tr, abc_sum, ab_ac)
    gfp = greatest_rho_bisim(tr, abc_sum, ab_ac)[0]
    ok = (0, 0) in kern and (0, 0) not in gfp and gfp < kern
    verdict(8, ok, f"(p0,q0) in trace kernel: {(0, 0) in kern}; in trace gfp: {(0, 0) in gfp}")


# ------------------------------------------------------------------ 9

C9_SHAPES = [(3, 3), (2, 4), (3, 4), (4, 2), (2, 5), (4, 3), (2, 6), (3, 2)]


def test_c09_translation_invariance(verdict):
    bad = []
    checked = 0
    for seed in range(100):
        r = random.Random(f"c9:{seed}")
        n1, n2 = C9_SHAPES[seed % len(C9_SHAPES)]
        labels = ["a", "b"][: 1 + seed % 2]
        a, b = random_lts(r, n1, labels, 0.4), random_lts(r, n2, labels, 0.4)
        for pair in (("trace", "hm"), ("pml", "pml-dia")):
            rep = check_translation_invariance(a, b, pair=pair)
            checked += rep["checked"]
            if rep["verdict"] != "equal" or not rep["exhaustive"] or rep["checked"] != 1 << (n1 * n2):
                bad.append((seed, pair))
    verdict(9, not bad, f"100 seeds, {checked} relation verdicts compared exhaustively; discrepancies={bad[:3]}")


# ------------------------------------------------------------------ 10

def test_c10_linear_hennessy_milner(verdict):
    lhm = get_logic("linear-hm")
    bad = []
    shapes = [(d1, d2) for d1 in range(5) for d2 in range(5)]
    for labels in (1, 2):
        fam = InstanceFamily(kind="wa", sizes=shapes, labels=labels, seed=1000 + labels, count=100)
        for k, (w1, w2) in enumerate(fam):
            g, o = greatest_linear_bisim(lhm, w1, w2), oracle_linear_gfp(w1, w2)
            if not (g == observability_kernel(w1, w2) == o and g.basis == o.basis):
                bad.append((labels, k))
    verdict(10, not bad, f"200 rational automaton pairs, dims <= 4, canonical bases equal; failures={bad[:3]}")


# ------------------------------------------------------------------ 11

def test_c11_hierarchy(verdict):
    logics = [get_logic(n) for n in SET_LOGICS]
    stats = {"T": 0, "preco": 0, "relations": 0}
    bad = []

    def survey(a, b):
        for B in relations(a.n, b.n):
            stats["relations"] += 1
            t, p = check_T_bisim(a, b, B), check_precocongruence(a, b, B)
            stats["T"] += t
            stats["preco"] += p
            if (t or p) and not all(check_rho_bisim(lg, a, b, B).verdict for lg in logics):
                bad.append((a, b, B))

    # every system pair and every relation with n1 + n2 <= 4, one label
    for n1 in range(1, 4):
        for n2 in range(1, 5 - n1):
            for a in all_lts(n1):
                for b in all_lts(n2):
                    survey(a, b)
    # n1 + n2 in {5, 6}: every relation on seeded system pairs
    shapes = [(1, 4), (4, 1), (2, 3), (3, 2), (1, 5), (5, 1), (2, 4), (4, 2), (3, 3)]
    for k in range(180):
        r = random.Random(f"c11:{k}")
        n1, n2 = shapes[k % len(shapes)]
        labels = ["a", "b"][: 1 + k % 2]
        dens = r.choice((0.25, 0.4, 0.6))
        survey(random_lts(r, n1, labels, dens), random_lts(r, n2, labels, dens))
    # Kripke models too, where valuations must agree
    for k in range(60):
        r = random.Random(f"c11k:{k}")
        n1, n2 = shapes[k % len(shapes)]
        a, b = random_kripke(r, n1, ["p"], 0.4), random_kripke(r, n2, ["p"], 0.4)
        for B in relations(n1, n2):
            if (check_T_bisim(a, b, B) or check_precocongruence(a, b, B)) and \
                    not check_rho_bisim(get_logic("kripke"), a, b, B).verdict:
                bad.append((a, b, B))
    verdict(11, not bad and stats["T"] > 0 and stats["preco"] > 0,
            f"{stats['relations']} relations, {stats['T']} T-bisimulations, {stats['preco']} precocongruences; "
            f"failures={len(bad)}")


# ------------------------------------------------------------------ 12

def test_c12_cli_determinism(verdict, tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)

    d = {k: str(DATA / f"{k}.json") for k in ("abc_sum", "ab_ac", "one_step", "fork", "p0q0", "wa_scalar",
                                                 "wa_shift", "wa_pair", "kripke")}
    a, b, c, B, C = NON_FULL
    ma, mb, mc = (write(f"{n}.json", serialize_model(m)) for n, m in (("na", a), ("nb", b), ("nc", c)))
    rb, rc = write("rb.json", {"pairs": B.to_json()}), write("rc.json", {"pairs": C.to_json()})
    r1 = write("r1.json", {"pairs": [["x0", "y0"]]})
    r2 = write("r2.json", {"pairs": [["x1", "y1"], ["x1", "y2"]]})
    commands = [
        ["check", d["abc_sum"], d["ab_ac"], d["p0q0"], "--logic", "trace"],
        ["check", d["wa_scalar"], d["wa_shift"], d["wa_pair"]],
        ["gfp", d["one_step"], d["fork"]],
        ["gfp", d["abc_sum"], d["ab_ac"], "--logic", "pml"],
        ["gfp", d["wa_scalar"], d["wa_shift"]],
        ["logeq", d["abc_sum"], d["ab_ac"], "--logic", "trace"],
        ["compare", d["abc_sum"], d["ab_ac"], "--logic", "trace"],
        ["compare", d["kripke"], d["kripke"]],
        ["compose", ma, mb, mc, rb, rc],
        ["join", d["one_step"], d["fork"], r1, r2],
        ["translate", "<a><b>T", "--model", d["abc_sum"]],
        ["oracle", "--seeds", "10", "--sizes", "2x2,3x3"],
        ["oracle", "--kind", "wa", "--sizes", "2x2", "--seeds", "10"],
    ]
    unstable = []
    for cmd in commands:
        for fmt in ("json", "text"):
            outs = set()
            for threads in ("1", "4"):
                env = dict(os.environ, RHOBISIM_THREADS=threads)
                for _ in range(3):
                    p = subprocess.run([sys.executable, "-m", "rhobisim.cli", *cmd, "--format", fmt],
                                       capture_output=True, env=env, check=False)
                    outs.add((p.returncode, p.stdout))
            if len(outs) != 1:
                unstable.append((cmd[0], fmt))
    verdict(12, not unstable,
            f"{len(commands)} commands x 2 formats x 3 runs x threads {{1,4}} byte-identical; unstable={unstable}")

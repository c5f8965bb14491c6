"""rhobisim command line.

Exit codes: 0 bisimulation / success, 1 not a bisimulation, 2 usage or parse
error, 3 oracle mismatch.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .engine import check_rho_bisim, greatest_rho_bisim
from .formulas import FormulaSyntaxError, parse_formula
from .linear import SubspaceRelation, check_linear_bisim, linear_fixpoint, subspace_from_rows
from .logics import LogicError, eval_formula, get_logic, theory_kernel
from .models import ModelError, WeightedAutomaton, validate_model
from .relations import CoherentPairBoundError, Relation, ShapeError, compose, is_full, join

SCHEMA = "rhobisim-report/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ inputs

class Inputs:
    """Reads input files once and keeps a digest of their bytes."""

    def __init__(self):
        self.h = hashlib.sha256()

    def read(self, path: str) -> object:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror}") from exc
        self.h.update(len(data).to_bytes(8, "big"))
        self.h.update(data)
        try:
            return json.loads(data)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON: {exc}") from exc

    def model(self, path: str):
        try:
            return validate_model(self.read(path))
        except ModelError as exc:
            raise UsageError(f"{path}: {exc}") from exc

    def digest(self) -> str:
        return self.h.hexdigest()


def _state(m, v, path: str) -> int:
    try:
        return m.state_index(v)
    except (KeyError, ValueError, IndexError, TypeError) as exc:
        raise UsageError(f"{path}: unknown state {v!r}") from exc


def load_relation(doc, m1, m2, path: str) -> Relation:
    if isinstance(doc, dict) and set(doc) == {"pairs"}:
        doc = doc["pairs"]
    if not isinstance(doc, list) or any(not isinstance(p, list) or len(p) != 2 for p in doc):
        raise UsageError(f'{path}: relation must be {{"pairs": [[i, j], ...]}}')
    return Relation.from_pairs(m1.n, m2.n, [(_state(m1, i, path), _state(m2, j, path)) for i, j in doc])


def load_subspace(doc, w1, w2, path: str) -> SubspaceRelation:
    if isinstance(doc, dict) and set(doc) == {"rows"}:
        doc = doc["rows"]
    if not isinstance(doc, list) or any(not isinstance(r, list) for r in doc):
        raise UsageError(f'{path}: subspace must be a list of rows or {{"rows": [...]}}')
    return subspace_from_rows(w1, w2, doc)


def load_rel(inputs: Inputs, path: str, m1, m2):
    doc = inputs.read(path)
    if isinstance(m1, WeightedAutomaton):
        return load_subspace(doc, m1, m2, path)
    return load_relation(doc, m1, m2, path)


def pick_logic(name: str | None, m):
    if name is None:
        name = "linear-hm" if isinstance(m, WeightedAutomaton) else ("kripke" if m.props else "hm")
    return get_logic(name)


def named_pairs(B: Relation, m1, m2) -> list[list[str]]:
    return [[m1.states[i], m2.states[j]] for i, j in B.pairs()]


def rel_json(B, m1, m2) -> dict:
    if isinstance(B, SubspaceRelation):
        return {"rows": B.to_json(), "rank": B.rank}
    return {"pairs": B.to_json(), "named": named_pairs(B, m1, m2), "size": len(B)}


def witness_json(rep, m1, m2):
    w = rep.witness
    if w is None:
        return None
    if isinstance(m1, WeightedAutomaton):
        return w.to_json(m1.field)
    out = w.to_json()
    out["named"] = [m1.states[w.pair[0]], m2.states[w.pair[1]]]
    return out


# ---------------------------------------------------------------- commands

def cmd_check(args, inputs: Inputs):
    m1, m2 = inputs.model(args.model1), inputs.model(args.model2)
    logic = pick_logic(args.logic, m1)
    B = load_rel(inputs, args.relation, m1, m2)
    rep = check_linear_bisim(logic, m1, m2, B) if isinstance(B, SubspaceRelation) else check_rho_bisim(logic, m1, m2, B)
    res = {"verdict": rep.verdict, "relation": rel_json(B, m1, m2), "witness": witness_json(rep, m1, m2)}
    return logic.name, res, EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_gfp(args, inputs: Inputs):
    m1, m2 = inputs.model(args.model1), inputs.model(args.model2)
    logic = pick_logic(args.logic, m1)
    if isinstance(m1, WeightedAutomaton):
        B, rep = linear_fixpoint(logic, m1, m2)
    else:
        B, rep = greatest_rho_bisim(logic, m1, m2)
    return logic.name, {"relation": rel_json(B, m1, m2), "iterations": rep.iterations}, EXIT_OK


def cmd_logeq(args, inputs: Inputs):
    m1, m2 = inputs.model(args.model1), inputs.model(args.model2)
    logic = pick_logic(args.logic, m1)
    K = theory_kernel(logic, m1, m2)
    return logic.name, {"relation": rel_json(K, m1, m2)}, EXIT_OK


def cmd_compare(args, inputs: Inputs):
    from .zoo import comparison_table, hennessy_milner_check

    m1, m2 = inputs.model(args.model1), inputs.model(args.model2)
    logic = pick_logic(args.logic, m1)
    if isinstance(m1, WeightedAutomaton):
        return logic.name, hennessy_milner_check(logic, m1, m2), EXIT_OK
    res = comparison_table(logic, m1, m2)
    res.pop("logic")
    return logic.name, res, EXIT_OK


def cmd_compose(args, inputs: Inputs):
    ms = [inputs.model(p) for p in (args.model1, args.model2, args.model3)]
    logic = pick_logic(args.logic, ms[0])
    if isinstance(ms[0], WeightedAutomaton):
        raise UsageError("compose works on LTS and Kripke models")
    B = load_rel(inputs, args.rel12, ms[0], ms[1])
    C = load_rel(inputs, args.rel23, ms[1], ms[2])
    BC = compose(B, C)
    v = [check_rho_bisim(logic, ms[0], ms[1], B), check_rho_bisim(logic, ms[1], ms[2], C),
         check_rho_bisim(logic, ms[0], ms[2], BC)]
    res = {
        "first": {"verdict": v[0].verdict, "full": is_full(B)},
        "second": {"verdict": v[1].verdict, "full": is_full(C)},
        "composite": {"verdict": v[2].verdict, "full": is_full(BC), "relation": rel_json(BC, ms[0], ms[2]),
                      "witness": witness_json(v[2], ms[0], ms[2])},
    }
    return logic.name, res, EXIT_OK if v[2].verdict else EXIT_FAIL


def cmd_join(args, inputs: Inputs):
    m1, m2 = inputs.model(args.model1), inputs.model(args.model2)
    logic = pick_logic(args.logic, m1)
    rels = [load_rel(inputs, p, m1, m2) for p in args.relations]
    if isinstance(m1, WeightedAutomaton):
        J = SubspaceRelation.zero(m1.dim, m2.dim, m1.field)
        for r in rels:
            J = J | r
        rep = check_linear_bisim(logic, m1, m2, J)
        parts = [check_linear_bisim(logic, m1, m2, r).verdict for r in rels]
    else:
        J = join(rels, m1.n, m2.n)
        rep = check_rho_bisim(logic, m1, m2, J)
        parts = [check_rho_bisim(logic, m1, m2, r).verdict for r in rels]
    res = {"parts": parts, "verdict": rep.verdict, "relation": rel_json(J, m1, m2), "witness": witness_json(rep, m1, m2)}
    return logic.name, res, EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_translate(args, inputs: Inputs):
    from .zoo import translate_formula

    phi = parse_formula(args.formula)
    tau = translate_formula(phi)
    res = {"source": str(phi), "target": str(tau)}
    if args.model:
        m = inputs.model(args.model)
        e1, e2 = eval_formula(get_logic("trace"), m, phi), eval_formula(get_logic("hm"), m, tau)
        res["source_states"] = [m.states[i] for i in range(m.n) if e1 >> i & 1]
        res["target_states"] = [m.states[i] for i in range(m.n) if e2 >> i & 1]
        res["preserved"] = e1 == e2
    return "trace->hm", res, EXIT_OK


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            a, b = part.lower().split("x")
            out.append((int(a), int(b)))
        except ValueError as exc:
            raise UsageError(f"bad size {part!r}; expected like 3x3") from exc
    return out


def cmd_oracle(args, inputs: Inputs):
    from .oracle import InstanceFamily, OracleBoundError, run_suite

    if args.spec:
        doc = inputs.read(args.spec)
        if not isinstance(doc, dict):
            raise UsageError(f"{args.spec}: oracle spec must be an object")
        doc = dict(doc)
        logics = doc.pop("logics", None)
    else:
        doc = {"kind": args.kind, "sizes": _parse_sizes(args.sizes), "labels": args.labels,
               "seed": args.seed, "count": args.seeds}
        logics = args.logic.split(",") if args.logic else None
    try:
        family = InstanceFamily(**doc)
    except TypeError as exc:
        raise UsageError(f"bad oracle spec: {exc}") from exc
    try:
        res = run_suite(family, logics)
    except OracleBoundError as exc:
        raise UsageError(str(exc)) from exc
    return ",".join(logics) if logics else "default", res, EXIT_OK if res["ok"] else EXIT_ORACLE


# ------------------------------------------------------------------ output

def render_text(report: dict) -> str:
    lines = []

    def emit(prefix: str, v):
        if isinstance(v, dict) and v:
            for k, x in v.items():
                emit(f"{prefix}.{k}" if prefix else k, x)
        else:
            lines.append(f"{prefix}: {json.dumps(v)}")

    emit("", report)
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rhobisim", description="logic-induced bisimulations for finite systems")
    p.add_argument("--version", action="version", version=f"rhobisim {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help):
        s = sub.add_parser(name, parents=[common], help=help)
        s.set_defaults(fn=fn)
        return s

    s = cmd("check", cmd_check, "check whether a relation is a rho-bisimulation")
    s.add_argument("model1"); s.add_argument("model2"); s.add_argument("relation")
    s.add_argument("--logic")
    s = cmd("gfp", cmd_gfp, "greatest rho-bisimulation")
    s.add_argument("model1"); s.add_argument("model2"); s.add_argument("--logic")
    s = cmd("logeq", cmd_logeq, "logical equivalence (theory kernel)")
    s.add_argument("model1"); s.add_argument("model2"); s.add_argument("--logic")
    s = cmd("compare", cmd_compare, "compare the classical equivalences")
    s.add_argument("model1"); s.add_argument("model2"); s.add_argument("--logic")
    s = cmd("compose", cmd_compose, "compose two relations and check the composite")
    for a in ("model1", "model2", "model3", "rel12", "rel23"):
        s.add_argument(a)
    s.add_argument("--logic")
    s = cmd("join", cmd_join, "join relations and check the result")
    s.add_argument("model1"); s.add_argument("model2"); s.add_argument("relations", nargs="+")
    s.add_argument("--logic")
    s = cmd("translate", cmd_translate, "translate a trace formula into Hennessy-Milner logic")
    s.add_argument("formula"); s.add_argument("--model")
    s = cmd("oracle", cmd_oracle, "run the brute-force oracle suite")
    s.add_argument("--kind", choices=("lts", "kripke", "wa"), default="lts")
    s.add_argument("--sizes", default="3x3")
    s.add_argument("--labels", type=int, default=1)
    s.add_argument("--seeds", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--logic", help="comma-separated logic names")
    s.add_argument("--spec", help="JSON file with InstanceFamily fields (and optional logics)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = Inputs()
    t0 = time.perf_counter()
    try:
        logic, result, code = args.fn(args, inputs)
    except (UsageError, ModelError, LogicError, FormulaSyntaxError, ShapeError, CoherentPairBoundError, ValueError) as exc:
        print(f"rhobisim {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "logic": logic,
        "inputs": {"sha256": inputs.digest()},
        "result": result,
        "exit": code,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Show a(b+c) versus ab+ac under trace logic and Hennessy-Milner logic.

Both processes have the same traces, so trace logic cannot tell p0 from q0,
yet (p0, q0) is not in any trace rho-bisimulation.  Under hm logic the two
notions agree again.
"""
import json
from pathlib import Path

from rhobisim import get_logic, greatest_rho_bisim, load_model, theory_kernel
from rhobisim.zoo import hennessy_milner_check

DATA = Path(__file__).resolve().parents[1] / "data"


def main():
    p, q = load_model(DATA / "abc_sum.json"), load_model(DATA / "ab_ac.json")
    for name in ("trace", "hm"):
        lg = get_logic(name)
        kern = theory_kernel(lg, p, q)
        gfp, rep = greatest_rho_bisim(lg, p, q)
        print(f"{name}:")
        print(f"  logical equivalence  {[(p.states[i], q.states[j]) for i, j in kern.pairs()]}")
        print(f"  rho-bisimilarity     {[(p.states[i], q.states[j]) for i, j in gfp.pairs()]}"
              f"  ({rep.iterations} iterations)")
    rep = hennessy_milner_check(get_logic("trace"), p, q)
    print("separating formulas:", json.dumps(rep.get("hm_witness", {})))


if __name__ == "__main__":
    main()

"""Tally how the five equivalences relate on random LTS pairs.

    python3 scripts/hierarchy_survey.py --pairs 300 --logic trace
"""
import argparse
import random
from collections import Counter

from rhobisim import get_logic
from rhobisim.oracle import random_lts
from rhobisim.zoo import comparison_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--max-states", type=int, default=4)
    ap.add_argument("--labels", type=int, default=2)
    ap.add_argument("--logic", default="trace")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    lg = get_logic(args.logic)
    labels = [chr(ord("a") + i) for i in range(args.labels)]
    tally: dict[tuple[str, str], Counter] = {}
    for k in range(args.pairs):
        rng = random.Random(f"{args.seed}:{k}")
        m1 = random_lts(rng, rng.randint(1, args.max_states), labels, rng.choice((0.2, 0.35, 0.5)))
        m2 = random_lts(rng, rng.randint(1, args.max_states), labels, rng.choice((0.2, 0.35, 0.5)))
        table = comparison_table(lg, m1, m2)["table"]
        for a, row in table.items():
            for b, sym in row.items():
                if a < b:
                    tally.setdefault((a, b), Counter())[sym] += 1
    print(f"{args.pairs} pairs, logic {lg.name}")
    for (a, b), c in sorted(tally.items()):
        counts = "  ".join(f"{s}:{c[s]}" for s in "=<>|" if c[s])
        print(f"  {a:17s} vs {b:17s} {counts}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Tabulate the measured integrality gaps of the worst-case families.

For each family the exact optimum (brute force) is divided by the cost of the
companion fractional LP solution; the local family converges to b+1 as the
edge count grows, the robust/global families sit at b+1 exactly.
"""

import argparse

from eccsolve import (
    ProblemSpec,
    brute_global,
    brute_local,
    brute_robust,
    gen_ig_global,
    gen_ig_local,
    gen_ig_robust,
    verify_fractional,
)
from eccsolve.rational import Q, format_q


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-budget", type=int, default=3)
    ap.add_argument("--max-edges", type=int, default=8)
    args = ap.parse_args()

    print("local family: gap = OPT / frac = b+1 - b(b+1)/m")
    print(f"{'b':>3} {'m':>3} {'nodes':>6} {'OPT':>5} {'frac':>7} {'gap':>9}")
    for b in range(1, args.max_budget + 1):
        for m in range(b + 1, args.max_edges + 1):
            h, frac = gen_ig_local(b, m)
            verdict = verify_fractional(h, ProblemSpec.local(b), frac)
            assert verdict.feasible
            opt, _ = brute_local(h, b)
            print(
                f"{b:>3} {m:>3} {h.node_count:>6} {format_q(opt):>5} "
                f"{format_q(verdict.cost):>7} {format_q(opt / verdict.cost):>9}"
            )

    for name, gen, brute, spec_of in (
        ("robust", gen_ig_robust, brute_robust, ProblemSpec.robust),
        ("global", gen_ig_global, brute_global, ProblemSpec.global_budget),
    ):
        print(f"\n{name} family: gap = b+1 exactly")
        print(f"{'b':>3} {'OPT':>5} {'frac':>7} {'gap':>5}")
        for b in range(0, 2 * args.max_budget + 1):
            h, frac = gen(b)
            verdict = verify_fractional(h, spec_of(b), frac)
            assert verdict.feasible
            opt, _ = brute(h, b)
            gap = opt / verdict.cost
            assert gap == b + 1
            print(f"{b:>3} {format_q(opt):>5} {format_q(verdict.cost):>7} {format_q(gap):>5}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Wall-time scaling of the local solver on a doubling family of random
instances. Sizes are interleaved each round and the per-size minimum is kept,
so machine drift hits every size evenly."""

import argparse
import gc
import time

from eccsolve import ProblemSpec, gen_random, solve_local


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--base-edges", type=int, default=25_000)
    ap.add_argument("--doublings", type=int, default=4)
    ap.add_argument("--budget", type=int, default=2)
    ap.add_argument("--colors", type=int, default=8)
    ap.add_argument("--max-rank", type=int, default=4)
    ap.add_argument("--rounds", type=int, default=4)
    args = ap.parse_args()

    sizes = [args.base_edges << i for i in range(args.doublings + 1)]
    spec = ProblemSpec.local(args.budget)
    print("building instances...")
    instances = [
        gen_random(max(m // 4, 1), m, args.colors, args.max_rank, seed=m) for m in sizes
    ]
    solve_local(instances[-1], spec)  # warmup

    best = [None] * len(sizes)
    for _ in range(args.rounds):
        for i, h in enumerate(instances):
            gc.collect()
            gc.disable()
            t0 = time.perf_counter()
            solve_local(h, spec)
            dt = time.perf_counter() - t0
            gc.enable()
            if best[i] is None or dt < best[i]:
                best[i] = dt

    print(f"{'edges':>9} {'incidences':>11} {'seconds':>9} {'x prev':>7}")
    prev = None
    for h, m, t in zip(instances, sizes, best):
        ratio = "" if prev is None else f"x{t / prev:.2f}"
        print(f"{m:>9} {h.incidence_size():>11} {t:>9.3f} {ratio:>7}")
        prev = t


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Timing comparison between the jit kernels and the fallback path.

Runs each workload twice in subprocesses, once as-is and once with
HOMALG_NO_NUMBA=1, checks that both modes agree on the answers, and
prints a small table.  Usage:

    python benchmarks/bench_kernels.py
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def bench_brute_force():
    from homalg import complete, cycle, hom_bruteforce

    # ~60 million candidate maps in one enumeration
    return hom_bruteforce(cycle(10), complete(6), cap=100_000_000)


def bench_backtracking():
    from homalg import hom_count

    rng = random.Random(7)
    total = 0
    for _ in range(300):
        ng = rng.randint(4, 6)
        nh = rng.randint(10, 14)
        g = _rand(rng, ng, 0.6)
        h = _rand(rng, nh, 0.5)
        total += hom_count(g, h) % 1_000_003
    return total


def bench_power_graphs():
    from homalg import complete, count_loops, cycle, power

    total = 0
    for _ in range(10):
        p = power(complete(4), cycle(5))
        total += p.n_edges + count_loops(p)
    return total


def _rand(rng, n, p):
    from homalg.graphs import Graph

    edges = [(u, u) for u in range(n) if rng.random() < 0.2]
    edges += [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


WORKLOADS = [
    ("brute-force enumeration (60M maps)", bench_brute_force),
    ("backtracking counts (300 pairs)", bench_backtracking),
    ("power construction (10 x 4^C5)", bench_power_graphs),
]


def run_current_mode():
    from homalg import kernels

    results = {"numba": kernels.NUMBA_ENABLED}
    for name, fn in WORKLOADS:
        fn()  # warm-up absorbs jit compilation
        start = time.perf_counter()
        checksum = fn()
        results[name] = {
            "seconds": time.perf_counter() - start,
            "checksum": str(checksum),
        }
    json.dump(results, sys.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode-run", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.mode_run:
        run_current_mode()
        return
    modes = {}
    for label, flag in (("jit", None), ("fallback", "1")):
        env = dict(os.environ)
        env.pop("HOMALG_NO_NUMBA", None)
        if flag is not None:
            env["HOMALG_NO_NUMBA"] = flag
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--mode-run"],
            env=env, capture_output=True, text=True, check=True,
        )
        modes[label] = json.loads(proc.stdout)
    if not modes["jit"]["numba"]:
        print("note: numba unavailable, both columns ran the fallback kernels")
    print(f"{'workload':<36} {'jit':>9} {'fallback':>10} {'speedup':>9}")
    for name, _ in WORKLOADS:
        j = modes["jit"][name]
        f = modes["fallback"][name]
        if j["checksum"] != f["checksum"]:
            raise SystemExit(f"mode disagreement on {name!r}")
        ratio = f["seconds"] / max(j["seconds"], 1e-9)
        print(f"{name:<36} {j['seconds']:>8.2f}s {f['seconds']:>9.2f}s {ratio:>8.1f}x")


if __name__ == "__main__":
    main()

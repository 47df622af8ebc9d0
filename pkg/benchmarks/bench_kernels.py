"""Compare the compiled and pure-Python bitset kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each workload runs on both backends; results must be identical, and the
best-of-N wall time is reported per backend.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
import time

from ksgraph import kernels
from ksgraph.frames import Frame, build_graph, resolve_bases

CABELLO = [
    (0, 0, 1, 0), (1, 1, 0, 0), (1, -1, 0, 0), (0, 1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0),
    (1, -1, 1, -1), (1, -1, -1, 1), (0, 0, 1, 1), (1, 1, 1, 1), (0, 1, 0, -1), (1, 0, 0, 1),
    (1, 0, 0, -1), (0, 1, -1, 0), (1, 1, -1, 1), (1, 1, 1, -1), (-1, 1, 1, 1), (0, 0, 0, 1),
]  # fmt: skip


def random_adjacency(rng: random.Random, n: int, p: float) -> list[int]:
    adj = [0] * n
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def random_hypergraph(rng: random.Random, n: int, m: int, k: int) -> list[int]:
    return [sum(1 << p for p in rng.sample(range(n), k)) for _ in range(m)]


def workloads(seed: int):
    rng = random.Random(seed)
    frame = Frame.from_coords(CABELLO)
    graph = build_graph(frame)
    pos, adj = graph.bit_masks()
    bases = [sum(1 << pos[i] for i in b.members) for b in resolve_bases(frame)]

    yield "cliques: Cabello-18 graph", lambda b: kernels.maximal_cliques(adj, backend=b)
    dense = [random_adjacency(rng, 64, 0.6) for _ in range(3)]
    yield "cliques: 3 x G(64, 0.6)", lambda b: [kernels.maximal_cliques(a, backend=b) for a in dense]
    sparse = [random_adjacency(rng, 64, 0.15) for _ in range(5)]
    yield "cliques: 5 x G(64, 0.15)", lambda b: [kernels.maximal_cliques(a, backend=b) for a in sparse]
    yield "search: Cabello-18 exhaustive", lambda b: kernels.ks_search(18, bases, backend=b)
    hyper = [random_hypergraph(rng, 64, 44, 4) for _ in range(200)]
    yield "search: 200 x random 4-uniform (64 pos, 44 bases)", lambda b: [kernels.ks_search(64, h, backend=b) for h in hyper]
    hard = [random_hypergraph(rng, 64, 36, 3) for _ in range(200)]
    yield "search: 200 x random 3-uniform (64 pos, 36 bases)", lambda b: [kernels.ks_search(64, h, backend=b) for h in hard]


def best_of(fn, backend: str, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend)
        best = min(best, time.perf_counter() - t)
    return best, result


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is timed", file=sys.stderr)
    header = f"{'workload':52} " + " ".join(f"{b + ' ms':>12}" for b in backends)
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads(args.seed):
        times, results = [], []
        for b in backends:
            t, r = best_of(fn, b, args.repeat)
            times.append(t)
            results.append(r)
        if any(r != results[0] for r in results):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        row = f"{name:52} " + " ".join(f"{t * 1000:12.3f}" for t in times)
        if len(times) == 2:
            row += f" {times[0] / times[1]:7.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())

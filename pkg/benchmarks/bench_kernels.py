"""Time the compiled kernels against their uncompiled twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

The compiled column is empty when numba is unavailable or RS_DISABLE_JIT is
set. Results agree between the two paths or the script exits non-zero.
"""
import argparse
import sys
import time
from fractions import Fraction

import numpy as np

from rainbow_subdiv import kernels
from rainbow_subdiv._jit import JIT_ENABLED
from rainbow_subdiv.density import density_network
from rainbow_subdiv.instances import gen_hypercube, gen_random_proper
from rainbow_subdiv.oracle import SubsetTable


def best_of(fn, args, repeat):
    out = fn(*args)  # warm-up, includes compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    g = gen_random_proper(150, 0.3, "greedy", 1)
    verts, le = g.full_view().local_arrays()
    tails, heads, cap, s, t, _ = density_network(verts.size, le, Fraction(2 * g.m, g.n) / 2)
    yield "max_flow (n=150)", kernels._py_max_flow, kernels.max_flow, (verts.size + 2, tails, heads, cap, s, t)

    vok = np.ones(g.n, dtype=bool)
    eok = np.ones(g.m, dtype=bool)
    bad = np.zeros(g.k, dtype=bool)
    yield ("rainbow_bfs (n=150)", kernels._py_rainbow_bfs, kernels.rainbow_bfs,
           (g.indptr, g.nbr, g.nbr_colour, g.nbr_edge, vok, eok, bad, 0, 6))

    small = gen_random_proper(16, 0.5, "greedy", 2)
    adj = SubsetTable(small).adjmask
    yield "subset_edge_counts (v=16)", kernels._py_subset_edge_counts, kernels.subset_edge_counts, (adj,)

    q = gen_hypercube(5)
    yield ("rainbow_cycle (Q5)", kernels._py_rainbow_cycle, kernels.rainbow_cycle,
           (q.indptr, q.nbr, q.nbr_colour, q.k, q.n))


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'kernel':28s} {'python (s)':>12s} {'compiled (s)':>13s} {'speed-up':>9s}")
    ok = True
    for name, py, fast, a in cases():
        tp, rp = best_of(py, a, args.repeat)
        if JIT_ENABLED:
            tf, rf = best_of(fast, a, args.repeat)
            ok &= same(rp, rf)
            print(f"{name:28s} {tp:12.4f} {tf:13.5f} {tp / tf:8.1f}x")
        else:
            print(f"{name:28s} {tp:12.4f} {'':>13s} {'':>9s}")
    if not ok:
        print("compiled and python kernels disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from dlgraph import _kernels_py
from dlgraph.corpus import random_arcs, random_graph, random_poset
from dlgraph.gpa import complement
from dlgraph.graph import path_graph, product_graph
from dlgraph.order import chain_lattice, enumerate_downsets, product_lattice

try:
    from dlgraph import _kernels
except ImportError:
    _kernels = None


def cases():
    rng = random.Random(7)

    g = product_graph(path_graph(6), path_graph(6))
    lat = product_lattice(chain_lattice(6), chain_lattice(6))
    yield "compatible, 6x6 king grid", "compatible", (g.matrix, lat.meet_array, lat.join_array)

    p = random_poset(rng, 14, 0.15)
    arcs = random_arcs(rng, p)
    downs = np.array(enumerate_downsets(p), dtype=np.uint64)
    bad = np.array([1 << x | 1 << y for x, y in complement(p, arcs)], dtype=np.uint64)
    yield "gpa_adjacency, %d downsets" % len(downs), "gpa_adjacency", (downs, bad)

    for n in (40, 120):
        yield "dispensable, %d vertices" % n, "dispensable", (random_graph(rng, n, 0.7).matrix,)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return
    print("%-32s %12s %12s %9s" % ("kernel", "python (s)", "cython (s)", "speedup"))
    for label, name, call_args in cases():
        slow = getattr(_kernels_py, name)
        fast = getattr(_kernels, name)
        t_py = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        print("%-32s %12.5f %12.5f %8.1fx" % (label, t_py, t_cy, t_py / t_cy if t_cy else float("inf")))


if __name__ == "__main__":
    main()

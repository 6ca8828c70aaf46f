import os
import random
import subprocess
import sys

import numpy as np
import pytest

from dlgraph import _backend, _kernels_py
from dlgraph.corpus import gpa_corpus, random_graph
from dlgraph.gpa import complement
from dlgraph.oracle import labelled_lattices
from dlgraph.order import enumerate_downsets


def _compiled():
    try:
        from dlgraph import _kernels
    except ImportError:
        pytest.skip("extension not built")
    return _kernels


def test_backend_selected():
    assert _backend.BACKEND in ("cython", "python")


def test_env_forces_fallback():
    code = "from dlgraph import BACKEND; print(BACKEND)"
    env = dict(os.environ, DLGRAPH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_compatible_agrees():
    fast = _compiled()
    rng = random.Random(81)
    for _ in range(400):
        n = rng.randint(1, 5)
        g = random_graph(rng, n, rng.random())
        lat = rng.choice(labelled_lattices(n))
        args = (g.matrix, lat.meet_array, lat.join_array)
        assert bool(fast.compatible(*args)) == bool(_kernels_py.compatible(*args))


def test_gpa_adjacency_agrees():
    fast = _compiled()
    for p, arcs in gpa_corpus(82, 200):
        downs = np.array(enumerate_downsets(p), dtype=np.uint64)
        bad = np.array([1 << x | 1 << y for x, y in complement(p, arcs)], dtype=np.uint64)
        assert np.array_equal(np.asarray(fast.gpa_adjacency(downs, bad)), _kernels_py.gpa_adjacency(downs, bad))


def test_gpa_adjacency_empty_bad():
    fast = _compiled()
    downs = np.array([0, 1, 3], dtype=np.uint64)
    out = np.asarray(fast.gpa_adjacency(downs, np.zeros(0, dtype=np.uint64)))
    assert out.tolist() == [[1, 1, 1]] * 3


def test_dispensable_agrees():
    fast = _compiled()
    rng = random.Random(83)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 12), rng.random())
        assert np.array_equal(np.asarray(fast.dispensable(g.matrix)), _kernels_py.dispensable(g.matrix))


def test_dispensable_wide_graph():
    # More than 64 vertices exercises multi-word bitsets.
    fast = _compiled()
    rng = random.Random(84)
    g = random_graph(rng, 90, 0.9)
    assert np.array_equal(np.asarray(fast.dispensable(g.matrix)), _kernels_py.dispensable(g.matrix))


def test_library_results_independent_of_backend():
    code = (
        "from dlgraph.corpus import gpa_corpus; from dlgraph.gpa import construct_gpa;"
        "print([construct_gpa(p, a).adj for p, a in gpa_corpus(85, 40)])"
    )
    outs = []
    for flag in ("", "1"):
        env = dict(os.environ, DLGRAPH_PURE_PYTHON=flag)
        proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]

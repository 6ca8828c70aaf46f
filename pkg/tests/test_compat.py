import random

import numpy as np
import pytest

import naive
from dlgraph.compat import (
    check_compatible,
    check_hasse_subgraph,
    check_identities,
    is_majority,
    is_polymorphism,
    majority_from_lattice,
)
from dlgraph.corpus import gpa_corpus, random_graph, random_poset
from dlgraph.gpa import construct_gpa
from dlgraph.graph import build_graph, complete_graph, cycle_graph, path_graph
from dlgraph.oracle import labelled_lattices
from dlgraph.order import (
    NotALatticeError,
    chain_lattice,
    downset_lattice,
    lattice_from_order,
    poset_from_covers,
)


def b2_on_cycle():
    # Cycle 0 - a - 1 - b - 0 with 0, a, 1, b = 0, 1, 2, 3; order 0 < a, b < 1.
    return lattice_from_order(poset_from_covers(4, [(0, 1), (0, 3), (1, 2), (3, 2)]))


def test_gpa_with_downset_lattice(fig1):
    p, arcs = fig1
    assert check_compatible(construct_gpa(p, arcs), downset_lattice(p))


def test_four_cycle_with_b2_is_not_compatible():
    # 0 ~ a and 0 ~ b, so join(0, 0) = 0 must be adjacent to join(a, b) = 1; it is not.
    res = check_compatible(cycle_graph(4), b2_on_cycle())
    assert not res
    assert res.witness == (0, 1, 0, 3)


def test_path_with_twisted_chain():
    lat = lattice_from_order(poset_from_covers(3, [(0, 2), (2, 1)]))
    res = check_compatible(path_graph(3), lat)
    assert not res
    u, u2, v, v2 = res.witness
    g = path_graph(3)
    assert g.adjacent(u, u2) and g.adjacent(v, v2)
    assert not g.adjacent(lat.meet[u][v], lat.meet[u2][v2]) or not g.adjacent(lat.join[u][v], lat.join[u2][v2])


def test_witness_is_lexicographically_least():
    rng = random.Random(41)
    lattices = labelled_lattices(4)
    for _ in range(100):
        g = random_graph(rng, 4, rng.random())
        lat = rng.choice(lattices)
        res = check_compatible(g, lat)
        if res:
            continue
        edges = [(u, v) for u in range(4) for v in range(4) if g.adjacent(u, v)]
        bad = [
            (u, u2, v, v2)
            for u, u2 in edges
            for v, v2 in edges
            if not g.adjacent(lat.meet[u][v], lat.meet[u2][v2]) or not g.adjacent(lat.join[u][v], lat.join[u2][v2])
        ]
        assert res.witness == min(bad)


def test_compatible_matches_naive(backend):
    rng = random.Random(42)
    for _ in range(300):
        n = rng.randint(1, 5)
        g = random_graph(rng, n, rng.random())
        lat = rng.choice(labelled_lattices(n))
        adj = g.matrix.astype(bool).tolist()
        want = naive.compatible(adj, [list(r) for r in lat.meet], [list(r) for r in lat.join])
        assert bool(check_compatible(g, lat, impl=backend)) == want


def test_identities_on_corpus():
    for p, arcs in gpa_corpus(43, 100):
        g = construct_gpa(p, arcs)
        lat = downset_lattice(p)
        assert check_identities(g, lat)
        # Covers are edges only for connected graphs; a missing loop arc can disconnect.
        if g.is_connected():
            assert check_hasse_subgraph(g, lat)


def test_min_max_fails_on_chain():
    g = build_graph(3, [(0, 2)])
    report = check_identities(g, chain_lattice(3))
    assert not report.min_max
    assert report.min_max.witness == (0, 0, 1, 2)
    assert not report


def test_single_vertex_identities():
    assert check_identities(build_graph(1, []), chain_lattice(1))


def test_hasse_subgraph():
    lat = lattice_from_order(poset_from_covers(3, [(0, 2), (2, 1)]))
    res = check_hasse_subgraph(path_graph(3), lat)
    assert not res and res.witness == (0, 2)
    assert check_hasse_subgraph(complete_graph(4), b2_on_cycle())


def test_majority_identities():
    lat = downset_lattice(poset_from_covers(2, []))
    table = majority_from_lattice(lat)
    assert is_majority(table)
    for x in range(4):
        assert table[x, x, x] == x
        for y in range(4):
            assert table[x, x, y] == x


def test_majority_polymorphism_fig1(fig1):
    p, arcs = fig1
    assert is_polymorphism(construct_gpa(p, arcs), majority_from_lattice(downset_lattice(p)))


def test_majority_not_polymorphism_when_incompatible():
    lat = lattice_from_order(poset_from_covers(3, [(0, 2), (2, 1)]))
    res = is_polymorphism(path_graph(3), majority_from_lattice(lat))
    assert not res
    g = path_graph(3)
    table = majority_from_lattice(lat)
    (a, a2), (b, b2), (c, c2) = res.witness
    assert not g.adjacent(table[a, b, c], table[a2, b2, c2])


def test_majority_matches_formula():
    rng = random.Random(44)
    lat = downset_lattice(random_poset(rng, 4))
    t = majority_from_lattice(lat)
    m, j = lat.meet, lat.join
    for x in range(lat.n):
        for y in range(lat.n):
            for z in range(lat.n):
                assert t[x, y, z] == j[j[m[x][y]][m[y][z]]][m[x][z]]
    assert t.dtype == np.int32


def test_size_mismatch():
    with pytest.raises(ValueError):
        check_compatible(path_graph(3), chain_lattice(4))
    with pytest.raises(NotALatticeError):
        lattice_from_order(poset_from_covers(2, []))

"""The graph G(P, A) on the downsets of a poset, and recovering A from a graph.

An arc set is a frozenset of pairs ``(x, y)`` with ``x <= y`` in the poset;
loops ``(x, x)`` are ordinary arcs, and leaving one out forbids every edge
whose endpoints are separated by ``x``.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from dlgraph._backend import kernels
from dlgraph import _kernels_py
from dlgraph.graph import ReflexiveGraph, bits
from dlgraph.order import Lattice, Poset, enumerate_downsets, join_irreducibles

ArcSet = frozenset


def all_arcs(p: Poset) -> frozenset[tuple[int, int]]:
    return frozenset(p.comparabilities())


def all_loops(p: Poset) -> frozenset[tuple[int, int]]:
    return frozenset((x, x) for x in range(p.n))


def validate_arcs(p: Poset, arcs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = frozenset(arcs)
    for x, y in out:
        if not (0 <= x < p.n and 0 <= y < p.n) or not p.leq(x, y):
            raise ValueError("arc (%d, %d) is not a comparability of the poset" % (x, y))
    return out


def complement(p: Poset, arcs: frozenset) -> frozenset[tuple[int, int]]:
    return all_arcs(p) - arcs


def _interval_arcs(p: Poset, x: int, y: int):
    # Every (u, v) with x <= u <= v <= y.
    span = p.up[x] & p.down[y]
    for u in bits(span):
        for v in bits(span & p.up[u]):
            yield u, v


def normalize_arcs(p: Poset, arcs: frozenset) -> frozenset[tuple[int, int]]:
    """Drop useless arcs: keep ``(x, y)`` only if every arc nested inside it is present."""
    arcs = validate_arcs(p, arcs)
    return frozenset(a for a in arcs if all(b in arcs for b in _interval_arcs(p, *a)))


def reduced_complement(p: Poset, arcs: frozenset) -> frozenset[tuple[int, int]]:
    """Missing arcs all of whose strictly nested arcs are present."""
    arcs = validate_arcs(p, arcs)
    out = []
    for a in complement(p, arcs):
        if all(b in arcs or b == a for b in _interval_arcs(p, *a)):
            out.append(a)
    return frozenset(out)


def satisfies_directed_min_max(p: Poset, arcs: frozenset) -> bool:
    return normalize_arcs(p, arcs) == arcs


def construct_gpa(p: Poset, arcs: frozenset) -> ReflexiveGraph:
    """G(P, A) with vertex ``i`` the ``i``-th downset of ``enumerate_downsets(p)``."""
    arcs = validate_arcs(p, arcs)
    downs = enumerate_downsets(p)
    bad = [1 << x | 1 << y for x, y in complement(p, arcs)]
    if p.n <= 64:
        mat = kernels.gpa_adjacency(np.array(downs, dtype=np.uint64), np.array(bad, dtype=np.uint64))
    else:
        # Masks no longer fit in 64 bits; the fallback works on Python ints.
        mat = _kernels_py.gpa_adjacency(downs, bad)
    rows = tuple(int(sum(1 << int(j) for j in np.flatnonzero(row))) for row in mat)
    return ReflexiveGraph(len(downs), rows)


def gpa_adjacent(p: Poset, arcs: frozenset, d: int, e: int) -> bool:
    """Adjacency of two downsets read straight off the definition."""
    left, right = d & ~e, e & ~d
    for x, y in complement(p, arcs):
        pair = 1 << x | 1 << y
        if left & pair == pair or right & pair == pair:
            return False
    return True


def adjacency_alt(p: Poset, arcs: frozenset, d: int, e: int) -> bool:
    """Adjacency via missing arcs: ``x`` in one side forces ``y`` into the other."""
    for y, x in complement(p, arcs):
        if d >> x & 1 and not e >> y & 1:
            return False
        if e >> x & 1 and not d >> y & 1:
            return False
    return True


def extract_arcs(g: ReflexiveGraph, lat: Lattice) -> tuple[Poset, frozenset[tuple[int, int]]]:
    """Recover the arc set on the join-irreducibles of ``lat`` that yields ``g``.

    Vertex ``v`` of ``g`` is lattice element ``v``. Arc ``(y, x)`` is kept when
    the elements for ``down(x) & C_y`` and ``down(x)`` are adjacent, ``C_y``
    being the largest downset avoiding ``y``. Raises ValueError if the
    resulting G(J, A) does not reproduce ``g``.
    """
    if g.n != lat.n:
        raise ValueError("graph has %d vertices, lattice %d elements" % (g.n, lat.n))
    rep = join_irreducibles(lat)
    j = rep.poset
    inv = rep.inverse
    arcs = []
    for y, x in j.comparabilities():
        avoid = j.full_mask & ~j.up[y]
        if g.adjacent(inv[j.down[x] & avoid], inv[j.down[x]]):
            arcs.append((y, x))
    arcs = frozenset(arcs)
    rebuilt = construct_gpa(j, arcs)
    downs = enumerate_downsets(j)
    for a, da in enumerate(downs):
        for b, db in enumerate(downs):
            if rebuilt.adjacent(a, b) != g.adjacent(inv[da], inv[db]):
                raise ValueError("graph is not G(J, A) for the given lattice")
    return j, arcs


def gpa_vertex_names(p: Poset, names: str | None = None) -> list[str]:
    """Readable labels for the downsets, e.g. ``abd``; the empty set is ``0``."""
    names = names or "abcdefghijklmnopqrstuvwxyz"
    out = []
    for d in enumerate_downsets(p):
        out.append("".join(names[x] for x in bits(d)) if d else "0")
    return out

"""Brute-force ground truth on small vertex sets."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from dlgraph.compat import check_compatible, check_hasse_subgraph
from dlgraph.graph import ReflexiveGraph
from dlgraph.order import Lattice, NotALatticeError, Poset, is_distributive, lattice_from_order

MAX_POSET_N = 7
MAX_ORACLE_N = 6


def enumerate_posets(n: int) -> Iterator[Poset]:
    """Every labelled partial order on ``n`` elements, once each.

    Pairs ``(i, j)``, ``i < j``, are decided in lexicographic order as
    incomparable, ``i < j`` or ``j < i``; each choice is closed under
    transitivity and branches that make an earlier "incomparable" pair
    comparable are cut.
    """
    if n > MAX_POSET_N:
        raise ValueError("refusing to enumerate posets on %d > %d elements" % (n, MAX_POSET_N))
    if n < 0:
        raise ValueError("negative size")
    pairs = list(combinations(range(n), 2))

    def comparable(below, i, j):
        return below[j] >> i & 1 or below[i] >> j & 1

    def add(below, above, a, b):
        # a < b, then close: everything <= a goes under everything >= b.
        lo = below[a] | 1 << a
        hi = above[b] | 1 << b
        below = list(below)
        above = list(above)
        for y in range(n):
            if hi >> y & 1:
                below[y] |= lo
        for x in range(n):
            if lo >> x & 1:
                above[x] |= hi
        return below, above

    def rec(k, below, above, incomparable):
        if k == len(pairs):
            yield Poset(n, tuple(below[x] | 1 << x for x in range(n)))
            return
        i, j = pairs[k]
        if comparable(below, i, j):
            yield from rec(k + 1, below, above, incomparable)
            return
        yield from rec(k + 1, below, above, incomparable + [(i, j)])
        for a, b in ((i, j), (j, i)):
            nb, na = add(below, above, a, b)
            if not any(comparable(nb, x, y) for x, y in incomparable):
                yield from rec(k + 1, nb, na, incomparable)

    yield from rec(0, [0] * n, [0] * n, [])


@lru_cache(maxsize=None)
def labelled_lattices(n: int) -> tuple[Lattice, ...]:
    """All lattice orders on ``0..n-1`` (cached)."""
    out = []
    for p in enumerate_posets(n):
        full = p.full_mask
        if not any(d == full for d in p.down) or not any(u == full for u in p.up):
            continue
        try:
            out.append(lattice_from_order(p))
        except NotALatticeError:
            continue
    return tuple(out)


def oracle_recognize(
    g: ReflexiveGraph, distributive_only: bool = True, prune: bool = True, max_n: int = MAX_ORACLE_N
) -> list[Lattice]:
    """Every (distributive) lattice on the vertices of ``g`` compatible with it.

    With ``prune`` set and ``g`` connected, lattices whose covers are not all
    edges are skipped before the compatibility check.
    """
    if g.n > max_n:
        raise ValueError("oracle limited to %d vertices, got %d" % (max_n, g.n))
    if g.n == 0:
        return []
    prune = prune and g.is_connected()
    out = []
    for lat in labelled_lattices(g.n):
        if prune and not check_hasse_subgraph(g, lat):
            continue
        if distributive_only and not is_distributive(lat):
            continue
        if check_compatible(g, lat):
            out.append(lat)
    out.sort(key=lambda lat: lat.order.down)
    return out

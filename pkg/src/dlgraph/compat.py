"""Compatibility of a lattice with a reflexive graph, and the identities it implies."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from dlgraph._backend import kernels
from dlgraph.graph import CheckResult, ReflexiveGraph, bits
from dlgraph.order import Lattice


def _check_sizes(g: ReflexiveGraph, lat: Lattice) -> None:
    if g.n != lat.n:
        raise ValueError("graph has %d vertices but lattice has %d elements" % (g.n, lat.n))


def _first_violation(g: ReflexiveGraph, lat: Lattice) -> tuple[int, int, int, int] | None:
    meet, join, adj = lat.meet, lat.join, g.adj
    for u in range(g.n):
        for u2 in bits(adj[u]):
            for v in range(g.n):
                mrow = adj[meet[u][v]]
                jrow = adj[join[u][v]]
                for v2 in bits(adj[v]):
                    if not mrow >> meet[u2][v2] & 1 or not jrow >> join[u2][v2] & 1:
                        return u, u2, v, v2
    return None


def check_compatible(g: ReflexiveGraph, lat: Lattice, impl=None) -> CheckResult:
    """Are meet and join polymorphisms of ``g``?

    The witness is the lexicographically least ``(u, u', v, v')`` with
    ``u ~ u'``, ``v ~ v'`` whose meets or joins are not adjacent.
    """
    _check_sizes(g, lat)
    impl = impl or kernels
    if impl.compatible(g.matrix, lat.meet_array, lat.join_array):
        return CheckResult(True)
    return CheckResult(False, _first_violation(g, lat))


class IdentityReport(NamedTuple):
    min_max: CheckResult
    vee: CheckResult

    def __bool__(self) -> bool:
        return bool(self.min_max) and bool(self.vee)


def check_min_max(g: ReflexiveGraph, lat: Lattice) -> CheckResult:
    """``u' <= u <= v <= v'`` and ``u' ~ v'`` imply ``u ~ v``; witness ``(u', u, v, v')``."""
    _check_sizes(g, lat)
    up, down = lat.order.up, lat.order.down
    for lo in range(g.n):
        for hi in bits(g.adj[lo] & up[lo]):
            span = up[lo] & down[hi]
            for u in bits(span):
                bad = span & up[u] & ~g.adj[u]
                if bad:
                    return CheckResult(False, (lo, u, bits(bad)[0], hi))
    return CheckResult(True)


def check_vee(g: ReflexiveGraph, lat: Lattice) -> CheckResult:
    """``u ~ v ~ w`` with ``v`` above or below both of ``u, w`` implies ``u ~ w``."""
    _check_sizes(g, lat)
    for v in range(g.n):
        for side in (lat.order.down[v], lat.order.up[v]):
            near = g.adj[v] & side
            for u in bits(near):
                bad = near & ~g.adj[u]
                if bad:
                    return CheckResult(False, (u, v, bits(bad)[0]))
    return CheckResult(True)


def check_identities(g: ReflexiveGraph, lat: Lattice) -> IdentityReport:
    return IdentityReport(check_min_max(g, lat), check_vee(g, lat))


def check_hasse_subgraph(g: ReflexiveGraph, lat: Lattice) -> CheckResult:
    """Every cover of the lattice is an edge of the graph; witness is a missing cover."""
    _check_sizes(g, lat)
    for x, y in lat.covers:
        if not g.adjacent(x, y):
            return CheckResult(False, (x, y))
    return CheckResult(True)


def majority_from_lattice(lat: Lattice) -> np.ndarray:
    """Table of ``(x ^ y) v (y ^ z) v (x ^ z)`` indexed ``[x, y, z]``."""
    m, j = lat.meet_array, lat.join_array
    xy = m[:, :, None]
    yz = m[None, :, :]
    xz = m[:, None, :]
    return j[j[xy, yz], xz].astype(np.int32)


def is_majority(table: np.ndarray) -> bool:
    n = table.shape[0]
    for x in range(n):
        for y in range(n):
            if not table[x, x, y] == table[x, y, x] == table[y, x, x] == x:
                return False
    return True


def is_polymorphism(g: ReflexiveGraph, table: np.ndarray) -> CheckResult:
    """Brute force over all triples of (ordered, loop-inclusive) edges.

    The witness is the first offending triple of edges.
    """
    arity = table.ndim
    src, dst = np.nonzero(g.matrix)
    m = len(src)
    # Chunk on the first coordinate to keep memory at m ** (arity - 1).
    for k in range(m):
        a = table[(src[k],) + np.ix_(*([src] * (arity - 1)))]
        b = table[(dst[k],) + np.ix_(*([dst] * (arity - 1)))]
        ok = g.matrix[a, b]
        if not ok.all():
            rest = np.unravel_index(int(np.argmin(ok)), ok.shape)
            edges = [(int(src[k]), int(dst[k]))] + [(int(src[i]), int(dst[i])) for i in rest]
            return CheckResult(False, tuple(edges))
    return CheckResult(True)

"""Reflexive graphs stored as closed-neighbourhood bitmasks."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class CheckResult(NamedTuple):
    """Outcome of a property check; falsy on failure, with a witness."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class ReflexiveGraph:
    """Symmetric reflexive graph on vertices ``0..n-1``.

    ``adj[v]`` is the closed neighbourhood of ``v`` as an int bitmask; loops
    are implicit, so bit ``v`` of ``adj[v]`` is always set.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency has %d rows for %d vertices" % (len(self.adj), self.n))
        for v, row in enumerate(self.adj):
            if not row >> v & 1:
                raise ValueError("vertex %d has no loop" % v)
            if row >> self.n:
                raise ValueError("vertex %d has a neighbour out of range" % v)
        for v, row in enumerate(self.adj):
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError("adjacency not symmetric at (%d, %d)" % (u, v))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        """Number of neighbours other than ``v`` itself."""
        return bin(self.adj[v]).count("1") - 1

    def edges(self) -> list[tuple[int, int]]:
        """Non-loop edges as pairs ``(u, v)`` with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for v in range(self.n):
            m[v, bits(self.adj[v])] = 1
        return m

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def induced_subgraph(self, vertices: Sequence[int]) -> ReflexiveGraph:
        """Subgraph induced on ``vertices``, relabelled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(sum(1 << index[u] for u in bits(self.adj[v]) if u in index))
        return ReflexiveGraph(len(vertices), tuple(rows))

    def relabel(self, mapping: Sequence[int]) -> ReflexiveGraph:
        """Graph with vertex ``v`` renamed ``mapping[v]``."""
        edges = [(mapping[u], mapping[v]) for u, v in self.edges()]
        return build_graph(self.n, edges)

    def is_r_thin(self) -> bool:
        return len(set(self.adj)) == self.n

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components(self)) == 1

    def __str__(self):
        return "ReflexiveGraph(n=%d, edges=%s)" % (self.n, self.edges())


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> ReflexiveGraph:
    """Reflexive graph on ``n`` vertices with the given non-loop edges plus all loops."""
    if n < 0:
        raise ValueError("negative vertex count")
    rows = [1 << v for v in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError("edge (%d, %d) has an endpoint out of range for n=%d" % (u, v, n))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return ReflexiveGraph(n, tuple(rows))


def complete_graph(n: int) -> ReflexiveGraph:
    full = (1 << n) - 1
    return ReflexiveGraph(n, (full,) * n)


def path_graph(n: int) -> ReflexiveGraph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> ReflexiveGraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> ReflexiveGraph:
    """Reflexive ``K_{1,leaves}`` with centre 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: ReflexiveGraph) -> ReflexiveGraph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return build_graph(offset, edges)


def product_graph(g1: ReflexiveGraph, g2: ReflexiveGraph) -> ReflexiveGraph:
    """Categorical product; vertex ``(a, b)`` has index ``a * g2.n + b``."""
    n = g1.n * g2.n
    rows = []
    for a in range(g1.n):
        for b in range(g2.n):
            row = 0
            for a2 in bits(g1.adj[a]):
                row |= g2.adj[b] << (a2 * g2.n)
            rows.append(row)
    return ReflexiveGraph(n, tuple(rows))


def r_thin_classes(g: ReflexiveGraph) -> list[list[int]]:
    """Vertices grouped by equal closed neighbourhood, ordered by least member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v], []).append(v)
    return sorted(groups.values())


def r_thin_reduction(g: ReflexiveGraph) -> tuple[ReflexiveGraph, list[int]]:
    """Quotient by neighbourhood equality.

    Returns the reduced graph and ``index`` with ``index[v]`` the quotient
    vertex of ``v``. Quotient vertices follow the order of their least member.
    """
    classes = r_thin_classes(g)
    index = [0] * g.n
    for c, members in enumerate(classes):
        for v in members:
            index[v] = c
    edges = {(index[u], index[v]) for u, v in g.edges() if index[u] != index[v]}
    return build_graph(len(classes), edges), index


def distance_layers(g: ReflexiveGraph, root: int) -> tuple[list[list[int]], list[int]]:
    """BFS layers from ``root`` and the list of unreachable vertices."""
    if not 0 <= root < g.n:
        raise ValueError("root %d not in graph" % root)
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in bits(g.adj[v]):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    depth = max(dist)
    layers: list[list[int]] = [[] for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        if d >= 0:
            layers[d].append(v)
    return layers, [v for v, d in enumerate(dist) if d < 0]


def components(g: ReflexiveGraph) -> list[list[int]]:
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            grown = 0
            for u in bits(frontier):
                grown |= g.adj[u]
            frontier = grown & ~comp
            comp |= grown
        seen |= comp
        out.append(bits(comp))
    return out


def check_min_max_form(g: ReflexiveGraph, order: Sequence[int]) -> CheckResult:
    """Check the min-max identity under the linear order listing ``order``.

    ``order`` lists the vertices from least to greatest. On failure the
    witness is ``(u', u, v, v')`` with ``u' <= u <= v <= v'``, ``u' ~ v'``
    and ``u`` not adjacent to ``v``.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertices")
    # Shrinking an edge by one step at either end is enough: by induction the
    # local condition gives every nested pair.
    for p in range(g.n):
        for q in range(p + 1, g.n):
            if not g.adjacent(order[p], order[q]):
                continue
            if not g.adjacent(order[p], order[q - 1]):
                return CheckResult(False, (order[p], order[p], order[q - 1], order[q]))
            if not g.adjacent(order[p + 1], order[q]):
                return CheckResult(False, (order[p], order[p + 1], order[q], order[q]))
    return CheckResult(True)

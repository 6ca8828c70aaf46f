"""Deciding whether an R-thin reflexive graph has a compatible distributive lattice.

For each candidate bottom/top pair the skeleton (the graph minus its
dispensable edges) is oriented layer by layer away from the top; if every
skeleton edge gets a single direction and the resulting order is a
distributive lattice compatible with the graph, that lattice is returned.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from dlgraph._backend import kernels
from dlgraph.compat import check_compatible
from dlgraph.graph import ReflexiveGraph, bits, components, distance_layers, r_thin_reduction
from dlgraph.order import (
    CycleError,
    Lattice,
    NotALatticeError,
    is_distributive,
    lattice_from_order,
    poset_from_relation,
    simple_join,
)


class EdgeState(enum.Enum):
    UNORIENTED = "unoriented"
    FORWARD = "forward"  # lower index -> higher index
    BACKWARD = "backward"
    CONFLICT = "conflict"


@dataclass
class PartialOrientation:
    """Direction state of each non-loop skeleton edge ``(u, v)``, ``u < v``.

    An arc ``u -> v`` means ``u`` is placed above ``v``.
    """

    n: int
    states: dict[tuple[int, int], EdgeState]

    def direction(self, u: int, v: int) -> EdgeState:
        return self.states[(min(u, v), max(u, v))]

    def orient(self, u: int, v: int) -> None:
        key = (min(u, v), max(u, v))
        want = EdgeState.FORWARD if u < v else EdgeState.BACKWARD
        have = self.states[key]
        if have is EdgeState.UNORIENTED:
            self.states[key] = want
        elif have is not want:
            self.states[key] = EdgeState.CONFLICT

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for (u, v), s in sorted(self.states.items()):
            if s is EdgeState.FORWARD:
                out.append((u, v))
            elif s is EdgeState.BACKWARD:
                out.append((v, u))
        return out

    def unoriented(self) -> list[tuple[int, int]]:
        return [e for e, s in sorted(self.states.items()) if s is EdgeState.UNORIENTED]

    def conflicts(self) -> list[tuple[int, int]]:
        return [e for e, s in sorted(self.states.items()) if s is EdgeState.CONFLICT]


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass
class RecognitionResult:
    verdict: Verdict
    lattice: Lattice | None = None
    reason: str = ""
    zero: int | None = None
    one: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES


class OrientationError(Exception):
    """Raised when an orientation does not close up to a lattice."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__("%s: %s" % (reason, detail) if detail else reason)
        self.reason = reason


def dispensable_edges(g: ReflexiveGraph, impl=None) -> tuple[set[tuple[int, int]], ReflexiveGraph]:
    """Dispensable edges ``(u, v)``, ``u < v``, and the skeleton left after removing them."""
    impl = impl or kernels
    flags = impl.dispensable(g.matrix)
    gone = {(u, v) for u, v in g.edges() if flags[u, v]}
    rows = list(g.adj)
    for u, v in gone:
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return gone, ReflexiveGraph(g.n, tuple(rows))


def _reach(arcs_out: list[int], start: int, alive: int) -> int:
    # Vertices reachable from ``start`` by a non-empty directed path inside ``alive``.
    seen = 0
    frontier = arcs_out[start] & alive
    while frontier:
        seen |= frontier
        nxt = 0
        for w in bits(frontier):
            nxt |= arcs_out[w]
        frontier = nxt & alive & ~seen
    return seen


def orient_skeleton(g: ReflexiveGraph, s: ReflexiveGraph, one: int, zero: int) -> PartialOrientation:
    """Orient skeleton edges from ``one`` downwards, round ``j`` handling distance layer ``j``."""
    if one == zero:
        raise ValueError("top and bottom must differ")
    states = {e: EdgeState.UNORIENTED for e in s.edges()}
    orient = PartialOrientation(g.n, states)
    layers, _ = distance_layers(g, one)
    dist = [-1] * g.n
    for d, layer in enumerate(layers):
        for v in layer:
            dist[v] = d
    if dist[zero] < 0:
        raise ValueError("graph is disconnected between top and bottom")
    adj = g.adj
    for j in range(1, dist[zero] + 1):
        layer_j = layers[j]
        for u in layers[j - 1]:
            for v in bits(s.adj[u] & ~(1 << u)):
                if dist[v] == j:
                    orient.orient(u, v)
        # Reachability inside D_{j-1}; every arc there was fixed in earlier rounds.
        seen = 0
        for d in range(j):
            for v in layers[d]:
                seen |= 1 << v
        out = [0] * g.n
        for a, b in orient.arcs():
            out[a] |= 1 << b
        reach = {v: _reach(out, v, seen) for v in bits(seen)}
        far = sum(1 << v for v in range(g.n) if dist[v] >= j)
        members = sum(1 << v for v in layer_j)
        pending = [(u, v) for u in layer_j for v in bits(s.adj[u] & members) if u < v]
        for u, v in pending:
            fire_uv = _rule_two(adj, reach, seen, far, u, v)
            fire_vu = _rule_two(adj, reach, seen, far, v, u)
            if fire_uv:
                orient.orient(u, v)
            if fire_vu:
                orient.orient(v, u)
    return orient


def _rule_two(adj, reach, seen, far, u, v) -> bool:
    only_u = adj[u] & ~adj[v]
    only_v = adj[v] & ~adj[u]
    # (a) a private neighbour of u above every neighbour of v seen so far.
    targets = adj[v] & seen
    for a in bits(only_u & seen):
        if reach[a] & targets == targets:
            return True
    # (b) a private neighbour of v below every neighbour of u seen so far.
    sources = adj[u] & seen
    for b in bits(only_v & seen):
        if all(reach[a] >> b & 1 for a in bits(sources)):
            return True
    # (c) v has private neighbours, none of them in layer j-1.
    return bool(only_v) and only_v & ~far == 0


def lattice_from_orientation(orient: PartialOrientation, zero: int, one: int) -> Lattice:
    """Close the orientation to an order and read off the lattice, or raise OrientationError."""
    if orient.conflicts():
        raise OrientationError("conflict", str(orient.conflicts()))
    if orient.unoriented():
        raise OrientationError("unoriented-edge", str(orient.unoriented()))
    try:
        order = poset_from_relation(orient.n, [(b, a) for a, b in orient.arcs()])
    except CycleError as exc:
        raise OrientationError("cycle", str(exc)) from exc
    full = order.full_mask
    if order.up[zero] != full or order.down[one] != full:
        raise OrientationError("wrong-bounds", "%d/%d are not the minimum/maximum" % (zero, one))
    try:
        return lattice_from_order(order, zero, one)
    except NotALatticeError as exc:
        raise OrientationError("not-a-lattice", str(exc)) from exc


def candidate_pairs(g: ReflexiveGraph, s: ReflexiveGraph, prune: bool = True) -> list[tuple[int, int]]:
    """Ordered ``(zero, one)`` pairs worth trying, lexicographic."""
    pairs = [(z, o) for z in range(g.n) for o in range(g.n) if z != o]
    if not prune:
        return pairs
    touched = {v for e in s.edges() for v in e}
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if len(leaves) > 2:
        return []
    return [
        (z, o)
        for z, o in pairs
        if z in touched and o in touched and all(v in (z, o) for v in leaves)
    ]


def _try_pair(g: ReflexiveGraph, s: ReflexiveGraph, zero: int, one: int):
    orient = orient_skeleton(g, s, one, zero)
    try:
        lat = lattice_from_orientation(orient, zero, one)
    except OrientationError as exc:
        return None, exc.reason
    if not is_distributive(lat):
        return None, "not-distributive"
    if not check_compatible(g, lat):
        return None, "not-compatible"
    return lat, "ok"


def _try_pair_star(args):
    return _try_pair(*args)


def recognize_dl(g: ReflexiveGraph, prune: bool = True, jobs: int = 1) -> RecognitionResult:
    """Decide a connected R-thin graph; YES carries a verified compatible distributive lattice."""
    if g.n == 0:
        raise ValueError("empty graph")
    if not g.is_connected():
        raise ValueError("graph is disconnected; use recognize_driver")
    if not g.is_r_thin():
        raise ValueError("graph is not R-thin; use recognize_driver")
    if g.n == 1:
        return RecognitionResult(Verdict.YES, lattice_from_order(poset_from_relation(1, [])), zero=0, one=0)
    _, s = dispensable_edges(g)
    pairs = candidate_pairs(g, s, prune)
    reasons: dict[str, int] = {}
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_try_pair_star, [(g, s, z, o) for z, o in pairs], chunksize=8))
    else:
        outcomes = None
    for k, (zero, one) in enumerate(pairs):
        lat, why = outcomes[k] if outcomes is not None else _try_pair(g, s, zero, one)
        if lat is not None:
            return RecognitionResult(Verdict.YES, lat, zero=zero, one=one)
        reasons[why] = reasons.get(why, 0) + 1
    return RecognitionResult(
        Verdict.NO,
        reason="no bottom/top pair gives a compatible distributive lattice",
        details={"candidates": len(pairs), "failures": reasons},
    )


def recognize_driver(
    g: ReflexiveGraph, prune: bool = True, oracle_max_n: int = 6, jobs: int = 1
) -> RecognitionResult:
    """Decide any reflexive graph as far as the R-thin theory allows.

    Non-R-thin graphs are reduced first: NO for the reduction is NO for the
    graph, YES is only INCONCLUSIVE unless the brute-force oracle can settle
    the original (at most ``oracle_max_n`` vertices).
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if not g.is_r_thin():
        reduced, _ = r_thin_reduction(g)
        sub = recognize_driver(reduced, prune=prune, oracle_max_n=0, jobs=jobs)
        if sub.verdict is Verdict.NO:
            return RecognitionResult(Verdict.NO, reason="R-thin reduction is not a DL-graph: " + sub.reason)
        if g.n <= oracle_max_n:
            from dlgraph.oracle import oracle_recognize

            found = oracle_recognize(g, distributive_only=True)
            if found:
                return RecognitionResult(
                    Verdict.YES, found[0], zero=found[0].zero, one=found[0].one, reason="oracle"
                )
            return RecognitionResult(Verdict.NO, reason="oracle found no compatible distributive lattice")
        return RecognitionResult(
            Verdict.INCONCLUSIVE, reason="graph is not R-thin; its R-thin reduction is a DL-graph"
        )
    parts = components(g)
    lattices = []
    for comp in parts:
        sub = g.induced_subgraph(comp)
        res = recognize_dl(sub, prune=prune, jobs=jobs)
        if res.verdict is not Verdict.YES:
            return RecognitionResult(Verdict.NO, reason="component %s: %s" % (comp, res.reason))
        lattices.append(res.lattice)
    if len(parts) == 1:
        lat = lattices[0]
    else:
        # Stacked index k belongs to original vertex order[k].
        order = [v for comp in parts for v in comp]
        mapping = [0] * g.n
        for k, v in enumerate(order):
            mapping[k] = v
        lat = simple_join(lattices).relabel(mapping)
    if not check_compatible(g, lat) or not is_distributive(lat):
        raise AssertionError("assembled lattice failed verification")
    return RecognitionResult(Verdict.YES, lat, zero=lat.zero, one=lat.one)

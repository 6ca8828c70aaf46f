"""Finite posets, downset lattices, Birkhoff representation and chain covers.

Elements are ``0..n-1``; relations are held as int bitmasks, ``down[x]``
being the set of elements ``<= x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Sequence

import numpy as np

from dlgraph.graph import CheckResult, bits


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class CycleError(ValueError):
    """Cover arcs do not generate an antisymmetric relation."""


class NotALatticeError(ValueError):
    """A pair lacks a unique meet or join, or the bounds are wrong."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class Poset:
    n: int
    down: tuple[int, ...]

    def __post_init__(self):
        for x in range(self.n):
            if not self.down[x] >> x & 1:
                raise ValueError("relation not reflexive at %d" % x)
            for y in bits(self.down[x]):
                if self.down[y] & ~self.down[x]:
                    raise ValueError("relation not transitive at %d" % x)
                if y != x and self.down[y] >> x & 1:
                    raise CycleError("relation not antisymmetric at (%d, %d)" % (y, x))

    @cached_property
    def up(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for x in range(self.n):
            for y in bits(self.down[x]):
                rows[y] |= 1 << x
        return tuple(rows)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(x, y)`` with ``y`` covering ``x``."""
        out = []
        for y in range(self.n):
            below = self.down[y] & ~(1 << y)
            for x in bits(below):
                if not any(below >> z & 1 for z in bits(self.up[x]) if z != x and z != y):
                    out.append((x, y))
        return tuple(sorted(out))

    def comparabilities(self, loops: bool = True) -> list[tuple[int, int]]:
        """All pairs ``(x, y)`` with ``x <= y``."""
        return [(x, y) for y in range(self.n) for x in bits(self.down[y]) if loops or x != y]

    def linear_extension(self) -> list[int]:
        # Fewer elements below means no element below it can come later.
        return sorted(range(self.n), key=lambda x: (popcount(self.down[x]), x))

    def is_downset(self, mask: int) -> bool:
        return all(self.down[x] & ~mask == 0 for x in bits(mask))

    def downset_closure(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.down[x]
        return out

    def is_chain(self, seq: Sequence[int]) -> bool:
        return all(self.lt(a, b) for a, b in zip(seq, seq[1:]))

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if self.down[x] == 1 << x]

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if self.up[x] == 1 << x]

    def subposet(self, elements: Sequence[int]) -> Poset:
        """Induced order on ``elements``, relabelled in the given order."""
        index = {x: i for i, x in enumerate(elements)}
        rows = tuple(sum(1 << index[y] for y in bits(self.down[x]) if y in index) for x in elements)
        return Poset(len(elements), rows)

    def relabel(self, mapping: Sequence[int]) -> Poset:
        """Poset with element ``x`` renamed ``mapping[x]``."""
        rows = [0] * self.n
        for x in range(self.n):
            rows[mapping[x]] = sum(1 << mapping[y] for y in bits(self.down[x]))
        return Poset(self.n, tuple(rows))

    def dual(self) -> Poset:
        return Poset(self.n, self.up)


def poset_from_relation(n: int, pairs: Iterable[tuple[int, int]]) -> Poset:
    """Reflexive-transitive closure of the arcs ``x <= y``."""
    down = [1 << x for x in range(n)]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise ValueError("pair (%d, %d) out of range for n=%d" % (x, y, n))
        down[y] |= 1 << x
    changed = True
    while changed:
        changed = False
        for y in range(n):
            closed = down[y]
            for x in bits(down[y]):
                closed |= down[x]
            if closed != down[y]:
                down[y] = closed
                changed = True
    for y in range(n):
        for x in bits(down[y]):
            if x != y and down[x] >> y & 1:
                raise CycleError("cover arcs contain a cycle through %d and %d" % (x, y))
    return Poset(n, tuple(down))


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]]) -> Poset:
    return poset_from_relation(n, covers)


def chain_poset(n: int) -> Poset:
    return Poset(n, tuple((1 << (x + 1)) - 1 for x in range(n)))


def antichain_poset(n: int) -> Poset:
    return Poset(n, tuple(1 << x for x in range(n)))


def enumerate_downsets(p: Poset) -> list[int]:
    """All downsets as bitmasks, sorted by cardinality then value."""
    ext = p.linear_extension()
    out = []
    stack = [(0, 0)]
    while stack:
        i, mask = stack.pop()
        if i == p.n:
            out.append(mask)
            continue
        x = ext[i]
        stack.append((i + 1, mask))
        if p.down[x] & ~mask == 1 << x:
            stack.append((i + 1, mask | 1 << x))
    out.sort(key=lambda m: (popcount(m), m))
    return out


@dataclass(frozen=True)
class Lattice:
    order: Poset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    zero: int
    one: int

    @property
    def n(self) -> int:
        return self.order.n

    def leq(self, x: int, y: int) -> bool:
        return self.order.leq(x, y)

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return self.order.covers

    @cached_property
    def meet_array(self) -> np.ndarray:
        return np.ascontiguousarray(np.array(self.meet, dtype=np.int32).reshape(self.n, self.n))

    @cached_property
    def join_array(self) -> np.ndarray:
        return np.ascontiguousarray(np.array(self.join, dtype=np.int32).reshape(self.n, self.n))

    def relabel(self, mapping: Sequence[int]) -> Lattice:
        return lattice_from_order(self.order.relabel(mapping))

    def same_order(self, other: Lattice) -> bool:
        return self.order == other.order


def _bound(rows: tuple[int, ...], candidates: int) -> int | None:
    # The greatest element of ``candidates`` w.r.t. ``rows`` (a down/up table).
    for g in bits(candidates):
        if rows[g] & candidates == candidates:
            return g
    return None


def lattice_from_order(p: Poset, zero: int | None = None, one: int | None = None) -> Lattice:
    """Meet and join tables of ``p``; raises NotALatticeError if some pair lacks them."""
    if p.n == 0:
        raise NotALatticeError("empty order has no bounds")
    full = p.full_mask
    bottoms = [x for x in range(p.n) if p.up[x] == full]
    tops = [x for x in range(p.n) if p.down[x] == full]
    if zero is not None and zero not in bottoms:
        raise NotALatticeError("%d is not the minimum" % zero)
    if one is not None and one not in tops:
        raise NotALatticeError("%d is not the maximum" % one)
    meet = [[0] * p.n for _ in range(p.n)]
    join = [[0] * p.n for _ in range(p.n)]
    for x in range(p.n):
        for y in range(x, p.n):
            m = _bound(p.down, p.down[x] & p.down[y])
            j = _bound(p.up, p.up[x] & p.up[y])
            if m is None:
                raise NotALatticeError("no meet for (%d, %d)" % (x, y), (x, y))
            if j is None:
                raise NotALatticeError("no join for (%d, %d)" % (x, y), (x, y))
            meet[x][y] = meet[y][x] = m
            join[x][y] = join[y][x] = j
    return Lattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bottoms[0], tops[0])


def downset_lattice(p: Poset) -> Lattice:
    """Downsets of ``p`` under inclusion, indexed in ``enumerate_downsets`` order."""
    downs = enumerate_downsets(p)
    index = {d: i for i, d in enumerate(downs)}
    k = len(downs)
    rows = tuple(sum(1 << index[e] for e in downs if e & ~d == 0) for d in downs)
    meet = tuple(tuple(index[d & e] for e in downs) for d in downs)
    join = tuple(tuple(index[d | e] for e in downs) for d in downs)
    return Lattice(Poset(k, rows), meet, join, 0, k - 1)


def is_distributive(lat: Lattice) -> CheckResult:
    """Check ``x ^ (y v z) == (x ^ y) v (x ^ z)`` on all triples."""
    meet, join = lat.meet, lat.join
    r = range(lat.n)
    for x, y, z in cartesian(r, r, r):
        if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
            return CheckResult(False, (x, y, z))
    return CheckResult(True)


@dataclass(frozen=True)
class BirkhoffRepresentation:
    """Join-irreducibles of a distributive lattice and the downset isomorphism.

    ``elements[k]`` is the lattice element behind poset element ``k``;
    ``iso[x]`` is the downset of ``poset`` corresponding to lattice element ``x``.
    """

    poset: Poset
    elements: tuple[int, ...]
    iso: tuple[int, ...]

    @cached_property
    def inverse(self) -> dict[int, int]:
        return {d: x for x, d in enumerate(self.iso)}


def join_irreducibles(lat: Lattice) -> BirkhoffRepresentation:
    """Raises ValueError when the downset map is not an isomorphism (non-distributive input)."""
    lower_covers = [0] * lat.n
    for x, y in lat.covers:
        lower_covers[y] += 1
    elements = tuple(x for x in range(lat.n) if x != lat.zero and lower_covers[x] == 1)
    j = lat.order.subposet(elements)
    iso = tuple(sum(1 << k for k, e in enumerate(elements) if lat.leq(e, x)) for x in range(lat.n))
    if len(set(iso)) != lat.n or len(enumerate_downsets(j)) != lat.n:
        raise ValueError("lattice is not distributive: downset map is not bijective")
    for x in range(lat.n):
        for y in range(lat.n):
            if lat.leq(x, y) != (iso[x] & ~iso[y] == 0):
                raise ValueError("lattice is not distributive: downset map is not an order isomorphism")
    return BirkhoffRepresentation(j, elements, iso)


def simple_join(lattices: Sequence[Lattice]) -> Lattice:
    """Stack the lattices: everything in ``lattices[i]`` lies below ``lattices[i+1]``."""
    if not lattices:
        raise ValueError("simple join of no lattices")
    rows = []
    offset = 0
    for lat in lattices:
        below = (1 << offset) - 1
        rows.extend(below | lat.order.down[x] << offset for x in range(lat.n))
        offset += lat.n
    return lattice_from_order(Poset(offset, tuple(rows)))


def product_lattice(l1: Lattice, l2: Lattice) -> Lattice:
    """Componentwise order; ``(a, b)`` has index ``a * l2.n + b``."""
    n2 = l2.n
    rows = []
    for a in range(l1.n):
        for b in range(n2):
            row = 0
            for a2 in bits(l1.order.down[a]):
                row |= l2.order.down[b] << (a2 * n2)
            rows.append(row)
    meet = tuple(
        tuple(l1.meet[a][c] * n2 + l2.meet[b][d] for c in range(l1.n) for d in range(n2))
        for a in range(l1.n) for b in range(n2)
    )
    join = tuple(
        tuple(l1.join[a][c] * n2 + l2.join[b][d] for c in range(l1.n) for d in range(n2))
        for a in range(l1.n) for b in range(n2)
    )
    return Lattice(Poset(l1.n * n2, tuple(rows)), meet, join, l1.zero * n2 + l2.zero, l1.one * n2 + l2.one)


def chain_lattice(n: int) -> Lattice:
    return lattice_from_order(chain_poset(n))


def sublattice_closure(lat: Lattice, elements: Iterable[int]) -> list[int]:
    """Smallest subset containing ``elements`` closed under meet and join."""
    members = set(elements)
    changed = True
    while changed:
        changed = False
        for x in list(members):
            for y in list(members):
                for z in (lat.meet[x][y], lat.join[x][y]):
                    if z not in members:
                        members.add(z)
                        changed = True
    return sorted(members)


@dataclass(frozen=True)
class ChainCover:
    """Chains of a poset, each listed bottom to top.

    An element may lie on several chains; its label on chain ``i`` is its
    1-based position there.
    """

    chains: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.chains)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in c) for c in self.chains)

    def labels(self, x: int) -> list[tuple[int, int]]:
        """All ``(chain index, position)`` labels of element ``x``."""
        return [(i, c.index(x) + 1) for i, c in enumerate(self.chains) if x in c]

    def is_decomposition(self) -> bool:
        return sum(self.sizes) == popcount(_union(self.masks))

    def validate(self, p: Poset) -> None:
        for c in self.chains:
            if not c:
                raise ValueError("empty chain in cover")
            if not p.is_chain(c):
                raise ValueError("%s is not a chain" % (c,))
        if _union(self.masks) != p.full_mask:
            raise ValueError("cover misses elements %s" % bits(p.full_mask & ~_union(self.masks)))


def _union(masks: Iterable[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def chain_cover_from_digraph(p: Poset, arcs: Iterable[tuple[int, int]]) -> ChainCover:
    """One 2-chain per non-loop arc, then singletons for untouched elements."""
    chains = []
    touched = 0
    for x, y in sorted(set(arcs)):
        if x == y:
            continue
        if not p.lt(x, y):
            raise ValueError("arc (%d, %d) is not a comparability" % (x, y))
        chains.append((x, y))
        touched |= 1 << x | 1 << y
    chains.extend((x,) for x in range(p.n) if not touched >> x & 1)
    return ChainCover(tuple(chains))


def _longest_chain(p: Poset, alive: int) -> tuple[int, ...]:
    # Lexicographically least among the longest chains inside ``alive``.
    best: dict[int, tuple[int, ...]] = {}
    for x in sorted(bits(alive), key=lambda e: (popcount(p.up[e]), e)):
        tails = [best[y] for y in bits(p.up[x] & alive) if y != x]
        tail = min(tails, key=lambda t: (-len(t), t)) if tails else ()
        best[x] = (x,) + tail
    return min(best.values(), key=lambda t: (-len(t), t))


def greedy_chain_decomposition(p: Poset) -> ChainCover:
    """Disjoint chains, peeling off a longest remaining chain each time."""
    alive = p.full_mask
    chains = []
    while alive:
        c = _longest_chain(p, alive)
        chains.append(c)
        for x in c:
            alive &= ~(1 << x)
    return ChainCover(tuple(chains))


def is_isomorphic(p: Poset, q: Poset) -> bool:
    """Brute-force order isomorphism test for small posets."""
    from itertools import permutations

    if p.n != q.n or sorted(map(popcount, p.down)) != sorted(map(popcount, q.down)):
        return False
    for perm in permutations(range(p.n)):
        if p.relabel(perm) == q:
            return True
    return False

"""Embedding downset lattices and their graphs into products of chains.

A chain cover sends a downset ``D`` to ``(|D & C_0|, |D & C_1|, ...)``.
Chain indices are 0-based; thresholds ``alpha``/``beta`` count elements, so
label ``alpha`` on chain ``i`` is the ``alpha``-th element of that chain.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product as cartesian
from typing import Sequence

from dlgraph.graph import ReflexiveGraph, bits, r_thin_classes
from dlgraph.gpa import construct_gpa, normalize_arcs, reduced_complement, validate_arcs
from dlgraph.order import (
    ChainCover,
    Lattice,
    Poset,
    chain_cover_from_digraph,
    chain_poset,
    downset_lattice,
    enumerate_downsets,
    popcount,
)


@dataclass(frozen=True)
class ChainProduct:
    sizes: tuple[int, ...]

    def __post_init__(self):
        if not self.sizes:
            raise ValueError("a product needs at least one chain")

    @property
    def dim(self) -> int:
        return len(self.sizes)

    def vertices(self) -> list[tuple[int, ...]]:
        return list(cartesian(*(range(s + 1) for s in self.sizes)))

    def __len__(self) -> int:
        out = 1
        for s in self.sizes:
            out *= s + 1
        return out


@dataclass(frozen=True)
class VertexInterval:
    """Points with ``x[i] >= alpha`` and ``x[j] <= beta``."""

    alpha: int
    i: int
    beta: int
    j: int

    def __contains__(self, x) -> bool:
        return x[self.i] >= self.alpha and x[self.j] <= self.beta

    def is_empty(self) -> bool:
        return self.i == self.j and self.alpha > self.beta

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "i": self.i, "beta": self.beta, "j": self.j}


@dataclass(frozen=True)
class EdgeBlock:
    """Unordered pairs ``{x, y}`` with ``x[i] >= alpha`` and ``y[j] <= beta``."""

    alpha: int
    i: int
    beta: int
    j: int

    def contains(self, x, y) -> bool:
        return (x[self.i] >= self.alpha and y[self.j] <= self.beta) or (
            y[self.i] >= self.alpha and x[self.j] <= self.beta
        )

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "i": self.i, "beta": self.beta, "j": self.j}


@dataclass(frozen=True)
class EmbeddingResult:
    """An embedding of a lattice and its graph into a product of factor graphs.

    ``coords[v]`` is the point of vertex ``v``; vertex ``v`` is the ``v``-th
    downset when the embedding comes from a chain cover.
    """

    cover: ChainCover | None
    product: ChainProduct
    coords: tuple[tuple[int, ...], ...]
    factors: tuple[ReflexiveGraph, ...]
    removed_vertices: tuple[VertexInterval, ...]
    removed_edges: tuple[EdgeBlock, ...]
    tight: bool
    induced: bool
    nontight_cover_count: int
    downsets: tuple[int, ...] = ()
    obstructions: tuple[tuple[int, int], ...] = field(default=())

    def factor_adjacent(self, x, y) -> bool:
        return all(f.adjacent(a, b) for f, a, b in zip(self.factors, x, y))

    def as_dict(self) -> dict:
        return {
            "chains": [list(c) for c in self.cover.chains] if self.cover else None,
            "sizes": list(self.product.sizes),
            "coordinates": [
                {"downset": bits(d), "point": list(x)} for d, x in zip(self.downsets, self.coords)
            ]
            if self.downsets
            else [{"vertex": v, "point": list(x)} for v, x in enumerate(self.coords)],
            "removed_vertex_intervals": [v.as_dict() for v in self.removed_vertices],
            "removed_edge_blocks": [e.as_dict() for e in self.removed_edges],
            "tight": self.tight,
            "induced": self.induced,
            "nontight_cover_count": self.nontight_cover_count,
            "obstructions": [list(o) for o in self.obstructions],
        }


def embed_coordinates(p: Poset, cover: ChainCover) -> dict[int, tuple[int, ...]]:
    """Map each downset (bitmask) to its count vector along the chains."""
    cover.validate(p)
    return {d: tuple(popcount(d & m) for m in cover.masks) for d in enumerate_downsets(p)}


def factor_graphs(p: Poset, arcs: frozenset, cover: ChainCover) -> list[ReflexiveGraph]:
    """G(C_i, A restricted to C_i) for every chain; vertex ``k`` is the bottom ``k`` elements."""
    arcs = validate_arcs(p, arcs)
    out = []
    for chain in cover.chains:
        pos = {x: k for k, x in enumerate(chain)}
        sub = frozenset((pos[x], pos[y]) for x, y in arcs if x in pos and y in pos)
        out.append(construct_gpa(chain_poset(len(chain)), sub))
    return out


def removed_regions(
    p: Poset, arcs: frozenset, cover: ChainCover, omit_empty: bool = True
) -> tuple[list[VertexInterval], list[EdgeBlock]]:
    """Vertex intervals from cross-label comparabilities, edge blocks from missing arcs.

    For labels ``lo`` = position ``beta + 1`` on chain ``j`` and ``hi`` =
    position ``alpha`` on chain ``i`` with ``lo <= hi`` we remove
    ``V[alpha, i; beta, j]``; when ``(lo, hi)`` is in the reduced complement
    of ``arcs`` we also remove the pairs ``E[alpha, i; beta, j]``.
    """
    arcs = validate_arcs(p, arcs)
    cover.validate(p)
    redcomp = reduced_complement(p, arcs)
    vertices: list[VertexInterval] = []
    edges: list[EdgeBlock] = []
    for j, cj in enumerate(cover.chains):
        for beta, lo in enumerate(cj):
            for i, ci in enumerate(cover.chains):
                for alpha0, hi in enumerate(ci):
                    if not p.leq(lo, hi):
                        continue
                    iv = VertexInterval(alpha0 + 1, i, beta, j)
                    if not (omit_empty and iv.is_empty()):
                        vertices.append(iv)
                    if (lo, hi) in redcomp:
                        edges.append(EdgeBlock(alpha0 + 1, i, beta, j))
    return vertices, edges


def is_induced_embedding(cover: ChainCover, redcomp: frozenset) -> bool:
    """Every non-loop missing arc has both ends on one chain of the cover."""
    for x, y in redcomp:
        if x != y and not any(m >> x & 1 and m >> y & 1 for m in cover.masks):
            return False
    return True


def induced_cover(p: Poset, redcomp: frozenset) -> ChainCover:
    return chain_cover_from_digraph(p, [(x, y) for x, y in redcomp if x != y])


def product_graph_on(emb: EmbeddingResult) -> ReflexiveGraph:
    """The factor product restricted to the embedded points."""
    pts = emb.coords
    k = len(pts)
    rows = []
    for a in range(k):
        rows.append(sum(1 << b for b in range(k) if emb.factor_adjacent(pts[a], pts[b])))
    return ReflexiveGraph(k, tuple(rows))


def direct_induced_check(emb: EmbeddingResult, g: ReflexiveGraph) -> bool:
    """Is ``g`` exactly the subgraph of the factor product induced on its points?"""
    return product_graph_on(emb) == g


def reconstruct_graph(emb: EmbeddingResult) -> ReflexiveGraph:
    """Product of factors, minus removed vertex intervals and edge blocks, on the image.

    Raises ValueError if the surviving product points are not exactly the image.
    """
    image = set(emb.coords)
    survivors = {x for x in emb.product.vertices() if not any(x in v for v in emb.removed_vertices)}
    if survivors != image:
        raise ValueError("removed vertex intervals do not carve out the image")
    pts = emb.coords
    rows = []
    for a, x in enumerate(pts):
        row = 0
        for b, y in enumerate(pts):
            if emb.factor_adjacent(x, y) and not any(e.contains(x, y) for e in emb.removed_edges):
                row |= 1 << b
        rows.append(row)
    return ReflexiveGraph(len(pts), tuple(rows))


def nontight_covers(lat: Lattice, coords: Sequence[tuple[int, ...]]) -> int:
    """Lattice covers whose endpoints are more than one unit step apart."""
    return sum(
        1 for x, y in lat.covers if sum(abs(a - b) for a, b in zip(coords[x], coords[y])) > 1
    )


def tightness(p: Poset, lat: Lattice, cover: ChainCover) -> tuple[bool, int]:
    """``(is a decomposition, number of non-tight lattice covers)`` for ``lat = D(p)``."""
    coords = embed_coordinates(p, cover)
    downs = enumerate_downsets(p)
    if lat.n != len(downs):
        raise ValueError("lattice is not the downset lattice of the poset")
    return cover.is_decomposition(), nontight_covers(lat, [coords[d] for d in downs])


def embed(p: Poset, arcs: frozenset, cover: ChainCover) -> EmbeddingResult:
    """Embed G(P, A) and D(P) along ``cover``."""
    arcs = normalize_arcs(p, validate_arcs(p, arcs))
    cover.validate(p)
    coords = embed_coordinates(p, cover)
    downs = enumerate_downsets(p)
    lat = downset_lattice(p)
    vertices, edges = removed_regions(p, arcs, cover)
    tight, count = tightness(p, lat, cover)
    return EmbeddingResult(
        cover=cover,
        product=ChainProduct(cover.sizes),
        coords=tuple(coords[d] for d in downs),
        factors=tuple(factor_graphs(p, arcs, cover)),
        removed_vertices=tuple(vertices),
        removed_edges=tuple(edges),
        tight=tight,
        induced=is_induced_embedding(cover, reduced_complement(p, arcs)),
        nontight_cover_count=count,
        downsets=tuple(downs),
    )


def image_intervals(product: ChainProduct, image) -> list[VertexInterval]:
    """Inclusion-maximal vertex intervals avoiding ``image``."""
    image = list(image)
    found = []
    d = product.dim
    for i in range(d):
        for j in range(d):
            for alpha in range(1, product.sizes[i] + 1):
                # Largest beta keeping the interval clear of the image.
                hits = [x[j] for x in image if x[i] >= alpha]
                beta = min(hits) - 1 if hits else product.sizes[j]
                iv = VertexInterval(alpha, i, beta, j)
                if beta >= 0 and not iv.is_empty():
                    found.append(iv)
    out = []
    for iv in found:
        if not any(
            o is not iv and o.i == iv.i and o.j == iv.j and o.alpha <= iv.alpha and o.beta >= iv.beta
            for o in found
        ):
            out.append(iv)
    return out


def _contract(emb: EmbeddingResult, i: int, a: int) -> EmbeddingResult:
    # Merge positions a and a+1 of factor i; coordinates above a shift down.
    coords = tuple(x[:i] + ((x[i] - 1 if x[i] > a else x[i]),) + x[i + 1 :] for x in emb.coords)
    f = emb.factors[i]
    keep = [v for v in range(f.n) if v != a + 1]
    factors = emb.factors[:i] + (f.induced_subgraph(keep),) + emb.factors[i + 1 :]
    sizes = emb.product.sizes[:i] + (emb.product.sizes[i] - 1,) + emb.product.sizes[i + 1 :]
    return replace(emb, cover=None, product=ChainProduct(sizes), coords=coords, factors=factors)


def tighten_factors(emb: EmbeddingResult, g: ReflexiveGraph, lat: Lattice | None = None) -> EmbeddingResult:
    """Contract twin positions of factor graphs while the embedding stays valid.

    A contraction of positions ``a, a+1`` of factor ``i`` (equal
    neighbourhoods there) is kept only if the points stay distinct and the
    factor product still induces exactly ``g``. Twins that cannot be
    contracted are reported in ``obstructions``.
    """
    if not direct_induced_check(emb, g):
        raise ValueError("tightening needs an induced embedding of the graph")
    changed = True
    while changed:
        changed = False
        for i, f in enumerate(emb.factors):
            for a in range(f.n - 1):
                if f.adj[a] != f.adj[a + 1]:
                    continue
                trial = _contract(emb, i, a)
                if len(set(trial.coords)) == len(trial.coords) and direct_induced_check(trial, g):
                    emb = trial
                    changed = True
                    break
            if changed:
                break
    obstructions = tuple(
        (i, a) for i, f in enumerate(emb.factors) for a in range(f.n - 1) if f.adj[a] == f.adj[a + 1]
    )
    count = nontight_covers(lat, emb.coords) if lat is not None else emb.nontight_cover_count
    return replace(
        emb,
        removed_vertices=tuple(image_intervals(emb.product, emb.coords)),
        removed_edges=(),
        induced=True,
        tight=count == 0,
        nontight_cover_count=count,
        obstructions=obstructions,
    )


def factors_r_thin(emb: EmbeddingResult) -> bool:
    return all(len(r_thin_classes(f)) == f.n for f in emb.factors)

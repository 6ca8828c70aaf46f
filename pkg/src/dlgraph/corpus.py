"""Seeded random instances: posets with arc sets, chain covers, small graphs."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from dlgraph.graph import ReflexiveGraph, bits, build_graph
from dlgraph.order import ChainCover, Poset, poset_from_relation


def random_poset(rng: random.Random, n: int, density: float | None = None) -> Poset:
    """Random order: pairs compared along a shuffled linear order, then closed."""
    density = rng.uniform(0.15, 0.7) if density is None else density
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[a], perm[b]) for a, b in combinations(range(n), 2) if rng.random() < density]
    return poset_from_relation(n, pairs)


def random_arcs(rng: random.Random, p: Poset, keep: float | None = None) -> frozenset[tuple[int, int]]:
    keep = rng.uniform(0.3, 0.95) if keep is None else keep
    return frozenset(a for a in p.comparabilities() if rng.random() < keep)


def random_instance(rng: random.Random, max_n: int = 6) -> tuple[Poset, frozenset[tuple[int, int]]]:
    p = random_poset(rng, rng.randint(1, max_n))
    return p, random_arcs(rng, p)


def gpa_corpus(seed: int, count: int, max_n: int = 6) -> Iterator[tuple[Poset, frozenset[tuple[int, int]]]]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_instance(rng, max_n)


def random_chain_cover(rng: random.Random, p: Poset) -> ChainCover:
    """Random chains grown up and down from random seeds until every element is used."""
    left = p.full_mask
    chains = []
    while left:
        start = rng.choice(bits(left))
        chain = [start]
        # Extend through strict covers in both directions with probability 1/2 per step.
        for step in ("up", "down"):
            x = start
            while rng.random() < 0.6:
                nxt = [y for a, y in p.covers if a == x] if step == "up" else [a for a, y in p.covers if y == x]
                if not nxt:
                    break
                x = rng.choice(nxt)
                chain.append(x) if step == "up" else chain.insert(0, x)
        chains.append(tuple(chain))
        for x in chain:
            left &= ~(1 << x)
    if rng.random() < 0.3:
        # Occasionally add an overlapping chain to leave the decomposition case.
        x, y = rng.choice(p.covers) if p.covers else (0, 0)
        chains.append((x, y) if x != y else (x,))
    rng.shuffle(chains)
    return ChainCover(tuple(chains))


def random_graph(rng: random.Random, n: int, density: float = 0.5) -> ReflexiveGraph:
    return build_graph(n, [e for e in combinations(range(n), 2) if rng.random() < density])

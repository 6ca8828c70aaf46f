"""Text formats for graphs, posets with arc sets, lattices and chain covers.

Every format is line based: a header line ``<kind> <n>`` followed by body
lines; ``#`` starts a comment and blank lines are ignored.

    graph 3            poset 4              lattice 4        chain 0 2
    edge 0 1           cover 0 2            cover 0 1        chain 1 3
    edge 1 2           cover 1 2            cover 0 2
                       arc 0 2              cover 1 3
                       arcs all-loops       cover 2 3

Arc lines are ``arc u v`` with ``u <= v`` in the poset, or one of the
keywords ``arcs all``, ``arcs all-loops`` (every loop) and ``arcs none``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from dlgraph.graph import ReflexiveGraph
from dlgraph.order import (
    ChainCover,
    CycleError,
    Lattice,
    NotALatticeError,
    Poset,
    lattice_from_order,
    poset_from_relation,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = "line %d, column %d: " % (line, column) if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _lines(text: str) -> list[list[_Token]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        pos = 0
        for word in body.split():
            pos = body.index(word, pos)
            toks.append(_Token(word, lineno, pos + 1))
            pos += len(word)
        if toks:
            out.append(toks)
    return out


def _int(tok: _Token, n: int | None = None) -> int:
    try:
        value = int(tok.text)
    except ValueError:
        raise ParseError("expected an integer, got %r" % tok.text, tok.line, tok.column) from None
    if value < 0 or (n is not None and value >= n):
        bound = "0..%d" % (n - 1) if n else "a non-negative integer"
        raise ParseError("index %d out of range (%s)" % (value, bound), tok.line, tok.column)
    return value


def _arity(toks: list[_Token], k: int) -> None:
    if len(toks) != k:
        last = toks[-1]
        raise ParseError(
            "%r takes %d argument(s), got %d" % (toks[0].text, k - 1, len(toks) - 1),
            last.line,
            last.column,
        )


def _header(rows: list[list[_Token]], kinds: tuple[str, ...]) -> tuple[str, int]:
    if not rows:
        raise ParseError("empty input", 1, 1)
    head = rows[0]
    if head[0].text not in kinds:
        raise ParseError(
            "expected %s header, got %r" % (" or ".join(repr(k) for k in kinds), head[0].text),
            head[0].line,
            head[0].column,
        )
    _arity(head, 2)
    return head[0].text, _int(head[1])


def _pair(toks: list[_Token], n: int) -> tuple[int, int]:
    _arity(toks, 3)
    return _int(toks[1], n), _int(toks[2], n)


def _unknown(tok: _Token, allowed: str):
    raise ParseError("unknown keyword %r (expected %s)" % (tok.text, allowed), tok.line, tok.column)


def parse_graph(text: str) -> ReflexiveGraph:
    rows = _lines(text)
    _, n = _header(rows, ("graph",))
    adj = [1 << v for v in range(n)]
    for toks in rows[1:]:
        if toks[0].text != "edge":
            _unknown(toks[0], "'edge'")
        u, v = _pair(toks, n)
        if u == v:
            raise ParseError("loops are implicit; drop 'edge %d %d'" % (u, v), toks[0].line, toks[0].column)
        if adj[u] >> v & 1:
            raise ParseError("duplicate edge %d %d" % (u, v), toks[0].line, toks[0].column)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return ReflexiveGraph(n, tuple(adj))


def _parse_order(rows: list[list[_Token]], n: int, keyword: str) -> tuple[Poset, list[list[_Token]]]:
    pairs = []
    rest = []
    for toks in rows[1:]:
        if toks[0].text == "cover":
            u, v = _pair(toks, n)
            if u == v:
                raise ParseError("cover %d %d relates an element to itself" % (u, v), toks[0].line, toks[0].column)
            pairs.append((u, v))
        elif toks[0].text in ("arc", "arcs"):
            rest.append(toks)
        else:
            _unknown(toks[0], "'cover', 'arc' or 'arcs'")
    try:
        p = poset_from_relation(n, pairs)
    except CycleError as exc:
        raise ParseError("%s relation has a cycle: %s" % (keyword, exc), rows[0][0].line, 1) from None
    return p, rest


def parse_poset(text: str) -> tuple[Poset, frozenset[tuple[int, int]] | None]:
    """Poset and its arc set; the arc set is ``None`` when no arc lines appear."""
    rows = _lines(text)
    _, n = _header(rows, ("poset",))
    p, rest = _parse_order(rows, n, "poset")
    if not rest:
        return p, None
    arcs: set[tuple[int, int]] = set()
    for toks in rest:
        if toks[0].text == "arc":
            u, v = _pair(toks, n)
            if not p.leq(u, v):
                raise ParseError("arc %d %d is not a comparability u <= v" % (u, v), toks[0].line, toks[0].column)
            arcs.add((u, v))
            continue
        _arity(toks, 2)
        word = toks[1].text
        if word == "all":
            arcs.update(p.comparabilities())
        elif word == "all-loops":
            arcs.update((x, x) for x in range(n))
        elif word != "none":
            _unknown(toks[1], "'all', 'all-loops' or 'none'")
    return p, frozenset(arcs)


def parse_lattice(text: str) -> Lattice:
    """A lattice given by its covers; a ``poset`` file stands for its downset lattice."""
    rows = _lines(text)
    kind, n = _header(rows, ("lattice", "poset"))
    if kind == "poset":
        from dlgraph.order import downset_lattice

        return downset_lattice(parse_poset(text)[0])
    p, rest = _parse_order(rows, n, "lattice")
    if rest:
        _unknown(rest[0][0], "'cover'")
    if n == 0:
        raise ParseError("a lattice needs at least one element", rows[0][1].line, rows[0][1].column)
    try:
        return lattice_from_order(p)
    except NotALatticeError as exc:
        raise ParseError("not a lattice: %s" % exc, rows[0][0].line, 1) from None


def parse_chains(text: str, n: int | None = None) -> ChainCover:
    chains = []
    for toks in _lines(text):
        if toks[0].text != "chain":
            _unknown(toks[0], "'chain'")
        if len(toks) < 2:
            raise ParseError("empty chain", toks[0].line, toks[0].column)
        chains.append(tuple(_int(t, n) for t in toks[1:]))
    if not chains:
        raise ParseError("no chains", 1, 1)
    return ChainCover(tuple(chains))


def parse_input(text: str):
    """Dispatch on the header: a graph, a ``(poset, arcs)`` pair or a lattice."""
    rows = _lines(text)
    kind, _ = _header(rows, ("graph", "poset", "lattice"))
    if kind == "graph":
        return parse_graph(text)
    if kind == "poset":
        return parse_poset(text)
    return parse_lattice(text)


def emit_graph(g: ReflexiveGraph, comments: list[str] | None = None) -> str:
    lines = ["# " + c for c in comments or []]
    lines.append("graph %d" % g.n)
    lines.extend("edge %d %d" % e for e in g.edges())
    return "\n".join(lines) + "\n"


def emit_poset(p: Poset, arcs: frozenset[tuple[int, int]] | None = None) -> str:
    lines = ["poset %d" % p.n]
    lines.extend("cover %d %d" % c for c in p.covers)
    if arcs is None:
        return "\n".join(lines) + "\n"
    everything = frozenset(p.comparabilities())
    loops = frozenset((x, x) for x in range(p.n))
    if arcs == everything and p.n:
        lines.append("arcs all")
    elif not arcs:
        lines.append("arcs none")
    else:
        rest = arcs
        if loops and loops <= arcs:
            lines.append("arcs all-loops")
            rest = arcs - loops
        lines.extend("arc %d %d" % a for a in sorted(rest))
    return "\n".join(lines) + "\n"


def emit_lattice(lat: Lattice) -> str:
    lines = ["lattice %d" % lat.n]
    lines.extend("cover %d %d" % c for c in lat.covers)
    return "\n".join(lines) + "\n"


def emit_chains(cover: ChainCover) -> str:
    return "".join("chain %s\n" % " ".join(map(str, c)) for c in cover.chains)


def lattice_document(lat: Lattice) -> dict:
    return {"n": lat.n, "zero": lat.zero, "one": lat.one, "covers": [list(c) for c in lat.covers]}


def lattice_from_document(doc: dict) -> Lattice:
    p = poset_from_relation(doc["n"], [tuple(c) for c in doc["covers"]])
    return lattice_from_order(p, doc.get("zero"), doc.get("one"))


def to_dot(g: ReflexiveGraph, lat: Lattice | None = None, names: list[str] | None = None) -> str:
    """Graph edges thin; lattice covers thick and light, drawn upward."""
    names = names or [str(v) for v in range(g.n)]
    covers = set(lat.covers) if lat is not None else set()
    out = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        out.append("  %d [label=%s];" % (v, json.dumps(names[v])))
    for x, y in covers:
        style = "" if g.adjacent(x, y) else ", style=dashed"
        out.append("  %d -- %d [penwidth=4, color=lightblue%s];" % (x, y, style))
    for u, v in g.edges():
        if (u, v) not in covers and (v, u) not in covers:
            out.append("  %d -- %d [penwidth=1];" % (u, v))
    out.append("}")
    return "\n".join(out) + "\n"

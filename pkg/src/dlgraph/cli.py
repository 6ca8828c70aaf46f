"""Command-line front end.

Exit codes: 0 success or YES, 1 NO or failed check, 2 input error,
3 INCONCLUSIVE. Documents go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from dlgraph import io
from dlgraph.compat import check_compatible, check_identities
from dlgraph.embed import embed, induced_cover
from dlgraph.gpa import construct_gpa, gpa_vertex_names, reduced_complement, validate_arcs
from dlgraph.graph import r_thin_classes, r_thin_reduction
from dlgraph.oracle import MAX_ORACLE_N, oracle_recognize
from dlgraph.order import downset_lattice, greedy_chain_decomposition, is_distributive
from dlgraph.recognize import Verdict, recognize_driver

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
VERBS = ("construct", "recognize", "verify", "embed", "reduce", "oracle")


class InputError(Exception):
    pass


@dataclass
class Command:
    verb: str
    inputs: list[str]
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verb not in VERBS:
            raise InputError("unknown verb %r" % self.verb)


@dataclass
class Outcome:
    code: int
    document: str = ""
    diagnostics: list[str] = field(default_factory=list)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError("%s: %s" % (path, exc.strerror or exc)) from None


def _parse(path: str, parser, *args):
    try:
        return parser(_read(path), *args)
    except io.ParseError as exc:
        raise InputError("%s: %s" % (path, exc)) from None


def _write_dot(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _poset_with_arcs(path: str):
    p, arcs = _parse(path, io.parse_poset)
    if arcs is None:
        raise InputError("%s: no arc set (add 'arc' lines or 'arcs all|all-loops|none')" % path)
    return p, arcs


def _construct(cmd: Command) -> Outcome:
    p, arcs = _poset_with_arcs(cmd.inputs[0])
    g = construct_gpa(p, arcs)
    names = gpa_vertex_names(p) if p.n <= 26 else [str(v) for v in range(g.n)]
    comments = ["vertex %d = %s" % (v, name) for v, name in enumerate(names)]
    lat = downset_lattice(p)
    _write_dot(cmd.flags.get("dot"), io.to_dot(g, lat, names))
    if cmd.flags.get("lattice"):
        Path(cmd.flags["lattice"]).write_text(io.emit_lattice(lat))
    return Outcome(EXIT_OK, io.emit_graph(g, comments))


def _recognize(cmd: Command) -> Outcome:
    g = _parse(cmd.inputs[0], io.parse_graph)
    if g.n == 0:
        raise InputError("empty graph")
    res = recognize_driver(
        g,
        prune=not cmd.flags.get("no_prune"),
        oracle_max_n=cmd.flags.get("oracle_max_n", 6),
        jobs=cmd.flags.get("jobs", 1),
    )
    doc = {"verdict": res.verdict.value, "reason": res.reason}
    if res.lattice is not None:
        doc["lattice"] = io.lattice_document(res.lattice)
        _write_dot(cmd.flags.get("dot"), io.to_dot(g, res.lattice))
    if res.details:
        doc["details"] = res.details
    code = {Verdict.YES: EXIT_OK, Verdict.NO: EXIT_FAIL, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}
    return Outcome(code[res.verdict], _json(doc))


def _verify(cmd: Command) -> Outcome:
    g = _parse(cmd.inputs[0], io.parse_graph)
    lat = _parse(cmd.inputs[1], io.parse_lattice)
    if lat.n != g.n:
        raise InputError("graph has %d vertices but lattice has %d elements" % (g.n, lat.n))
    comp = check_compatible(g, lat)
    ident = check_identities(g, lat)
    dist = is_distributive(lat)
    doc = {
        "compatible": comp.ok,
        "witness": list(comp.witness) if comp.witness else None,
        "distributive": dist.ok,
        "min_max": ident.min_max.ok,
        "vee": ident.vee.ok,
    }
    _write_dot(cmd.flags.get("dot"), io.to_dot(g, lat))
    return Outcome(EXIT_OK if comp else EXIT_FAIL, _json(doc))


def _embed(cmd: Command) -> Outcome:
    p, arcs = _poset_with_arcs(cmd.inputs[0])
    how = cmd.flags.get("cover", "auto")
    if how in ("auto", "induced"):
        cover = induced_cover(p, reduced_complement(p, validate_arcs(p, arcs)))
    elif how == "decomposition":
        cover = greedy_chain_decomposition(p)
    else:
        cover = _parse(how, io.parse_chains, p.n)
    try:
        emb = embed(p, arcs, cover)
    except ValueError as exc:
        raise InputError("cover: %s" % exc) from None
    return Outcome(EXIT_OK, _json(emb.as_dict()))


def _reduce(cmd: Command) -> Outcome:
    g = _parse(cmd.inputs[0], io.parse_graph)
    red, _ = r_thin_reduction(g)
    comments = ["class %d = %s" % (k, " ".join(map(str, c))) for k, c in enumerate(r_thin_classes(g))]
    return Outcome(EXIT_OK, io.emit_graph(red, comments))


def _oracle(cmd: Command) -> Outcome:
    g = _parse(cmd.inputs[0], io.parse_graph)
    max_n = cmd.flags.get("max_n", MAX_ORACLE_N)
    if g.n > max_n:
        raise InputError("graph has %d vertices, above --max-n %d" % (g.n, max_n))
    found = oracle_recognize(
        g,
        distributive_only=not cmd.flags.get("all_lattices"),
        prune=not cmd.flags.get("no_prune"),
        max_n=max_n,
    )
    return Outcome(EXIT_OK if found else EXIT_FAIL, _json([io.lattice_document(lat) for lat in found]))


_HANDLERS = {
    "construct": _construct,
    "recognize": _recognize,
    "verify": _verify,
    "embed": _embed,
    "reduce": _reduce,
    "oracle": _oracle,
}


def run(cmd: Command) -> Outcome:
    try:
        return _HANDLERS[cmd.verb](cmd)
    except InputError as exc:
        return Outcome(EXIT_INPUT, diagnostics=[str(exc)])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dlgraph", description="Reflexive graphs and distributive lattices.")
    sub = ap.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", help="build G(P, A) from a poset file with arcs")
    c.add_argument("poset")
    c.add_argument("--dot", metavar="FILE")
    c.add_argument("--lattice", metavar="FILE", help="also write the downset lattice")

    r = sub.add_parser("recognize", help="decide whether a graph has a compatible distributive lattice")
    r.add_argument("graph")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--no-prune", action="store_true", help="try every bottom/top pair")
    r.add_argument("--oracle-max-n", type=int, default=6, help="brute-force fallback bound for non-R-thin input")
    r.add_argument("--dot", metavar="FILE")

    v = sub.add_parser("verify", help="check a lattice against a graph")
    v.add_argument("graph")
    v.add_argument("lattice", help="lattice file, or poset file for its downset lattice")
    v.add_argument("--dot", metavar="FILE")

    e = sub.add_parser("embed", help="embed G(P, A) into a product of chain graphs")
    e.add_argument("poset")
    e.add_argument("--cover", default="auto", metavar="auto|induced|decomposition|FILE")

    d = sub.add_parser("reduce", help="R-thin reduction")
    d.add_argument("graph")

    o = sub.add_parser("oracle", help="list all compatible lattices by brute force")
    o.add_argument("graph")
    o.add_argument("--max-n", type=int, default=MAX_ORACLE_N)
    o.add_argument("--all-lattices", action="store_true", help="do not restrict to distributive lattices")
    o.add_argument("--no-prune", action="store_true")
    return ap


def command_from_args(ns: argparse.Namespace) -> Command:
    positional = {
        "construct": ["poset"],
        "recognize": ["graph"],
        "verify": ["graph", "lattice"],
        "embed": ["poset"],
        "reduce": ["graph"],
        "oracle": ["graph"],
    }[ns.verb]
    values = vars(ns)
    inputs = [values[k] for k in positional]
    flags = {k: v for k, v in values.items() if k not in positional and k != "verb"}
    return Command(ns.verb, inputs, flags)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(ns, "jobs", 1) < 1:
        print("dlgraph: --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    if max(getattr(ns, "max_n", 0), getattr(ns, "oracle_max_n", 0)) > MAX_ORACLE_N:
        print("dlgraph: oracle bound above %d is not supported" % MAX_ORACLE_N, file=sys.stderr)
        return EXIT_INPUT
    out = run(command_from_args(ns))
    for line in out.diagnostics:
        print("dlgraph: " + line, file=sys.stderr)
    sys.stdout.write(out.document)
    return out.code


if __name__ == "__main__":
    sys.exit(main())

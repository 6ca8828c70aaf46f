import json
import random
import subprocess
import sys

import pytest

from dlgraph import io
from dlgraph.cli import Command, InputError, main, run
from dlgraph.corpus import gpa_corpus, random_graph
from dlgraph.gpa import all_loops
from dlgraph.graph import complete_graph, path_graph
from dlgraph.order import chain_lattice, downset_lattice

FIG1_TEXT = "poset 4\ncover 0 2\ncover 1 2\ncover 1 3\narc 0 2\narc 1 3\narcs all-loops\n"
K14_TEXT = "graph 5\nedge 0 1\nedge 0 2\nedge 0 3\nedge 0 4\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_parse_graph():
    assert io.parse_graph("graph 2\nedge 0 1") == complete_graph(2)
    assert io.parse_graph("# comment\n\ngraph 3  # trailing\nedge 1 2\nedge 0 1\n") == path_graph(3)


def test_parse_graph_errors():
    with pytest.raises(io.ParseError) as exc:
        io.parse_graph("graph 2\nedge 0 5")
    assert (exc.value.line, exc.value.column) == (2, 8)
    for bad in ("", "graf 2", "graph x", "graph 2\nedge 0", "graph 2\nedge 1 1", "graph 2\nedge 0 1\nedge 1 0", "graph 2\nnode 0"):
        with pytest.raises(io.ParseError):
            io.parse_graph(bad)


def test_parse_fig1(fig1):
    p, arcs = io.parse_poset(FIG1_TEXT)
    assert (p, arcs) == fig1


def test_parse_input_dispatch(fig1):
    assert io.parse_input("graph 2\nedge 0 1") == complete_graph(2)
    assert io.parse_input(FIG1_TEXT) == fig1
    assert io.parse_input("lattice 3\ncover 0 1\ncover 1 2").order == chain_lattice(3).order


def test_parse_poset_errors():
    with pytest.raises(io.ParseError, match="cycle"):
        io.parse_poset("poset 2\ncover 0 1\ncover 1 0")
    with pytest.raises(io.ParseError, match="comparability"):
        io.parse_poset("poset 2\narc 0 1")
    with pytest.raises(io.ParseError, match="unknown keyword"):
        io.parse_poset("poset 2\narcs some")
    assert io.parse_poset("poset 2\ncover 0 1")[1] is None
    assert io.parse_poset("poset 2\narcs none")[1] == frozenset()


def test_parse_lattice_errors():
    with pytest.raises(io.ParseError, match="not a lattice"):
        io.parse_lattice("lattice 3\ncover 0 1\ncover 0 2")
    assert io.parse_lattice(FIG1_TEXT).order == downset_lattice(io.parse_poset(FIG1_TEXT)[0]).order


def test_graph_round_trip():
    rng = random.Random(71)
    for _ in range(50):
        g = random_graph(rng, rng.randint(0, 9), rng.random())
        text = io.emit_graph(g)
        assert io.parse_graph(text) == g
        assert io.emit_graph(io.parse_graph(text)) == text


def test_poset_round_trip():
    for p, arcs in gpa_corpus(72, 100):
        text = io.emit_poset(p, arcs)
        assert io.parse_poset(text) == (p, arcs)
        assert io.emit_poset(*io.parse_poset(text)) == text
    p = io.parse_poset(FIG1_TEXT)[0]
    assert io.parse_poset(io.emit_poset(p)) == (p, None)


def test_lattice_round_trip():
    lat = downset_lattice(io.parse_poset(FIG1_TEXT)[0])
    assert io.parse_lattice(io.emit_lattice(lat)).order == lat.order
    assert io.lattice_from_document(io.lattice_document(lat)).order == lat.order


def test_chains():
    cover = io.parse_chains("chain 0 2\nchain 1 3\n", 4)
    assert cover.chains == ((0, 2), (1, 3))
    assert io.parse_chains(io.emit_chains(cover)) == cover
    with pytest.raises(io.ParseError):
        io.parse_chains("chain 0 9", 4)


def test_dot():
    lat = chain_lattice(3)
    text = io.to_dot(path_graph(3), lat)
    assert text.startswith("graph G {") and text.count("penwidth=4") == 2
    text = io.to_dot(complete_graph(3), lat)
    assert text.count("penwidth=1") == 1


def test_construct_fig1(files, capsys, tmp_path):
    dot = tmp_path / "g.dot"
    lat = tmp_path / "g.lat"
    code = main(["construct", files("fig1.txt", FIG1_TEXT), "--dot", str(dot), "--lattice", str(lat)])
    out = capsys.readouterr().out
    assert code == 0
    g = io.parse_graph(out)
    assert g.n == 8 and g.edge_count == 24
    assert "vertex 5 = abc" in out
    assert dot.read_text().count("penwidth=4") == 10
    assert io.parse_lattice(lat.read_text()).n == 8


def test_recognize_k14(files, capsys):
    code = main(["recognize", files("k14.txt", K14_TEXT)])
    doc = json.loads(capsys.readouterr().out)
    assert code == 1 and doc["verdict"] == "no" and doc["reason"]


def test_recognize_yes_and_inconclusive(files, capsys):
    code = main(["recognize", files("p4.txt", io.emit_graph(path_graph(4)))])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["verdict"] == "yes"
    assert doc["lattice"]["covers"] == [[0, 1], [1, 2], [2, 3]]
    k7 = files("k7.txt", io.emit_graph(complete_graph(7)))
    assert main(["recognize", k7]) == 3
    assert json.loads(capsys.readouterr().out)["verdict"] == "inconclusive"
    assert main(["recognize", files("k3.txt", io.emit_graph(complete_graph(3)))]) == 0


def test_verify(files, capsys, tmp_path):
    lat = tmp_path / "fig1.lat"
    main(["construct", files("fig1.txt", FIG1_TEXT), "--lattice", str(lat)])
    graph = files("g.txt", capsys.readouterr().out)
    assert main(["verify", graph, str(lat)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["compatible"] and doc["distributive"] and doc["witness"] is None
    assert main(["verify", graph, files("fig1b.txt", FIG1_TEXT)]) == 0
    capsys.readouterr()
    twisted = files("t.lat", "lattice 3\ncover 0 2\ncover 2 1\n")
    assert main(["verify", files("p3.txt", io.emit_graph(path_graph(3))), twisted]) == 1
    assert json.loads(capsys.readouterr().out)["witness"] is not None


def test_embed_verb(files, capsys):
    path = files("fig1.txt", FIG1_TEXT)
    assert main(["embed", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["induced"] and doc["sizes"] == [2, 1, 1]
    assert main(["embed", path, "--cover", "decomposition"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert not doc["induced"] and doc["removed_vertex_intervals"] == [{"alpha": 2, "i": 0, "beta": 0, "j": 1}]
    assert main(["embed", path, "--cover", files("c.txt", "chain 0\nchain 1 2\nchain 3\n")]) == 0
    assert json.loads(capsys.readouterr().out)["sizes"] == [1, 2, 1]
    assert main(["embed", path, "--cover", files("bad.txt", "chain 0 1\nchain 2 3\n")]) == 2


def test_reduce(files, capsys):
    assert main(["reduce", files("k3.txt", io.emit_graph(complete_graph(3)))]) == 0
    out = capsys.readouterr().out
    assert io.parse_graph(out).n == 1 and "class 0 = 0 1 2" in out


def test_oracle_verb(files, capsys):
    p3 = files("p3.txt", io.emit_graph(path_graph(3)))
    assert main(["oracle", p3]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 2
    assert main(["oracle", files("k14.txt", K14_TEXT)]) == 1
    assert json.loads(capsys.readouterr().out) == []
    assert main(["oracle", p3, "--max-n", "2"]) == 2
    assert main(["oracle", p3, "--max-n", "9"]) == 2


def test_input_errors(files, capsys):
    assert main(["recognize", files("bad.txt", "graph 2\nedge 0 5\n")]) == 2
    err = capsys.readouterr().err
    assert "line 2, column 8" in err
    assert main(["recognize", "/nonexistent/file"]) == 2
    assert main(["construct", files("noarcs.txt", "poset 2\ncover 0 1\n")]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["recognize", files("p.txt", "graph 1\n"), "--jobs", "0"]) == 2


def test_run_api(files):
    out = run(Command("construct", [files("fig1.txt", FIG1_TEXT)]))
    assert out.code == 0 and io.parse_graph(out.document).n == 8
    with pytest.raises(InputError):
        Command("explode", [])


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "dlgraph", "recognize", files("k14.txt", K14_TEXT)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "no"


def test_arcs_keywords():
    p, arcs = io.parse_poset("poset 2\ncover 0 1\narcs all\n")
    assert arcs == {(0, 0), (0, 1), (1, 1)}
    assert io.emit_poset(p, all_loops(p)).endswith("arcs all-loops\n")

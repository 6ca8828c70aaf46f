from hypothesis import given, settings
from hypothesis import strategies as st

from dlgraph.compat import check_compatible, check_identities, is_polymorphism, majority_from_lattice
from dlgraph.embed import direct_induced_check, embed, induced_cover, reconstruct_graph
from dlgraph.gpa import all_arcs, construct_gpa, extract_arcs, normalize_arcs, reduced_complement
from dlgraph.graph import build_graph, r_thin_reduction
from dlgraph.io import emit_graph, emit_poset, parse_graph, parse_poset
from dlgraph.order import (
    downset_lattice,
    enumerate_downsets,
    greedy_chain_decomposition,
    is_distributive,
    join_irreducibles,
    poset_from_relation,
)
from dlgraph.recognize import Verdict, recognize_driver

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")


@st.composite
def posets(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = draw(st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=12))
    # Orient every pair along the permutation so no cycles appear.
    rank = {x: i for i, x in enumerate(perm)}
    return poset_from_relation(n, [(a, b) if rank[a] < rank[b] else (b, a) for a, b in pairs if a != b])


@st.composite
def instances(draw, max_n=6):
    p = draw(posets(max_n))
    arcs = sorted(all_arcs(p))
    keep = draw(st.lists(st.booleans(), min_size=len(arcs), max_size=len(arcs)))
    return p, frozenset(a for a, k in zip(arcs, keep) if k)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, k in zip(pairs, keep) if k])


@given(instances())
def test_downset_lattice_compatible(inst):
    p, arcs = inst
    g = construct_gpa(p, arcs)
    lat = downset_lattice(p)
    assert check_compatible(g, lat)
    assert check_identities(g, lat)


# Brute force over edge triples is cubic in the edge count; keep the graphs small.
@given(instances(max_n=4))
def test_majority_is_polymorphism(inst):
    p, arcs = inst
    assert is_polymorphism(construct_gpa(p, arcs), majority_from_lattice(downset_lattice(p)))


@given(instances())
def test_extract_then_rebuild(inst):
    p, arcs = inst
    g = construct_gpa(p, arcs)
    j, got = extract_arcs(g, downset_lattice(p))
    assert normalize_arcs(j, got) == got
    assert len(got) == len(normalize_arcs(p, arcs))


@given(instances())
def test_normalize_idempotent(inst):
    p, arcs = inst
    norm = normalize_arcs(p, arcs)
    assert normalize_arcs(p, norm) == norm
    assert reduced_complement(p, norm) == reduced_complement(p, arcs)


@given(instances())
def test_embeddings_reconstruct(inst):
    p, arcs = inst
    if p.n == 0:
        return
    g = construct_gpa(p, arcs)
    for cover in (greedy_chain_decomposition(p), induced_cover(p, reduced_complement(p, arcs))):
        emb = embed(p, arcs, cover)
        assert reconstruct_graph(emb) == g
        assert emb.induced == direct_induced_check(emb, g)


@given(posets())
def test_birkhoff(p):
    lat = downset_lattice(p)
    assert is_distributive(lat)
    rep = join_irreducibles(lat)
    assert rep.poset.n == p.n
    assert len(enumerate_downsets(rep.poset)) == lat.n


@given(graphs())
def test_round_trip_text(g):
    assert parse_graph(emit_graph(g)) == g


@given(instances())
def test_round_trip_poset_text(inst):
    p, arcs = inst
    assert parse_poset(emit_poset(p, arcs)) == (p, arcs)


@given(graphs(max_n=6))
def test_driver_yes_is_verified(g):
    res = recognize_driver(g)
    if res.verdict is Verdict.YES:
        assert check_compatible(g, res.lattice)
        assert is_distributive(res.lattice)
    reduced, _ = r_thin_reduction(g)
    assert reduced.is_r_thin()

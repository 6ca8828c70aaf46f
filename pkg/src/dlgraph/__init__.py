"""Reflexive graphs with distributive lattice polymorphisms."""
from dlgraph._backend import BACKEND
from dlgraph.compat import check_compatible, check_identities, majority_from_lattice
from dlgraph.gpa import construct_gpa, extract_arcs, normalize_arcs, reduced_complement
from dlgraph.graph import ReflexiveGraph, build_graph, r_thin_reduction
from dlgraph.order import Lattice, Poset, downset_lattice, enumerate_downsets, poset_from_covers
from dlgraph.recognize import RecognitionResult, Verdict, recognize_dl, recognize_driver

__all__ = [
    "BACKEND",
    "Lattice",
    "Poset",
    "RecognitionResult",
    "ReflexiveGraph",
    "Verdict",
    "build_graph",
    "check_compatible",
    "check_identities",
    "construct_gpa",
    "downset_lattice",
    "enumerate_downsets",
    "extract_arcs",
    "majority_from_lattice",
    "normalize_arcs",
    "poset_from_covers",
    "r_thin_reduction",
    "recognize_dl",
    "recognize_driver",
    "reduced_complement",
]

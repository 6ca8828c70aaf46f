import pytest

from dlgraph import _kernels_py
from dlgraph.gpa import all_loops
from dlgraph.graph import build_graph, path_graph, product_graph
from dlgraph.order import poset_from_covers

DEFAULT_SEED = 20240611

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for the random test corpora")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _backends():
    out = [pytest.param(_kernels_py, id="python")]
    try:
        from dlgraph import _kernels
    except ImportError:
        out.append(pytest.param(None, id="cython", marks=pytest.mark.skip(reason="extension not built")))
    else:
        out.append(pytest.param(_kernels, id="cython"))
    return out


@pytest.fixture(params=_backends())
def backend(request):
    return request.param


# Elements a, b, c, d are 0, 1, 2, 3.
A, B, C, D = range(4)


@pytest.fixture
def fig1():
    p = poset_from_covers(4, [(A, C), (B, C), (B, D)])
    arcs = all_loops(p) | {(A, C), (B, D)}
    return p, arcs


@pytest.fixture
def king3():
    return product_graph(path_graph(3), path_graph(3))


@pytest.fixture
def k14():
    return build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])

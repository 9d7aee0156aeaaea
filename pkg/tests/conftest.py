from __future__ import annotations

from hypothesis import strategies as st

from graphpoly.multigraph import Multigraph


@st.composite
def multigraphs(draw, max_vertices: int = 5, max_edges: int = 8, loops: bool = True) -> Multigraph:
    n = draw(st.integers(1, max_vertices))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if not loops:
        pair = pair.filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, max_size=max_edges))
    return Multigraph.from_pairs(n, pairs)


@st.composite
def trees(draw, max_vertices: int = 9) -> Multigraph:
    n = draw(st.integers(1, max_vertices))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return Multigraph.from_pairs(n, [(p, i) for i, p in enumerate(parents, start=1)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])

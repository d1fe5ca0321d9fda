import itertools
import os

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from subnetsched.graph import ConflictGraph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def conflict_graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ConflictGraph.from_edges(n, chosen)


def to_nx(g: ConflictGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_r_cliques(g: ConflictGraph, rho: int) -> set[tuple[int, tuple[int, ...]]]:
    """Exhaustive oracle: every subset, diameter measured in the induced subgraph
    with networkx, maximality checked among sets of the same diameter."""
    h = to_nx(g)
    by_diam: dict[int, list[frozenset]] = {}
    for size in range(1, g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            sub = h.subgraph(s)
            if not nx.is_connected(sub):
                continue
            d = nx.diameter(sub)
            if d <= rho:
                by_diam.setdefault(d, []).append(frozenset(s))
    out = set()
    for d, sets in by_diam.items():
        for s in sets:
            if not any(s < t for t in sets):
                out.add((d, tuple(sorted(s))))
    return out


@pytest.fixture
def tmp_edges(tmp_path):
    def write(text: str):
        p = tmp_path / "g.txt"
        p.write_text(text)
        return p

    return write

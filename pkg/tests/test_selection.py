import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subnetsched.cliques import CliqueVertex, temp_graph
from subnetsched.generators import erdos_renyi, line_clique, line_star
from subnetsched.graph import ConflictGraph, GraphInputError
from subnetsched.selection import (
    aggressive_centralized,
    aggressive_distributed,
    aggressive_survivors,
    appearance_counts,
    check_selection_invariants,
    check_view_consistency,
    conservative_select,
)

from conftest import conflict_graphs


def labels(sel):
    return sorted(w.label() for w in sel.consolidated.vertices)


def aggressive(g, rho):
    return aggressive_centralized(temp_graph(g, rho), g, rho)


def conservative(g, rho):
    return conservative_select(temp_graph(g, rho), g, rho)


def disjoint_triangles(k):
    edges = []
    for t in range(k):
        a = 3 * t
        edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
    return ConflictGraph.from_edges(3 * k, edges)


class TestAggressive:
    def test_line_clique_rho1(self):
        assert labels(aggressive(line_clique(6), 1)) == sorted(
            ["{1}", "{5}", "{6}", "{1,2}", "{2,3}", "{3,4}", "{4,5,6}"]
        )

    @pytest.mark.parametrize("rho", [2, 3])
    def test_degree_one_singleton_kept(self, rho):
        sel = aggressive(line_clique(20), rho)
        assert CliqueVertex(0, (0,)) in sel.consolidated.vertices

    def test_disjoint_triangles_nothing_removed(self):
        g = disjoint_triangles(3)
        temp = temp_graph(g, 1)
        assert aggressive(g, 1).consolidated.vertices == temp.vertices

    def test_line_clique_rho2_structure(self):
        sel = aggressive(line_clique(10), 2)
        got = labels(sel)
        # interior singletons and interior 1-cliques are covered twice by 2-cliques
        assert "{5}" not in got and "{4,5}" not in got
        # the pendant edge holds a degree-1 user
        assert "{1,2}" in got and "{1}" in got

    def test_each_higher_order_must_cover(self):
        # u covered twice at order 2 but only once at order 1: not redundant
        w = CliqueVertex(0, (5,))
        verts = [w, CliqueVertex(1, (4, 5)), CliqueVertex(2, (3, 4, 5)), CliqueVertex(2, (4, 5, 6))]
        assert w in aggressive_survivors(verts, 2, frozenset())
        verts.append(CliqueVertex(1, (5, 6)))
        assert w not in aggressive_survivors(verts, 2, frozenset())

    def test_rho_mismatch(self):
        g = line_clique(8)
        with pytest.raises(GraphInputError):
            aggressive_centralized(temp_graph(g, 2), g, 1)

    def test_appearance_counts(self):
        counts = appearance_counts(temp_graph(line_clique(6), 1).vertices)
        assert counts[(2, 1)] == 2 and counts[(3, 1)] == 2 and counts[(0, 1)] == 1 and counts[(0, 0)] == 1

    @given(conflict_graphs(max_n=10), st.integers(0, 3))
    def test_invariants(self, g, rho):
        sel = aggressive(g, rho)
        assert check_selection_invariants(sel, g) == []
        assert all(sel.a(u) >= 1 for u in range(g.n))
        assert set(sel.consolidated.vertices) <= set(temp_graph(g, rho).vertices)

    def test_json_shape(self):
        js = json.loads(json.dumps(aggressive(line_clique(6), 1).to_json()))
        assert js["algorithm"] == "aggressive" and js["rho"] == 1
        assert {"order": 1, "members": [4, 5, 6]} in js["vertices"]


class TestDistributed:
    def test_full_view_equals_central(self):
        g = line_clique(8)
        dist = aggressive_distributed(g, 3, 1, tau=50)
        assert dist.consolidated.vertices == aggressive(g, 1).consolidated.vertices
        assert dist.center == 3 and dist.to_json()["center"] == 4

    def test_representation_restricted_to_ball(self):
        g = line_clique(20)
        dist = aggressive_distributed(g, 0, 1)
        assert dist.users == list(range(5))

    @pytest.mark.parametrize("g", [line_clique(12), line_star(12), line_clique(20), ConflictGraph.complete(6)])
    @pytest.mark.parametrize("rho", [1, 2])
    def test_consistency_families(self, g, rho):
        rep = check_view_consistency(g, rho)
        assert rep.passed, rep.summary()
        assert rep.checked > 0

    @settings(max_examples=25)
    @given(conflict_graphs(min_n=2, max_n=11), st.integers(1, 2))
    def test_consistency_random(self, g, rho):
        assert check_view_consistency(g, rho).passed

    def test_insufficient_view_detected(self):
        # with tau = 2*rho some view misjudges coverage near its boundary
        failures = [
            check_view_consistency(erdos_renyi(15, 0.3, s), 1, tau=2) for s in range(30)
        ]
        bad = [r for r in failures if not r.passed]
        assert bad
        ce = bad[0].counterexample
        assert {"user", "vertex", "local_only", "central_only"} <= set(ce)
        assert "INCONSISTENT" in bad[0].summary()


class TestConservative:
    def test_line_clique(self):
        for rho in (1, 2, 3):
            assert conservative(line_clique(20), rho).consolidated.max_degree == 2
        assert "{18,19,20}" in labels(conservative(line_clique(20), 1))

    def test_single_k4(self):
        sel = conservative(ConflictGraph.complete(4), 1)
        assert labels(sel) == ["{1,2,3,4}"]
        assert sel.consolidated.max_degree == 0

    def test_rho0_is_identity(self):
        g = erdos_renyi(10, 0.3, 1)
        sel = conservative(g, 0)
        assert all(len(w) == 1 for w in sel.consolidated.vertices)

    @given(conflict_graphs(max_n=10), st.integers(0, 3))
    def test_properties(self, g, rho):
        sel = conservative(g, rho)
        assert check_selection_invariants(sel, g) == []
        assert all(sel.a(u) == 1 for u in range(g.n))
        for i, w in enumerate(sel.consolidated.vertices):
            assert sel.consolidated.degree(i) <= min(g.degree(u) for u in w.members)

    @pytest.mark.parametrize("seed", range(100))
    def test_properties_random(self, seed):
        g = erdos_renyi(20, 0.3, seed)
        assert check_selection_invariants(conservative(g, 1), g) == []


def test_invariant_checker_catches_broken_result():
    g = line_clique(6)
    sel = aggressive(g, 1)
    broken = type(sel)(sel.consolidated, {**sel.representation, 2: ()}, "aggressive", 1)
    assert any("not represented" in p for p in check_selection_invariants(broken, g))

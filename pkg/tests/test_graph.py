from pathlib import Path

from hypothesis import given, settings

import strategies as S
from hoterm.graph import (DependencyGraph, build_graph, recursion_components,
                          strongly_connected, to_dot)
from hoterm.hrs import load, parse
from hoterm.sdp import extract_sdps

FIXDIR = Path(__file__).parent.parent / "fixtures"


def sqsum_graph():
    pairs = extract_sdps(load(FIXDIR / "sqsum.hrs"))
    return pairs, build_graph(pairs)


class TestBuildGraph:
    def test_sqsum_arcs(self):
        _, g = sqsum_graph()
        assert g.arcs == {(0, 0), (1, 0), (2, 1), (2, 2), (3, 3),
                          (4, 3), (5, 0), (6, 1), (6, 2)}

    def test_arc_means_head_of_rhs_matches_head_of_lhs(self):
        pairs, g = sqsum_graph()
        from hoterm.terms import top
        for i, j in g.arcs:
            assert top(pairs[i].rhs).name == top(pairs[j].lhs).name

    def test_successors(self):
        _, g = sqsum_graph()
        assert g.successors(2) == [1, 2]
        assert g.successors(4) == [3]

    def test_empty_graph(self):
        g = build_graph(())
        assert g.nodes == ()
        assert g.arcs == frozenset()
        assert recursion_components(g) == ()

    def test_two_pair_single_arc(self):
        src = ("basic a\n"
               "sig f : a -> a\n"
               "sig g : a -> a\n"
               "sig c : a -> a\n"
               "var X : a\n"
               "rule f-def: f(c(X)) -> g(X)\n"
               "rule g-def: g(c(X)) -> f(X)\n")
        pairs = extract_sdps(parse(src))
        g = build_graph(pairs)
        assert g.arcs == {(0, 1), (1, 0)}
        comps = recursion_components(g)
        assert len(comps) == 1
        assert comps[0].indices == (0, 1)


class TestRecursionComponents:
    def test_sqsum_components(self):
        _, g = sqsum_graph()
        comps = recursion_components(g)
        assert [c.indices for c in comps] == [(0,), (2,), (3,)]

    def test_components_carry_their_pairs(self):
        pairs, g = sqsum_graph()
        comps = recursion_components(g)
        assert comps[0].pairs == (pairs[0],)
        assert comps[1].pairs == (pairs[2],)
        assert comps[2].pairs == (pairs[3],)

    def test_singleton_without_self_arc_is_not_a_component(self):
        # one defined symbol calling another, no cycle at all
        src = ("basic a\n"
               "sig f : a -> a\n"
               "sig g : a -> a\n"
               "sig c : a -> a\n"
               "var X : a\n"
               "rule f-def: f(c(X)) -> g(X)\n"
               "rule g-def: g(c(X)) -> X\n")
        pairs = extract_sdps(parse(src))
        assert len(pairs) == 1
        assert recursion_components(build_graph(pairs)) == ()


class TestStronglyConnected:
    def test_two_cycle_with_isolated_node(self):
        sccs = strongly_connected(3, frozenset({(0, 1), (1, 0)}))
        assert sorted(sccs) == [(0, 1), (2,)]

    def test_chain_is_all_singletons(self):
        sccs = strongly_connected(3, frozenset({(0, 1), (1, 2)}))
        assert sorted(sccs) == [(0,), (1,), (2,)]

    def test_every_node_in_exactly_one_scc(self):
        sccs = strongly_connected(5, frozenset({(0, 1), (1, 0), (2, 3),
                                                (3, 4), (4, 2)}))
        flat = sorted(i for scc in sccs for i in scc)
        assert flat == [0, 1, 2, 3, 4]

    @settings(max_examples=200)
    @given(S.digraphs())
    def test_matches_reachability_closure(self, graph):
        n, arcs = graph
        sccs = strongly_connected(n, arcs)

        # oracle: i ~ j iff i reaches j and j reaches i, by transitive closure
        reach = [[i == j for j in range(n)] for i in range(n)]
        for i, j in arcs:
            reach[i][j] = True
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    if reach[i][k] and reach[k][j]:
                        reach[i][j] = True
        classes = {}
        for i in range(n):
            key = frozenset(j for j in range(n)
                            if reach[i][j] and reach[j][i])
            classes.setdefault(key, []).append(i)
        expected = sorted(tuple(v) for v in classes.values())

        assert sorted(tuple(sorted(s)) for s in sccs) == expected


class TestDotOutput:
    def test_sqsum_dot_structure(self):
        _, g = sqsum_graph()
        dot = to_dot(g)
        assert dot.startswith("digraph sdg {")
        assert dot.rstrip().endswith("}")
        assert 'label="component 1"' in dot
        assert 'label="component 3"' in dot
        assert "n0 -> n0;" in dot
        assert "n6 -> n2;" in dot
        # every node present exactly once
        for i in range(7):
            assert dot.count(f"n{i} [label=") == 1

    def test_dot_escapes_backslashes(self):
        _, g = sqsum_graph()
        dot = to_dot(g)
        assert "\\\\x y. F(x, y)" in dot

    def test_nodes_outside_components_are_unclustered(self):
        _, g = sqsum_graph()
        dot = to_dot(g)
        # cluster members are indented one level deeper than loose nodes;
        # n4 (sqsum -> foldl) cycles with nothing, so it stays at top level
        assert "\n  n4 [label=" in dot
        assert "\n    n4 [label=" not in dot
        assert "\n    n0 [label=" in dot

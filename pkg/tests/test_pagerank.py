import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linearize.pagerank import (
    ConvergenceError,
    DanglingNodeError,
    NotIrreducibleError,
    WebGraph,
    is_irreducible,
    pagerank,
    parse_edge_list,
    web_matrix,
)
from oracles import period, reachable_from_all, solve_stationary

ORACLE_EXAMPLE = [("a", "b"), ("b", "a"), ("b", "c"), ("c", "a"), ("a", "c")]


def random_graphs(rng, count, max_nodes=8):
    out = []
    while len(out) < count:
        n = rng.randint(2, max_nodes)
        p = rng.choice((0.2, 0.35, 0.6))
        nodes = [f"v{i}" for i in range(n)]
        edges = [(u, v) for u in nodes for v in nodes if u != v and rng.random() < p]
        if edges:
            out.append((nodes, edges))
    return out


def symmetric_graphs():
    gs = {}
    for n in range(2, 9):
        nodes = [str(i) for i in range(n)]
        gs[f"cycle{n}"] = (nodes, [(str(i), str((i + 1) % n)) for i in range(n)])
        gs[f"complete{n}"] = (nodes, [(u, v) for u in nodes for v in nodes if u != v])
        gs[f"circulant{n}"] = (nodes, [(str(i), str((i + k) % n)) for i in range(n) for k in (1, 2)
                                       if (i + k) % n != i])
    cube = [format(i, "03b") for i in range(8)]
    gs["hypercube"] = (cube, [(u, v) for u in cube for v in cube
                              if sum(a != b for a, b in zip(u, v)) == 1])
    return gs


# -- web matrix -----------------------------------------------------------------

def test_two_cycle_matrix():
    g = WebGraph.from_edges([("a", "b"), ("b", "a")])
    assert web_matrix(g).to_dense() == [[0, 1], [1, 0]]


def test_columns_are_exactly_stochastic(rng):
    g = WebGraph.from_edges([("a", "b"), ("a", "c"), ("a", "d"), ("b", "a"), ("c", "a"), ("d", "b")])
    m = web_matrix(g)
    col_a = [m[i, 0] for i in range(4) if m[i, 0]]
    assert col_a == [Fraction(1, 3)] * 3
    for nodes, edges in random_graphs(rng, 30):
        g = WebGraph(tuple(nodes), frozenset(edges))
        if any(d == 0 for d in g.out_degree().values()):
            continue
        m = web_matrix(g)
        for j in range(len(nodes)):
            assert sum(m[i, j] for i in range(len(nodes))) == 1


def test_dangling_node_named():
    g = WebGraph.from_edges([("a", "b"), ("b", "a"), ("a", "z")])
    with pytest.raises(DanglingNodeError, match="'z'"):
        web_matrix(g)
    with pytest.raises(DanglingNodeError, match="'z'"):
        pagerank(g)


def test_graph_invariants():
    with pytest.raises(ValueError):
        WebGraph(("a",), frozenset({("a", "a")}))
    with pytest.raises(ValueError):
        WebGraph(("a",), frozenset({("a", "b")}))
    g = WebGraph.from_edges([("a", "b"), ("a", "b"), ("b", "a")])
    assert len(g.edges) == 2


def test_parse_edge_list():
    g = parse_edge_list("# web\na b\nb a  # back\n\nb c\nc c\nc a\n")
    assert g.nodes == ("a", "b", "c")
    assert ("c", "c") not in g.edges and len(g.edges) == 4
    with pytest.raises(ValueError, match="line 2"):
        parse_edge_list("a b\na b c\n")


# -- irreducibility -------------------------------------------------------------

def test_irreducibility_examples():
    assert is_irreducible(WebGraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")]))
    assert not is_irreducible(WebGraph.from_edges([("a", "b")]))


def test_irreducibility_matches_bfs(rng):
    for nodes, edges in random_graphs(rng, 200):
        g = WebGraph(tuple(nodes), frozenset(edges))
        assert is_irreducible(g) == reachable_from_all(nodes, edges)


def test_reducible_rejected_with_diagnostic():
    g = WebGraph.from_edges([("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "c")])
    with pytest.raises(NotIrreducibleError, match="strongly connected"):
        pagerank(g)


# -- power iteration ------------------------------------------------------------

def test_small_examples():
    r = pagerank(WebGraph.from_edges([("a", "b"), ("b", "a")]))
    assert r.scores == pytest.approx({"a": 0.5, "b": 0.5}, abs=1e-12)
    r = pagerank(WebGraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")]))
    assert all(abs(s - 1 / 3) < 1e-12 for s in r.scores.values())


def test_exact_oracle_example():
    g = WebGraph.from_edges(ORACLE_EXAMPLE)
    exact = solve_stationary(list(g.nodes), ORACLE_EXAMPLE)
    assert exact == {"a": Fraction(4, 9), "b": Fraction(2, 9), "c": Fraction(1, 3)}
    r = pagerank(g)
    for v in g.nodes:
        assert abs(r.scores[v] - float(exact[v])) < 1e-10
    assert r.residual <= 10 * 1e-12


def test_random_oracle_graphs(rng):
    checked = 0
    for nodes, edges in random_graphs(rng, 400):
        if not reachable_from_all(nodes, edges):
            continue
        g = WebGraph(tuple(nodes), frozenset(edges))
        exact = solve_stationary(nodes, edges)
        try:
            r = pagerank(g)
        except ConvergenceError:
            assert period(nodes, edges) > 1
            continue
        checked += 1
        assert max(abs(r.scores[v] - float(exact[v])) for v in nodes) < 1e-10
        assert abs(sum(r.scores.values()) - 1) < 1e-12
        assert all(s > 0 for s in r.scores.values())
        if period(nodes, edges) == 1:
            assert r.residual <= 10 * 1e-12
    assert checked >= 50


def test_periodic_non_uniform_reports_non_convergence():
    # bipartite {a} | {b, c}: the uniform start puts 1/3 on one side, the fixed point 1/2
    g = WebGraph.from_edges([("a", "b"), ("b", "a"), ("a", "c"), ("c", "a")])
    with pytest.raises(ConvergenceError, match="periodic"):
        pagerank(g, max_iterations=2000)


def test_symmetric_graphs_uniform():
    for name, (nodes, edges) in symmetric_graphs().items():
        r = pagerank(WebGraph(tuple(nodes), frozenset(edges)))
        assert max(abs(s - 1 / len(nodes)) for s in r.scores.values()) < 1e-12, name


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_relabel_equivariance(r):
    nodes = [f"n{i}" for i in range(6)]
    edges = [(nodes[i], nodes[(i + 1) % 6]) for i in range(6)]
    edges += [(u, v) for u in nodes for v in nodes if u != v and r.random() < 0.3]
    g = WebGraph(tuple(nodes), frozenset(edges))
    perm = nodes[:]
    r.shuffle(perm)
    try:
        a = pagerank(g)
        b = pagerank(g.relabeled(perm))
    except ConvergenceError:
        return
    for v in nodes:
        assert abs(a.scores[v] - b.scores[v]) < 1e-10


def test_ranking_and_json():
    r = pagerank(WebGraph.from_edges(ORACLE_EXAMPLE))
    ranked = [v for v, _ in r.ranking()]
    assert ranked == ["a", "c", "b"]
    data = json.loads(json.dumps(r.to_json()))
    assert [row["node"] for row in data["scores"]] == ranked
    assert "extensions" not in data


def test_extensions_are_opt_in():
    g = WebGraph.from_edges([("a", "b"), ("b", "a"), ("a", "z")])
    r = pagerank(g, dangling="uniform")
    assert r.extensions == {"dangling": "uniform"}
    assert abs(sum(r.scores.values()) - 1) < 1e-12
    reducible = WebGraph.from_edges([("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "c")])
    r = pagerank(reducible, damping=0.85)
    assert r.extensions == {"damping": 0.85}
    assert all(s > 0 for s in r.scores.values())
    with pytest.raises(ValueError):
        pagerank(g, damping=1.5)

"""PageRank: the Perron eigenvector of the column-stochastic web matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy.sparse import csc_matrix
from scipy.sparse.csgraph import connected_components

from .matrix import RationalMatrix

__all__ = [
    "WebGraph",
    "PageRankResult",
    "DanglingNodeError",
    "NotIrreducibleError",
    "ConvergenceError",
    "parse_edge_list",
    "web_matrix",
    "is_irreducible",
    "pagerank",
]


class DanglingNodeError(ValueError):
    def __init__(self, node: str):
        super().__init__(f"node {node!r} has no outgoing edges")
        self.node = node


class NotIrreducibleError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class WebGraph:
    """Directed graph without self-loops; ``nodes`` fixes the index order."""

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        nodes = tuple(str(v) for v in self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node identifier")
        edges = frozenset((str(u), str(v)) for u, v in self.edges)
        known = set(nodes)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an unknown node")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], nodes: Iterable | None = None) -> WebGraph:
        """Node order is ``nodes`` if given, else first appearance in ``edges``."""
        edges = [(str(u), str(v)) for u, v in edges]
        if nodes is None:
            seen: dict[str, None] = {}
            for u, v in edges:
                seen.setdefault(u)
                seen.setdefault(v)
            nodes = list(seen)
        return cls(tuple(nodes), frozenset(edges))

    @property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    def out_degree(self) -> dict[str, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for u, _ in self.edges:
            deg[u] += 1
        return deg

    def relabeled(self, order: Iterable[str]) -> WebGraph:
        return WebGraph(tuple(order), self.edges)


def parse_edge_list(text: str) -> WebGraph:
    """``src dst`` per line; ``#`` starts a comment.

    A page linking to itself contributes no edge, so such lines are skipped.
    """
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'src dst', got {line!r}")
        if parts[0] != parts[1]:
            edges.append((parts[0], parts[1]))
    if not edges:
        raise ValueError("edge list is empty")
    return WebGraph.from_edges(edges)


def web_matrix(g: WebGraph) -> RationalMatrix:
    """Exact matrix with ``a[j, i] = 1/N_i`` for each edge ``i -> j``."""
    deg = g.out_degree()
    for v in g.nodes:
        if deg[v] == 0:
            raise DanglingNodeError(v)
    idx = g.index
    return RationalMatrix(len(g.nodes), len(g.nodes),
                          {(idx[v], idx[u]): Fraction(1, deg[u]) for u, v in g.edges})


def _adjacency(g: WebGraph) -> csc_matrix:
    idx = g.index
    n = len(g.nodes)
    if not g.edges:
        return csc_matrix((n, n))
    rows, cols = zip(*((idx[u], idx[v]) for u, v in g.edges))
    return csc_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))


def is_irreducible(g: WebGraph) -> bool:
    """True iff the graph is strongly connected."""
    if not g.nodes:
        return False
    ncomp, _ = connected_components(_adjacency(g), directed=True, connection="strong")
    return ncomp == 1


@dataclass
class PageRankResult:
    scores: dict[str, float]
    iterations: int
    residual: float
    extensions: dict = field(default_factory=dict)

    def ranking(self) -> list[tuple[str, float]]:
        """Nodes by descending score, ties by node order."""
        order = {v: i for i, v in enumerate(self.scores)}
        return sorted(self.scores.items(), key=lambda kv: (-kv[1], order[kv[0]]))

    def to_json(self) -> dict:
        return {
            "scores": [{"node": v, "score": s} for v, s in self.ranking()],
            "iterations": self.iterations,
            "residual": self.residual,
            **({"extensions": self.extensions} if self.extensions else {}),
        }


def pagerank(g: WebGraph, tolerance: float = 1e-12, max_iterations: int = 100_000,
             damping: float | None = None, dangling: str = "error") -> PageRankResult:
    """Power iteration from the uniform vector, renormalized to sum 1 each step.

    Stops once successive iterates differ by less than ``tolerance`` in the
    max-norm. ``damping`` (teleport with probability ``1 - damping``) and
    ``dangling="uniform"`` (dangling nodes link to every node) go beyond the
    plain web matrix and are off by default.
    """
    if dangling not in ("error", "uniform"):
        raise ValueError(f"dangling must be 'error' or 'uniform', got {dangling!r}")
    if damping is not None and not 0 < damping <= 1:
        raise ValueError("damping must lie in (0, 1]")
    n = len(g.nodes)
    if n == 0:
        raise NotIrreducibleError("graph has no nodes")
    deg = g.out_degree()
    dangling_nodes = [v for v in g.nodes if deg[v] == 0]
    if dangling_nodes and dangling == "error":
        raise DanglingNodeError(dangling_nodes[0])

    teleport = damping is not None and damping < 1
    if not teleport:
        check = g
        if dangling_nodes:
            extra = {(u, v) for u in dangling_nodes for v in g.nodes if v != u}
            check = WebGraph(g.nodes, g.edges | extra)
        if not is_irreducible(check):
            raise NotIrreducibleError("graph is not strongly connected; the Perron vector is not unique")

    idx = g.index
    if g.edges:
        rows, cols, vals = zip(*((idx[v], idx[u], 1.0 / deg[u]) for u, v in g.edges))
        A = csc_matrix((vals, (rows, cols)), shape=(n, n))
    else:
        A = csc_matrix((n, n))
    dmask = np.array([deg[v] == 0 for v in g.nodes])

    def step(v: np.ndarray) -> np.ndarray:
        w = A @ v
        if dmask.any():
            w = w + v[dmask].sum() / n
        if teleport:
            w = damping * w + (1.0 - damping) / n
        return w

    v = np.full(n, 1.0 / n)
    for it in range(1, max_iterations + 1):
        w = step(v)
        w /= w.sum()
        delta = np.abs(w - v).max()
        v = w
        if delta < tolerance:
            break
    else:
        raise ConvergenceError(
            f"power iteration did not converge within {max_iterations} iterations "
            f"(last change {delta:.3e}); the graph may be periodic"
        )
    residual = float(np.abs(step(v) - v).max())
    ext = {}
    if teleport:
        ext["damping"] = damping
    if dangling_nodes:
        ext["dangling"] = "uniform"
    return PageRankResult(dict(zip(g.nodes, v.tolist())), it, residual, ext)

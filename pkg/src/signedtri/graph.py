"""Signed graphs, random instances and exact (brute-force) triangle statistics."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np


class GraphValidationError(ValueError):
    """Raised when an edge list violates the signed-graph invariants."""


class UndefinedBalanceError(ZeroDivisionError):
    """Raised when a balance ratio is requested for a triangle-free input."""


@dataclass(frozen=True)
class SignedGraph:
    """Simple undirected graph on ``0..n-1`` with a +1/-1 label per edge.

    ``edges`` is a tuple of canonical ``(u, v, sign)`` triples with ``u < v``,
    sorted lexicographically.  Use :func:`make_graph` to build one from an
    arbitrary edge iterable.
    """

    n: int
    edges: tuple

    def __post_init__(self):
        validate_edges(self.n, self.edges)
        if any(u > v for u, v, _ in self.edges):
            raise GraphValidationError("edges must be stored as u < v; use make_graph")

    @property
    def m(self) -> int:
        return len(self.edges)

    def sign_matrix(self) -> np.ndarray:
        """Dense ``n x n`` int8 matrix: 0 for non-edges, else the sign."""
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v, s in self.edges:
            a[u, v] = s
            a[v, u] = s
        return a

    def count_signs(self) -> tuple[int, int]:
        pos = sum(1 for e in self.edges if e[2] > 0)
        return pos, self.m - pos


@dataclass(frozen=True)
class TriangleCounts:
    """Counts of triangles by number of positive edges (``t1`` has one, ...)."""

    t0: int
    t1: int
    t2: int
    t3: int

    @property
    def total(self) -> int:
        return self.t0 + self.t1 + self.t2 + self.t3

    @property
    def balanced(self) -> int:
        return self.t1 + self.t3

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.t0, self.t1, self.t2, self.t3)

    def __getitem__(self, j: int) -> int:
        return self.as_tuple()[j]


@dataclass(frozen=True)
class GraphParams:
    n: int
    m: int
    delta_e: int
    delta_v: int


def validate_edges(n: int, edges: Iterable) -> None:
    if n < 0:
        raise GraphValidationError(f"vertex count must be non-negative, got {n}")
    seen = set()
    for e in edges:
        u, v, s = e
        if u == v:
            raise GraphValidationError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if s not in (1, -1):
            raise GraphValidationError(f"edge ({u}, {v}) has sign {s!r}, expected +1 or -1")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphValidationError(f"duplicate vertex pair {key}")
        seen.add(key)


def make_graph(n: int, edges: Iterable) -> SignedGraph:
    """Canonicalize ``(u, v, sign)`` triples to ``u < v`` and sort them.

    Duplicated pairs raise instead of being merged.
    """
    edges = list(edges)
    validate_edges(n, edges)
    canon = sorted((min(u, v), max(u, v), int(s)) for u, v, s in edges)
    return SignedGraph(n=n, edges=tuple(canon))


def generate_er_signed(n: int, p_e: float, p_plus: float, seed) -> SignedGraph:
    """Signed Erdos-Renyi graph G(n, p_e) with independent signs, +1 w.p. ``p_plus``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    for name, p in (("p_e", p_e), ("p_plus", p_plus)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    present = rng.random(iu.size) < p_e
    positive = rng.random(iu.size) < p_plus
    edges = tuple(
        (int(u), int(v), 1 if pos else -1)
        for u, v, pos in zip(iu[present], ju[present], positive[present])
    )
    return SignedGraph(n=n, edges=edges)


def _triangles(g: SignedGraph):
    # yields (u, v, w, s_uv, s_uw, s_vw) for u < v < w
    a = g.sign_matrix()
    for u, v, w in combinations(range(g.n), 3):
        s_uv = a[u, v]
        if not s_uv:
            continue
        s_uw = a[u, w]
        if not s_uw:
            continue
        s_vw = a[v, w]
        if s_vw:
            yield u, v, w, int(s_uv), int(s_uw), int(s_vw)


def count_triangles_exact(g: SignedGraph) -> TriangleCounts:
    """Exact counts by type from traces of products of the +/- adjacency matrices.

    ``tr(P^3) = 6 T3``, ``tr(N^3) = 6 T0``, ``tr(P P N) = 2 T2``, ``tr(P N N) = 2 T1``.
    """
    a = g.sign_matrix()
    pos = (a > 0).astype(np.int64)
    neg = (a < 0).astype(np.int64)
    pp = pos @ pos
    nn = neg @ neg
    t3 = int(np.einsum("ij,ji->", pp, pos)) // 6
    t0 = int(np.einsum("ij,ji->", nn, neg)) // 6
    t2 = int(np.einsum("ij,ji->", pp, neg)) // 2
    t1 = int(np.einsum("ij,ji->", pos, nn)) // 2
    return TriangleCounts(t0, t1, t2, t3)


def count_triangles_unsigned(g: SignedGraph) -> int:
    """Unsigned triangle count by a different route (adjacency sets per edge)."""
    nbrs = [set() for _ in range(g.n)]
    for u, v, _ in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    # each triangle is seen once from each of its three edges
    return sum(len(nbrs[u] & nbrs[v]) for u, v, _ in g.edges) // 3


def balance_exact(c: TriangleCounts) -> float:
    """Fraction of triangles with an even number of negative edges."""
    if c.total == 0:
        raise UndefinedBalanceError("balance is undefined for a graph without triangles")
    return c.balanced / c.total


def graph_params(g: SignedGraph) -> GraphParams:
    """Exact maximum triangles per edge and per vertex."""
    per_edge: dict = {}
    per_vertex = [0] * g.n
    for u, v, w, *_ in _triangles(g):
        for pair in ((u, v), (u, w), (v, w)):
            per_edge[pair] = per_edge.get(pair, 0) + 1
        per_vertex[u] += 1
        per_vertex[v] += 1
        per_vertex[w] += 1
    return GraphParams(
        n=g.n,
        m=g.m,
        delta_e=max(per_edge.values(), default=0),
        delta_v=max(per_vertex, default=0),
    )


def max_t1_per_edge(g: SignedGraph) -> int:
    """Largest number of one-positive-edge triangles sharing a single edge."""
    per_edge: dict = {}
    for u, v, w, a, b, d in _triangles(g):
        if (a > 0) + (b > 0) + (d > 0) != 1:
            continue
        for pair in ((u, v), (u, w), (v, w)):
            per_edge[pair] = per_edge.get(pair, 0) + 1
    return max(per_edge.values(), default=0)


def flip_signs(g: SignedGraph) -> SignedGraph:
    return SignedGraph(n=g.n, edges=tuple((u, v, -s) for u, v, s in g.edges))

"""Exact half-integer distances between hyperedges.

Lengths are carried as integer counts of half-units (so ``1`` means 1/2 and
``2`` means 1). Unreachable pairs use :data:`INF`, which is ``math.inf`` and
therefore absorbs addition and compares above every integer.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import Hyperedge, Hypergraph, augment_vertices

INF = math.inf


class NotAPathError(ValueError):
    pass


def format_half(length2) -> str:
    """Render a half-unit count as ``"0"``, ``"1/2"``, ``"3"``, ``"inf"``."""
    if length2 == INF:
        return "inf"
    if length2 % 2 == 0:
        return str(length2 // 2)
    return f"{length2}/2"


def parse_half(text: str):
    text = text.strip()
    if text == "inf":
        return INF
    if text.endswith("/2"):
        return int(text[:-2])
    return 2 * int(text)


def step_length(s: Sequence[str], t: Sequence[str]) -> int:
    """Length (in half-units) of one step between intersecting hyperedges."""
    a, b = set(s), set(t)
    if not a & b:
        raise NotAPathError(f"hyperedges {sorted(a)} and {sorted(b)} are disjoint")
    if a == b:
        return 0
    if a < b or b < a:
        return 1
    return 2


@dataclass(frozen=True)
class PathWitness:
    edges: tuple[int, ...]
    length2: int
    height: int

    @property
    def length(self) -> str:
        return format_half(self.length2)


def path_length(h: Hypergraph, edges: Sequence[int]) -> PathWitness:
    if not edges:
        raise NotAPathError("empty path")
    total = 0
    for i, j in zip(edges, edges[1:]):
        total += step_length(h.edges[i], h.edges[j])
    return PathWitness(tuple(edges), total, len(edges) - 1)


def intersection_graph(edges: Sequence[Hyperedge]) -> list[list[tuple[int, int]]]:
    """Adjacency lists ``i -> [(j, half-unit weight)]`` without self-loops."""
    by_vertex: dict[str, list[int]] = {}
    for i, e in enumerate(edges):
        for v in e:
            by_vertex.setdefault(v, []).append(i)
    sets = [frozenset(e) for e in edges]
    adj: list[list[tuple[int, int]]] = []
    for i, e in enumerate(edges):
        nbrs = sorted({j for v in e for j in by_vertex[v] if j != i})
        row = []
        for j in nbrs:
            a, b = sets[i], sets[j]
            row.append((j, 1 if (a < b or b < a) else 2))
        adj.append(row)
    return adj


def _dijkstra(adj, source: int):
    n = len(adj)
    dist = [INF] * n
    pred = [-1] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w in adj[u]:
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _bfs(adj, source: int):
    n = len(adj)
    hops = [INF] * n
    pred = [-1] * n
    hops[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if hops[v] == INF:
                hops[v] = hops[u] + 1
                pred[v] = u
                queue.append(v)
    return hops, pred


def _unwind(pred, source: int, target: int) -> tuple[int, ...]:
    path = [target]
    while path[-1] != source:
        path.append(pred[path[-1]])
    return tuple(reversed(path))


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs intercrossing distance ``d`` (half-units) and hop distance ``delta``.

    ``labels`` names the rows: hyperedges for :func:`distance_matrix`, vertex
    labels for :func:`vertex_distance_matrix`.
    """

    labels: tuple
    d: tuple[tuple, ...]
    delta: tuple[tuple, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {
            "labels": [list(x) if isinstance(x, tuple) else x for x in self.labels],
            "d": [[format_half(x) for x in row] for row in self.d],
            "delta": [["inf" if x == INF else str(x) for x in row] for row in self.delta],
        }


def _all_pairs(adj, sources: Sequence[int]):
    d_rows, delta_rows = [], []
    for s in sources:
        d_rows.append(_dijkstra(adj, s)[0])
        delta_rows.append(_bfs(adj, s)[0])
    return d_rows, delta_rows


def distance_matrix(h: Hypergraph) -> DistanceMatrix:
    adj = intersection_graph(h.edges)
    d_rows, delta_rows = _all_pairs(adj, range(h.n_edges))
    return DistanceMatrix(
        h.edges,
        tuple(tuple(r) for r in d_rows),
        tuple(tuple(r) for r in delta_rows),
    )


def vertex_distance_matrix(h: Hypergraph) -> DistanceMatrix:
    """Singleton-to-singleton distances computed in the vertex-augmented hypergraph."""
    hbar = augment_vertices(h)
    adj = intersection_graph(hbar.edges)
    idx = [hbar.index((v,)) for v in h.vertices]
    d_rows, delta_rows = _all_pairs(adj, idx)
    return DistanceMatrix(
        h.vertices,
        tuple(tuple(r[j] for j in idx) for r in d_rows),
        tuple(tuple(r[j] for j in idx) for r in delta_rows),
    )


def length_witness(h: Hypergraph, i: int, j: int) -> PathWitness | None:
    """A path from edge ``i`` to edge ``j`` of minimum length, or ``None``."""
    adj = intersection_graph(h.edges)
    dist, pred = _dijkstra(adj, i)
    if dist[j] == INF:
        return None
    return path_length(h, _unwind(pred, i, j))


def height_witness(h: Hypergraph, i: int, j: int) -> PathWitness | None:
    """A path from edge ``i`` to edge ``j`` of minimum height, or ``None``."""
    adj = intersection_graph(h.edges)
    hops, pred = _bfs(adj, i)
    if hops[j] == INF:
        return None
    return path_length(h, _unwind(pred, i, j))


def joint_witness(h: Hypergraph, i: int, j: int) -> PathWitness | None:
    """A path attaining both the minimum length and the minimum height.

    Searched lexicographically on (length, height), which finds such a path
    whenever one exists.
    """
    adj = intersection_graph(h.edges)
    best = {i: (0, 0)}
    pred = {i: -1}
    heap = [(0, 0, i)]
    while heap:
        du, hu, u = heapq.heappop(heap)
        if (du, hu) > best[u]:
            continue
        for v, w in adj[u]:
            cand = (du + w, hu + 1)
            if v not in best or cand < best[v]:
                best[v] = cand
                pred[v] = u
                heapq.heappush(heap, (cand[0], cand[1], v))
    if j not in best:
        return None
    return path_length(h, _unwind(pred, i, j))

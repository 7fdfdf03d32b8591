"""Hypergraph data model.

A hypergraph is a finite vertex universe together with a set of distinct,
nonempty hyperedges. Vertices are opaque string labels; a hyperedge is stored
as the sorted tuple of its labels. Edges are kept in canonical order (size
first, then lexicographic) so that every downstream enumeration, matrix layout
and JSON dump is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Hyperedge = tuple[str, ...]

DEFAULT_CLOSURE_CAP = 2**20


class HypergraphError(ValueError):
    """Invalid hypergraph input."""


class ResourceCapExceeded(RuntimeError):
    """A combinatorial computation grew past its configured cap."""


class ClosureCapExceeded(ResourceCapExceeded):
    pass


def _edge_key(edge: Hyperedge) -> tuple[int, Hyperedge]:
    return (len(edge), edge)


def _check_label(label) -> str:
    if not isinstance(label, str) or not label or any(c.isspace() for c in label):
        raise HypergraphError(f"invalid vertex label {label!r}")
    return label


def make_edge(vertices: Iterable[str]) -> Hyperedge:
    labels = [_check_label(v) for v in vertices]
    if not labels:
        raise HypergraphError("empty hyperedge")
    if len(set(labels)) != len(labels):
        raise HypergraphError(f"repeated vertex in hyperedge {labels!r}")
    return tuple(sorted(labels))


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph with canonically ordered hyperedges.

    Build instances with :meth:`from_edges`; the raw constructor assumes its
    arguments are already canonical.
    """

    vertices: tuple[str, ...]
    edges: tuple[Hyperedge, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.edges)})

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Iterable[str]],
        vertices: Iterable[str] | None = None,
        *,
        allow_duplicates: bool = False,
    ) -> "Hypergraph":
        canon = [make_edge(e) for e in edges]
        seen = set()
        unique = []
        for e in canon:
            if e in seen:
                if not allow_duplicates:
                    raise HypergraphError(f"duplicate hyperedge {list(e)!r}")
                continue
            seen.add(e)
            unique.append(e)
        covered = {v for e in unique for v in e}
        if vertices is None:
            verts = covered
        else:
            verts_list = [_check_label(v) for v in vertices]
            verts = set(verts_list)
            if len(verts) != len(verts_list):
                raise HypergraphError("duplicate vertex in vertex list")
            missing = covered - verts
            if missing:
                raise HypergraphError(
                    f"hyperedge vertices missing from vertex list: {sorted(missing)!r}"
                )
        return cls(tuple(sorted(verts)), tuple(sorted(unique, key=_edge_key)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def index(self, edge: Iterable[str]) -> int:
        """Canonical position of ``edge``; raises ``KeyError`` if absent."""
        return self._index[tuple(sorted(edge))]

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self._index

    def __len__(self) -> int:
        return len(self.edges)

    def is_simplicial_complex(self) -> bool:
        for e in self.edges:
            for r in range(1, len(e)):
                for face in combinations(e, r):
                    if face not in self._index:
                        return False
        return True

    def relabel(self, mapping) -> "Hypergraph":
        """Apply a vertex relabelling (dict or callable)."""
        fn = mapping if callable(mapping) else mapping.__getitem__
        return Hypergraph.from_edges(
            [[fn(v) for v in e] for e in self.edges],
            [fn(v) for v in self.vertices],
        )


def parse(text: bytes | str) -> Hypergraph:
    """Read the JSON hypergraph format ``{"vertices": [...], "hyperedges": [...]}``."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HypergraphError(f"input is not UTF-8: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict) or "hyperedges" not in data:
        raise HypergraphError('expected an object with a "hyperedges" field')
    edges = data["hyperedges"]
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise HypergraphError('"hyperedges" must be a list of lists')
    vertices = data.get("vertices")
    if vertices is not None and not isinstance(vertices, list):
        raise HypergraphError('"vertices" must be a list')
    return Hypergraph.from_edges(edges, vertices)


def to_dict(h: Hypergraph) -> dict:
    return {"vertices": list(h.vertices), "hyperedges": [list(e) for e in h.edges]}


def serialize(h: Hypergraph) -> str:
    return json.dumps(to_dict(h), ensure_ascii=False) + "\n"


def simplicial_closure(h: Hypergraph, cap: int = DEFAULT_CLOSURE_CAP) -> Hypergraph:
    """All nonempty subsets of hyperedges of ``h``."""
    faces: set[Hyperedge] = set(h.edges)
    for e in h.edges:
        if len(e) > 1 and 2 ** len(e) - 1 > cap:
            raise ClosureCapExceeded(f"simplicial closure exceeds {cap} edges")
        for r in range(1, len(e)):
            for face in combinations(e, r):
                faces.add(face)
                if len(faces) > cap:
                    raise ClosureCapExceeded(f"simplicial closure exceeds {cap} edges")
    if len(faces) > cap:
        raise ClosureCapExceeded(f"simplicial closure exceeds {cap} edges")
    return Hypergraph(h.vertices, tuple(sorted(faces, key=_edge_key)))


def augment_vertices(h: Hypergraph) -> Hypergraph:
    """``h`` with every vertex adjoined as a 0-hyperedge."""
    edges = set(h.edges) | {(v,) for v in h.vertices}
    return Hypergraph(h.vertices, tuple(sorted(edges, key=_edge_key)))


def _disjoint_prefixes(g: Hypergraph, h: Hypergraph) -> str:
    prefix = "1:"
    taken = set(g.vertices)
    while any(prefix + v in taken for v in h.vertices):
        prefix = "1" + prefix
    return prefix


def disjoint_union(g: Hypergraph, h: Hypergraph) -> Hypergraph:
    """Tagged union; labels of ``h`` get a prefix that avoids every label of ``g``."""
    prefix = _disjoint_prefixes(g, h)
    edges = list(g.edges) + [tuple(prefix + v for v in e) for e in h.edges]
    vertices = list(g.vertices) + [prefix + v for v in h.vertices]
    return Hypergraph.from_edges(edges, vertices)


def union_relabelling(g: Hypergraph, h: Hypergraph) -> dict[str, str]:
    """Vertex map ``h -> g ⊔ h`` used by :func:`disjoint_union`."""
    prefix = _disjoint_prefixes(g, h)
    return {v: prefix + v for v in h.vertices}


def skeleton_1(k: Hypergraph) -> Hypergraph:
    if not k.is_simplicial_complex():
        raise HypergraphError("1-skeleton requires a simplicial complex")
    return Hypergraph(k.vertices, tuple(e for e in k.edges if len(e) <= 2))


def sub_hypergraph(h: Hypergraph, edges: Sequence[Hyperedge]) -> Hypergraph:
    return Hypergraph.from_edges(edges, h.vertices)

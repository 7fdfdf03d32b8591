"""Maps of hypergraphs and the maps they induce on magnitude chains and homology.

A map sends hyperedges to hyperedges and must preserve inclusions. All
computations here use the hyperedge flavor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import Hypergraph, HypergraphError, disjoint_union, union_relabelling
from .homology import (
    DEFAULT_GENERATOR_CAP,
    GradedComplex,
    HomologyBasis,
    HomologyGroup,
    boundary_matrix,
    homology_basis,
    build_complexes,
    homology_table,
)
from .metric import distance_matrix, format_half
from .smith import Matrix, matmul


class MorphismError(ValueError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class ChainMapError(AssertionError):
    pass


@dataclass(frozen=True)
class HypergraphMorphism:
    source: Hypergraph
    target: Hypergraph
    edge_map: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.edge_map[i]

    def then(self, g: "HypergraphMorphism") -> "HypergraphMorphism":
        """The composite ``g ∘ self``."""
        if g.source != self.target:
            raise MorphismError("morphisms are not composable")
        return HypergraphMorphism(self.source, g.target, tuple(g.edge_map[j] for j in self.edge_map))


def identity_morphism(h: Hypergraph) -> HypergraphMorphism:
    return HypergraphMorphism(h, h, tuple(range(h.n_edges)))


def morphism_from_vertex_map(source: Hypergraph, target: Hypergraph, vmap: Mapping[str, str]) -> HypergraphMorphism:
    """Edge map induced by a vertex map; each image must be a hyperedge of ``target``."""
    images = []
    for e in source.edges:
        img = {vmap[v] for v in e}
        if img not in target:
            raise MorphismError(f"image {sorted(img)} of {list(e)} is not a hyperedge of the target")
        images.append(target.index(img))
    return HypergraphMorphism(source, target, tuple(images))


def morphism_from_json(source: Hypergraph, target: Hypergraph, data) -> HypergraphMorphism:
    """Accept ``{"0": 3, ...}`` or ``[3, ...]`` mapping source edge index to target edge index."""
    if isinstance(data, dict):
        try:
            mapping = {int(k): int(v) for k, v in data.items()}
        except (TypeError, ValueError):
            raise HypergraphError("edge map keys and values must be integers") from None
        if set(mapping) != set(range(source.n_edges)):
            raise MorphismError("edge map is not total on the source hyperedges")
        edge_map = tuple(mapping[i] for i in range(source.n_edges))
    elif isinstance(data, list):
        if len(data) != source.n_edges:
            raise MorphismError("edge map is not total on the source hyperedges")
        edge_map = tuple(int(x) for x in data)
    else:
        raise HypergraphError("edge map must be a JSON object or list")
    if any(not 0 <= j < target.n_edges for j in edge_map):
        raise MorphismError("edge map points outside the target hyperedges")
    return HypergraphMorphism(source, target, edge_map)


def union_inclusions(g: Hypergraph, h: Hypergraph):
    """``G ⊔ H`` together with the two inclusion morphisms."""
    u = disjoint_union(g, h)
    relabel = union_relabelling(g, h)
    i = HypergraphMorphism(g, u, tuple(u.index(e) for e in g.edges))
    j = HypergraphMorphism(h, u, tuple(u.index([relabel[v] for v in e]) for e in h.edges))
    return u, i, j


@dataclass
class MorphismReport:
    total: bool
    inclusion_violations: list[tuple[int, int]]
    distance_violations: list[tuple[int, int]]

    @property
    def valid(self) -> bool:
        return self.total and not self.inclusion_violations

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "total": self.total,
            "inclusion_violations": [list(p) for p in self.inclusion_violations],
            "distance_violations": [list(p) for p in self.distance_violations],
        }


def validate_morphism(f: HypergraphMorphism) -> MorphismReport:
    """Check totality and inclusion preservation; report distance increases as diagnostics.

    A valid map can still increase distances: two overlapping hyperedges may
    be sent to disjoint ones. Such pairs are listed in ``distance_violations``.
    """
    src, tgt = f.source, f.target
    total = len(f.edge_map) == src.n_edges and all(0 <= j < tgt.n_edges for j in f.edge_map)
    if not total:
        return MorphismReport(False, [], [])
    s_sets = [frozenset(e) for e in src.edges]
    t_sets = [frozenset(e) for e in tgt.edges]
    incl = [(i, j) for i in range(src.n_edges) for j in range(src.n_edges)
            if i != j and s_sets[i] <= s_sets[j] and not t_sets[f(i)] <= t_sets[f(j)]]
    ds, dt = distance_matrix(src).d, distance_matrix(tgt).d
    dist = [(i, j) for i in range(src.n_edges) for j in range(i + 1, src.n_edges)
            if dt[f(i)][f(j)] > ds[i][j]]
    return MorphismReport(True, incl, dist)


def check_morphism(f: HypergraphMorphism) -> MorphismReport:
    report = validate_morphism(f)
    if not report.total:
        raise MorphismError("edge map is not a total map into the target hyperedges")
    if report.inclusion_violations:
        pair = report.inclusion_violations[0]
        raise MorphismError(f"inclusion of hyperedges {pair[0]} ⊆ {pair[1]} is not preserved", pair)
    return report


@dataclass
class InducedChainMap:
    """Per grading ``(k, length2)``, the 0/1 matrix from source to target generators."""

    morphism: HypergraphMorphism
    length2_max: int
    source: dict[int, GradedComplex] = field(repr=False)
    target: dict[int, GradedComplex] = field(repr=False)
    matrices: dict[tuple[int, int], Matrix] = field(repr=False)

    def matrix(self, k: int, length2: int) -> Matrix:
        """The matrix in grading ``(k, length2)``; zero-sized above both tops."""
        if (k, length2) in self.matrices:
            return self.matrices[(k, length2)]
        if not 0 <= length2 <= self.length2_max or k < 0:
            raise KeyError((k, length2))
        return [[0] * len(self.source[length2].level(k)) for _ in self.target[length2].level(k)]


def _image(f: HypergraphMorphism, gen, dt, length2: int):
    img = tuple(f.edge_map[x] for x in gen)
    if any(a == b for a, b in zip(img, img[1:])):
        return None
    if sum(dt[a][b] for a, b in zip(img, img[1:])) != length2:
        return None
    return img


def induced_chain_map(f: HypergraphMorphism, length2_max: int, *, cap: int = DEFAULT_GENERATOR_CAP) -> InducedChainMap:
    check_morphism(f)
    src = build_complexes(f.source, "hyperedge", length2_max, cap=cap)
    tgt = build_complexes(f.target, "hyperedge", length2_max, cap=cap)
    dt = tgt[0].dist.d
    mats = {}
    for l2 in range(length2_max + 1):
        top = max(src[l2].top, tgt[l2].top, 0)
        for k in range(top + 1):
            cols = src[l2].level(k)
            rows = tgt[l2].index(k)
            M = [[0] * len(cols) for _ in range(len(rows))]
            for c, gen in enumerate(cols):
                img = _image(f, gen, dt, l2)
                if img is not None:
                    M[rows[img]][c] = 1
            mats[(k, l2)] = M
    return InducedChainMap(f, length2_max, src, tgt, mats)


def _product(A: Matrix, B: Matrix, rows: int, inner: int, cols: int) -> Matrix:
    if not rows or not cols or not inner:
        return [[0] * cols for _ in range(rows)]
    return matmul(A, B, inner=inner)


def verify_chain_map(cm: InducedChainMap) -> None:
    """Raise :class:`ChainMapError` unless ``∂ F_k = F_{k-1} ∂`` in every grading."""
    for (k, l2), F in cm.matrices.items():
        if k == 0:
            continue
        src, tgt = cm.source[l2], cm.target[l2]
        rows = len(tgt.level(k - 1))
        cols = len(src.level(k))
        lhs = _product(boundary_matrix(tgt, k), F, rows, len(tgt.level(k)), cols)
        rhs = _product(cm.matrices[(k - 1, l2)], boundary_matrix(src, k), rows, len(src.level(k - 1)), cols)
        if lhs != rhs:
            raise ChainMapError(f"induced map fails to commute with ∂ at (k={k}, l={format_half(l2)})")


@dataclass
class HomologyMap:
    source: HomologyBasis
    target: HomologyBasis
    matrix: Matrix  # rows: target generators, cols: source generators

    def to_json(self) -> dict:
        return {
            "source": {**self.source.group.to_json(), "orders": self.source.orders},
            "target": {**self.target.group.to_json(), "orders": self.target.orders},
            "matrix": self.matrix,
        }


def _apply(F: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in F]


def induced_homology_map(f: HypergraphMorphism, length2_max: int, *, cap: int = DEFAULT_GENERATOR_CAP) -> dict[tuple[int, int], HomologyMap]:
    cm = induced_chain_map(f, length2_max, cap=cap)
    verify_chain_map(cm)
    out = {}
    for (k, l2), F in sorted(cm.matrices.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        bs = homology_basis(cm.source[l2], k)
        bt = homology_basis(cm.target[l2], k)
        cols = [bt.coordinates(_apply(F, rep)) for rep in bs.representatives]
        matrix = [[col[r] for col in cols] for r in range(len(bt.orders))]
        out[(k, l2)] = HomologyMap(bs, bt, matrix)
    return out


def reduce_mod_orders(matrix: Matrix, orders: Sequence[int]) -> Matrix:
    return [[x % o if o else x for x in row] for row, o in zip(matrix, orders)]


@dataclass
class UnionRow:
    k: int
    length2: int
    left: HomologyGroup
    right: HomologyGroup
    union: HomologyGroup

    @property
    def ok(self) -> bool:
        return self.left.direct_sum(self.right) == self.union


def disjoint_union_check(g: Hypergraph, h: Hypergraph, length2_max: int, *, flavor: str = "hyperedge",
                         cap: int = DEFAULT_GENERATOR_CAP) -> list[UnionRow]:
    """``MH(G) ⊕ MH(H) ≅ MH(G ⊔ H)`` cell by cell."""
    tg = homology_table(g, flavor, length2_max, cap=cap)
    th = homology_table(h, flavor, length2_max, cap=cap)
    tu = homology_table(disjoint_union(g, h), flavor, length2_max, cap=cap)
    cells = set(tg.entries) | set(th.entries) | set(tu.entries)
    return [UnionRow(k, l2, tg.group(k, l2), th.group(k, l2), tu.group(k, l2))
            for (k, l2) in sorted(cells, key=lambda c: (c[1], c[0]))]

"""Cartesian products, the exterior (shuffle) product and the Künneth comparison.

Everything here lives in the simple (vertex) flavor.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Mapping

from .core import Hypergraph, HypergraphError
from .homology import (
    DEFAULT_GENERATOR_CAP,
    Chain,
    HomologyGroup,
    HomologyTable,
    direct_sum,
    homology_table,
    tuple_length2,
)
from .metric import DistanceMatrix, format_half, vertex_distance_matrix


def pair_label(u: str, v: str) -> str:
    return f"({u},{v})"


@dataclass
class ProductHypergraph:
    hypergraph: Hypergraph
    left: Hypergraph
    right: Hypergraph
    pairs: dict[str, tuple[str, str]]
    # (left vertex index, right vertex index) -> product vertex index
    pair_index: dict[tuple[int, int], int] = field(repr=False)

    @cached_property
    def dist(self) -> DistanceMatrix:
        return vertex_distance_matrix(self.hypergraph)


def cartesian_product(g: Hypergraph, h: Hypergraph) -> ProductHypergraph:
    """Vertices ``V1 x V2``; hyperedges ``{x} x tau`` and ``sigma x {y}``."""
    labels = {}
    for u in g.vertices:
        for v in h.vertices:
            lab = pair_label(u, v)
            if lab in labels:
                raise HypergraphError(f"product label {lab!r} is ambiguous")
            labels[lab] = (u, v)
    edges = [[pair_label(x, t) for t in tau] for x in g.vertices for tau in h.edges]
    edges += [[pair_label(s, y) for s in sigma] for y in h.vertices for sigma in g.edges]
    prod = Hypergraph.from_edges(edges, list(labels), allow_duplicates=True)
    pos = {lab: i for i, lab in enumerate(prod.vertices)}
    gi = {v: i for i, v in enumerate(g.vertices)}
    hi = {v: i for i, v in enumerate(h.vertices)}
    pair_index = {(gi[u], hi[v]): pos[lab] for lab, (u, v) in labels.items()}
    return ProductHypergraph(prod, g, h, labels, pair_index)


@dataclass(frozen=True)
class Shuffle:
    mu: tuple[int, ...]
    nu: tuple[int, ...]
    sign: int


def shuffles(p: int, q: int) -> list[Shuffle]:
    """All (p, q)-shuffles as lattice paths, with the Eilenberg-Zilber sign.

    Step ``i`` advances ``mu`` if ``i`` is one of the chosen positions and
    ``nu`` otherwise. The sign is the parity of pairs where a ``nu`` step
    precedes a ``mu`` step, i.e. the sign of the shuffle permutation.
    """
    out = []
    for mu_steps in combinations(range(p + q), p):
        chosen = set(mu_steps)
        mu, nu = [0], [0]
        inversions = 0
        nu_seen = 0
        for i in range(p + q):
            if i in chosen:
                mu.append(mu[-1] + 1)
                nu.append(nu[-1])
                inversions += nu_seen
            else:
                mu.append(mu[-1])
                nu.append(nu[-1] + 1)
                nu_seen += 1
        out.append(Shuffle(tuple(mu), tuple(nu), -1 if inversions % 2 else 1))
    return out


def exterior_product(
    prod: ProductHypergraph,
    a: Mapping[tuple[int, ...], int],
    b: Mapping[tuple[int, ...], int],
    *,
    check: bool = True,
) -> Chain:
    """Bilinear shuffle product of simple chains of the two factors.

    Chains are dicts from vertex-index tuples to integer coefficients; the
    result is indexed by product vertex indices.
    """
    dg = vertex_distance_matrix(prod.left).d if check else None
    dh = vertex_distance_matrix(prod.right).d if check else None
    dp = prod.dist.d if check else None
    out: Chain = defaultdict(int)
    cache: dict[tuple[int, int], list[Shuffle]] = {}
    for ga, ca in a.items():
        for gb, cb in b.items():
            if not ca or not cb:
                continue
            p, q = len(ga) - 1, len(gb) - 1
            if (p, q) not in cache:
                cache[(p, q)] = shuffles(p, q)
            target_len = tuple_length2(dg, ga) + tuple_length2(dh, gb) if check else None
            for sh in cache[(p, q)]:
                gen = tuple(prod.pair_index[(ga[m], gb[n])] for m, n in zip(sh.mu, sh.nu))
                if check:
                    if any(x == y for x, y in zip(gen, gen[1:])):
                        raise AssertionError(f"shuffle produced a repeated entry: {gen}")
                    if tuple_length2(dp, gen) != target_len:
                        raise AssertionError(f"shuffle {gen} changed the total length")
                out[gen] += sh.sign * ca * cb
    return {g: c for g, c in out.items() if c}


def tor(a: HomologyGroup, b: HomologyGroup) -> HomologyGroup:
    """Tor of finitely generated abelian groups: only torsion pairs contribute."""
    return HomologyGroup(0, tuple(gcd(x, y) for x in a.torsion for y in b.torsion))


@dataclass
class KunnethRow:
    n: int
    length2: int
    tensor: HomologyGroup
    tor: HomologyGroup
    product: HomologyGroup

    @property
    def rank_ok(self) -> bool:
        return self.product.rank == self.tensor.rank

    @property
    def torsion_verified(self) -> bool | None:
        """Exact group equality when every Tor term vanishes; ``None`` otherwise."""
        if not self.tor.is_trivial():
            return None
        return self.product == self.tensor

    @property
    def ok(self) -> bool:
        return self.rank_ok and self.torsion_verified is not False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "l": format_half(self.length2),
            "tensor": self.tensor.to_json(),
            "tor": self.tor.to_json(),
            "product": self.product.to_json(),
            "rank_ok": self.rank_ok,
            "torsion_verified": self.torsion_verified,
        }


def kunneth_rows(tg: HomologyTable, th: HomologyTable, tp: HomologyTable, n_max: int, length2_max: int):
    rows = []
    for l2 in range(length2_max + 1):
        for n in range(n_max + 1):
            tens, tors = [], []
            for p in range(n + 1):
                q = n - p
                for l1 in range(l2 + 1):
                    a = tg.group(p, l1)
                    tens.append(a.tensor(th.group(q, l2 - l1)))
                    if q >= 1:
                        tors.append(tor(a, th.group(q - 1, l2 - l1)))
            rows.append(KunnethRow(n, l2, direct_sum(tens), direct_sum(tors), tp.group(n, l2)))
    return rows


def kunneth_check(
    g: Hypergraph,
    h: Hypergraph,
    n_max: int,
    length2_max: int,
    *,
    cap: int = DEFAULT_GENERATOR_CAP,
) -> list[KunnethRow]:
    """Compare ``MH(G □ H)`` with the tensor and Tor terms built from the factors."""
    tg = homology_table(g, "simple", length2_max, k_max=n_max, cap=cap)
    th = homology_table(h, "simple", length2_max, k_max=n_max, cap=cap)
    tp = homology_table(cartesian_product(g, h).hypergraph, "simple", length2_max,
                        k_max=n_max, cap=cap)
    return kunneth_rows(tg, th, tp, n_max, length2_max)

"""Checks and samplers shared by the unit and acceptance tests."""

import random

from maghyper.functor import morphism_from_vertex_map
from maghyper.homology import build_complexes, chain_boundary
from maghyper.metric import vertex_distance_matrix
from maghyper.product import cartesian_product, exterior_product
from maghyper.smith import matmul
from strategies import random_hypergraph, random_vertex_morphism


def mult(A, B, rows, inner, cols):
    """Matrix product that tolerates empty factors."""
    if not rows or not cols or not inner:
        return [[0] * cols for _ in range(rows)]
    return matmul(A, B, inner=inner)


def _combine(*chains):
    out = {}
    for sign, c in chains:
        for g, v in c.items():
            out[g] = out.get(g, 0) + sign * v
    return {g: v for g, v in out.items() if v}


def leibniz_holds(p, a, b, deg_a):
    """``∂(a □ b) == ∂a □ b + (-1)^deg_a a □ ∂b`` in the simple flavor."""
    dg = vertex_distance_matrix(p.left).d
    dh = vertex_distance_matrix(p.right).d
    lhs = chain_boundary(p.dist.d, exterior_product(p, a, b))
    rhs = _combine(
        (1, exterior_product(p, chain_boundary(dg, a), b)),
        ((-1) ** deg_a, exterior_product(p, a, chain_boundary(dh, b))),
    )
    return lhs == rhs


def _by_degree(h):
    out = {}
    for cx in build_complexes(h, "simple", 6).values():
        for k, lv in cx.levels.items():
            out.setdefault(k, []).extend(lv)
    return out


def random_generator_pairs(seed, n_pairs, max_total=4):
    """Generator pairs with degrees drawn uniformly among the feasible ``(p, q)``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n_pairs:
        g = random_hypergraph(rng, max_vertices=3, max_edges=3, min_edges=2, connected=True)
        h = random_hypergraph(rng, max_vertices=3, max_edges=3, min_edges=2, connected=True)
        p = cartesian_product(g, h)
        gg, gh = _by_degree(g), _by_degree(h)
        degrees = [(a, b) for a in gg for b in gh if a + b <= max_total]
        for _ in range(5):
            pk, qk = rng.choice(degrees)
            out.append((p, rng.choice(gg[pk]), pk, rng.choice(gh[qk])))
    return out[:n_pairs]


def random_composable(rng):
    """Morphisms ``f: G -> H`` and ``g: H -> K`` induced by random vertex maps."""
    g = random_hypergraph(rng, max_vertices=4, max_edges=4)
    h, v1 = random_vertex_morphism(rng, g, prefix="h")
    k, v2 = random_vertex_morphism(rng, h, prefix="k")
    return morphism_from_vertex_map(g, h, v1), morphism_from_vertex_map(h, k, v2)

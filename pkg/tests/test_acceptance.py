"""Acceptance suite: one test per criterion, named ``test_cNN_*``.

The terminal summary prints one PASS/FAIL line per criterion. Randomized
criteria use fixed seeds so every run sees the same instances.
"""

import os
import random
import subprocess
import sys
from pathlib import Path

from conftest import BUILT_COMPLEXES
from fixtures import DELTA2, DELTA2_D, K2, NOTCHED, NOTCHED_D, PATH3
from helpers import leibniz_holds, mult, random_composable, random_generator_pairs
from maghyper.core import disjoint_union, simplicial_closure, skeleton_1
from maghyper.functor import (
    disjoint_union_check,
    induced_chain_map,
    induced_homology_map,
    reduce_mod_orders,
    verify_chain_map,
)
from maghyper.homology import (
    HomologyGroup,
    boundary_matrix,
    build_complexes,
    chain_boundary,
    euler_check,
    homology_table,
    structural_checks,
)
from maghyper.magnitude import magnitude_rational, magnitude_series, neumann_magnitude
from maghyper.metric import INF, distance_matrix, format_half, path_length
from maghyper.product import kunneth_check
from oracles import sympy_series, tuple_sum
from strategies import random_graph, random_hypergraph, random_simplicial_complex

DATA = Path(__file__).parent / "data"


def half_table(h):
    return [[format_half(x) for x in row] for row in distance_matrix(h).d]


def pair(h, s, t):
    return h.index(s), h.index(t)


# -- exact reproductions -------------------------------------------------------------


def test_c01_delta2_distances():
    assert half_table(DELTA2) == DELTA2_D


def test_c02_notched_distances():
    assert half_table(NOTCHED) == NOTCHED_D


def test_c03_path_length_and_height():
    g1 = path_length(DELTA2, [DELTA2.index(e) for e in (["0"], ["0", "1"], ["1", "2"], ["2"])])
    g2 = path_length(DELTA2, [DELTA2.index(e) for e in (["0"], ["0", "1"], ["1"], ["1", "2"], ["2"])])
    assert (g1.length2, g1.height) == (4, 3)
    assert (g2.length2, g2.height) == (4, 4)
    dm = distance_matrix(DELTA2)
    i, j = pair(DELTA2, ["0"], ["2"])
    assert (dm.d[i][j], dm.delta[i][j]) == (2, 2)


def test_c04_closure_keeps_distances():
    closure = simplicial_closure(NOTCHED)
    assert closure == DELTA2
    for h in (NOTCHED, closure):
        dm = distance_matrix(h)
        i, j = pair(h, ["0"], ["2"])
        assert (dm.d[i][j], dm.delta[i][j]) == (2, 2)


def test_c05_magnitude_leading_coefficients():
    # cross-method agreement to order 6, plus an independent symbolic inverse
    for h in (DELTA2, NOTCHED):
        ours = magnitude_series(h, 6)
        assert ours == neumann_magnitude(h, 6)
        assert ours.coeffs == sympy_series(list(h.edges), 6)
        assert ours.coeffs[:5] == tuple_sum(list(h.edges), 4)
    got = {"delta2": magnitude_series(DELTA2, 3).coeffs, "notched": magnitude_series(NOTCHED, 3).coeffs}
    want = {"delta2": [7, -24, 72, -270], "notched": [6, -18, 48, -162]}
    assert got == want, (
        f"computed {got}, expected {want}. Three independent methods agree on the computed "
        "values; the x^3 targets are unattainable (see the decisions ledger)."
    )


def test_c06_path3_hyperedge_homology():
    t = homology_table(PATH3, "hyperedge", 4)
    assert t.group(0, 0) == HomologyGroup(4)
    assert all(t.group(k, 0) == HomologyGroup() for k in range(1, 5))
    assert t.group(1, 1) == HomologyGroup(6)
    got = t.group(1, 2)
    assert not got.torsion
    assert got == HomologyGroup(2), (
        f"MH_(1,1) computed as {got}. With d({{0}},{{1,2}}) = 3/2 from the path definition, "
        "degree 1 length 1 has four generators and all are boundaries; the target Z^2 needs "
        "d({0},{1,2}) = 1 (see the decisions ledger)."
    )


def test_c07_path3_simple_homology():
    # simple lengths are vertex distances: graph distance l sits at length2 = 2l
    t = homology_table(PATH3, "simple", 4)
    assert t.group(0, 0) == HomologyGroup(3)
    assert all(t.group(k, 0) == HomologyGroup() for k in range(1, 3))
    assert t.group(1, 2) == HomologyGroup(4)
    assert t.group(1, 4) == HomologyGroup()


# -- randomized identities --------------------------------------------------------


def test_c08_structural_check_on_random_hypergraphs():
    rng = random.Random(8)
    for _ in range(50):
        h = random_hypergraph(rng, max_vertices=5, max_edges=6)
        v = structural_checks(h)
        assert v.ok, (h, v)


def test_c09_euler_identity():
    rng = random.Random(9)
    for _ in range(25):
        h = random_hypergraph(rng, max_vertices=5, max_edges=5)
        direct = tuple_sum(list(h.edges), 3)
        for v in euler_check(h, 3):
            assert v.ok, (h, v)
            assert v.homology_euler == direct[v.length2]


def test_c11_metric_properties():
    rng = random.Random(11)
    for _ in range(25):
        h = random_hypergraph(rng, max_vertices=5, max_edges=6)
        closure = simplicial_closure(h, cap=512)
        dm, dc = distance_matrix(h), distance_matrix(closure)
        n = h.n_edges
        for i in range(n):
            for j in range(n):
                d, delta = dm.d[i][j], dm.delta[i][j]
                assert d == dm.d[j][i] and delta == dm.delta[j][i]
                for k in range(n):
                    assert dm.d[i][k] <= d + dm.d[j][k]
                    assert dm.delta[i][k] <= delta + dm.delta[j][k]
                if d != INF:
                    assert d <= 2 * delta <= d + 2
                a, b = closure.index(h.edges[i]), closure.index(h.edges[j])
                assert (d, delta) == (dc.d[a][b], dc.delta[a][b])
    for _ in range(10):
        k = random_simplicial_complex(rng, max_vertices=4, max_facets=3)
        s = skeleton_1(k)
        dk, ds = distance_matrix(k), distance_matrix(s)
        for x in k.vertices:
            for y in k.vertices:
                assert dk.d[k.index([x])][k.index([y])] == ds.d[s.index([x])][s.index([y])]


def test_c12_exterior_product_is_a_chain_map():
    pairs = random_generator_pairs(12, 100, max_total=4)
    assert len(pairs) == 100
    for p, a, deg, b in pairs:
        assert deg + len(b) - 1 <= 4
        assert leibniz_holds(p, {a: 1}, {b: 1}, deg)


def test_c13_kunneth():
    rows = kunneth_check(K2, K2, 2, 4)
    assert all(r.ok for r in rows)
    assert {r.n: r.product.rank for r in rows if r.length2 == 2 * r.n} == {0: 4, 1: 8, 2: 12}
    rng = random.Random(13)
    for _ in range(10):
        g = random_graph(rng, max_vertices=3, max_edges=3, min_edges=1, prefix="g")
        h = random_hypergraph(rng, max_vertices=3, max_edges=3, min_edges=2, connected=True)
        # simple-flavor degree is at most length2 / 2, so n <= 2 covers every cell up to l = 2
        for r in kunneth_check(g, h, 2, 4):
            assert r.rank_ok, (g, h, r)
            if r.tor.is_trivial():
                assert r.product == r.tensor, (g, h, r)


def test_c14_disjoint_union():
    rng = random.Random(14)
    for _ in range(10):
        g = random_hypergraph(rng, max_vertices=4, max_edges=4)
        h = random_hypergraph(rng, max_vertices=4, max_edges=4)
        for flavor in ("hyperedge", "simple"):
            assert all(r.ok for r in disjoint_union_check(g, h, 3, flavor=flavor))
        assert magnitude_rational(disjoint_union(g, h)) == magnitude_rational(g) + magnitude_rational(h)


def test_c15_functoriality():
    rng = random.Random(15)
    for _ in range(10):
        f, g = random_composable(rng)
        gf = f.then(g)
        cf, cg, cgf = (induced_chain_map(m, 3) for m in (f, g, gf))
        for cm in (cf, cg, cgf):
            verify_chain_map(cm)
        for (k, l2), M in cgf.matrices.items():
            dims = (len(cg.target[l2].level(k)), len(cg.source[l2].level(k)), len(cf.source[l2].level(k)))
            assert M == mult(cg.matrix(k, l2), cf.matrix(k, l2), *dims)
        hf, hg, hgf = (induced_homology_map(m, 3) for m in (f, g, gf))
        for cell, m in hgf.items():
            if cell not in hf or cell not in hg:
                assert not any(map(any, m.matrix))
                continue
            dims = (len(m.target.orders), len(hf[cell].target.orders), len(m.source.orders))
            prod = mult(hg[cell].matrix, hf[cell].matrix, *dims)
            assert reduce_mod_orders(m.matrix, m.target.orders) == reduce_mod_orders(prod, m.target.orders)


CLI_SUITE = [
    ["distance", "delta2.json"],
    ["distance", "notched.json"],
    ["magnitude", "delta2.json", "--order", "6", "--method", "both"],
    ["magnitude", "notched.json", "--order", "6", "--method", "both"],
    ["homology", "path3.json", "--flavor", "hyperedge", "--lmax", "4"],
    ["homology", "path3.json", "--flavor", "simple", "--lmax", "4"],
    ["homology", "delta2.json", "--lmax", "6", "--generator-cap", "300"],
    ["product", "k2.json", "segment.json"],
    ["kunneth", "k2.json", "k2.json", "--nmax", "2", "--lmax", "4"],
    ["induced", "path3.json", "segment.json", "--map", "collapse_map.json", "--lmax", "2"],
    ["euler-check", "delta2.json", "--lmax", "3"],
    ["closure", "notched.json"],
]


def _cli_suite(hash_seed):
    env = {**os.environ, "PYTHONHASHSEED": str(hash_seed)}
    out = []
    for argv in CLI_SUITE:
        args = [str(DATA / a) if a.endswith(".json") else a for a in argv]
        proc = subprocess.run([sys.executable, "-m", "maghyper.cli", *args],
                              capture_output=True, env=env, check=False)
        out.append((proc.returncode, proc.stdout))
    return out


def test_c16_cli_determinism():
    first, second = _cli_suite(1), _cli_suite(2)
    assert [code for code, _ in first] == [0] * 6 + [3] + [0] * 5
    assert first == second


# -- runs last: every complex built in this session --------------------------------


def _matrix_batch():
    rng = random.Random(10)
    for _ in range(20):
        h = random_hypergraph(rng, max_vertices=4, max_edges=5)
        for flavor in ("hyperedge", "simple"):
            for cx in build_complexes(h, flavor, 4).values():
                for k in range(2, cx.top + 1):
                    rows, inner, cols = (len(cx.level(k - 2)), len(cx.level(k - 1)), len(cx.level(k)))
                    prod = mult(boundary_matrix(cx, k - 1), boundary_matrix(cx, k), rows, inner, cols)
                    assert not any(map(any, prod)), (h, flavor, cx.length2, k)


def test_c10_boundary_squares_to_zero():
    _matrix_batch()
    seen, flavors = set(), set()
    for cx in BUILT_COMPLEXES:
        key = (cx.flavor, cx.length2, cx.dist.d)
        if key in seen:
            continue
        seen.add(key)
        flavors.add(cx.flavor)
        d = cx.dist.d
        for k in range(2, cx.top + 1):
            for gen in cx.level(k):
                assert chain_boundary(d, chain_boundary(d, {gen: 1})) == {}, (cx.flavor, gen)
    assert flavors == {"hyperedge", "simple"}

import json
import random

import pytest

from fixtures import DELTA2, PATH3
from helpers import mult, random_composable
from maghyper.core import Hypergraph, HypergraphError
from maghyper.functor import (
    ChainMapError,
    MorphismError,
    HypergraphMorphism,
    check_morphism,
    disjoint_union_check,
    identity_morphism,
    induced_chain_map,
    induced_homology_map,
    morphism_from_json,
    morphism_from_vertex_map,
    reduce_mod_orders,
    union_inclusions,
    validate_morphism,
    verify_chain_map,
)
from maghyper.homology import HomologyGroup
from strategies import random_hypergraph

SEGMENT = Hypergraph.from_edges([["a"], ["b"], ["a", "b"]])


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


# -- validation -----------------------------------------------------------------


def test_identity_is_valid():
    r = validate_morphism(identity_morphism(PATH3))
    assert r.valid and not r.distance_violations


def test_union_inclusions_are_valid():
    u, i, j = union_inclusions(PATH3, DELTA2)
    assert u.n_edges == 11
    assert validate_morphism(i).valid and validate_morphism(j).valid


def test_collapse_violating_inclusion_reports_pair():
    # {0} goes to {0,1,2} while {0,1} ⊇ {0} goes to {0}
    src = [PATH3.index(e) for e in (["0"], ["1"], ["0", "1"], ["1", "2"])]
    tgt = [DELTA2.index(e) for e in (["0", "1", "2"], ["1"], ["0"], ["1", "2"])]
    edge_map = [0] * PATH3.n_edges
    for s, t in zip(src, tgt):
        edge_map[s] = t
    f = HypergraphMorphism(PATH3, DELTA2, tuple(edge_map))
    report = validate_morphism(f)
    assert not report.valid
    assert (PATH3.index(["0"]), PATH3.index(["0", "1"])) in report.inclusion_violations
    with pytest.raises(MorphismError) as info:
        check_morphism(f)
    assert info.value.pair in report.inclusion_violations


def test_distance_increase_is_reported_not_rejected():
    g = Hypergraph.from_edges([["0", "1"], ["1", "2"]])
    h = Hypergraph.from_edges([["a"], ["b"]])
    report = check_morphism(HypergraphMorphism(g, h, (0, 1)))
    assert report.valid and report.distance_violations == [(0, 1)]


def test_vertex_map_must_land_on_hyperedges():
    with pytest.raises(MorphismError):
        morphism_from_vertex_map(PATH3, SEGMENT, {"0": "a", "1": "b", "2": "c"})


def test_json_edge_maps():
    f = morphism_from_json(PATH3, SEGMENT, {"0": 0, "1": 1, "2": 2, "3": 2})
    assert f.edge_map == (0, 1, 2, 2)
    assert morphism_from_json(PATH3, SEGMENT, [0, 1, 2, 2]) == f
    with pytest.raises(MorphismError):
        morphism_from_json(PATH3, SEGMENT, {"0": 0})
    with pytest.raises(MorphismError):
        morphism_from_json(PATH3, SEGMENT, [0, 1, 2, 9])
    with pytest.raises(HypergraphError):
        morphism_from_json(PATH3, SEGMENT, {"x": 0, "1": 1, "2": 2, "3": 2})
    with pytest.raises(HypergraphError):
        morphism_from_json(PATH3, SEGMENT, "nope")


def test_composition_of_edge_maps():
    f, g = random_composable(random.Random(1))
    assert f.then(g).edge_map == tuple(g(f(i)) for i in range(f.source.n_edges))
    with pytest.raises(MorphismError):
        g.then(g) if g.source != g.target else f.then(f)


# -- chain maps ---------------------------------------------------------------------


def test_identity_gives_identity_matrices():
    cm = induced_chain_map(identity_morphism(PATH3), 3)
    for (k, l2), M in cm.matrices.items():
        assert M == identity(len(cm.source[l2].level(k)))


def test_inclusion_is_an_injection_onto_summand_generators():
    u, i, _ = union_inclusions(PATH3, DELTA2)
    cm = induced_chain_map(i, 3)
    for M in cm.matrices.values():
        assert all(sum(row[c] for row in M) == 1 for c in range(len(M[0]) if M else 0))
        assert all(sum(row) <= 1 for row in M)


def test_degenerate_image_gives_zero_column():
    f = morphism_from_json(PATH3, SEGMENT, [0, 1, 2, 2])
    cm = induced_chain_map(f, 2)
    gens = cm.source[2].level(1)
    col = gens.index((PATH3.index(["0", "1"]), PATH3.index(["1", "2"])))
    assert all(row[col] == 0 for row in cm.matrix(1, 2))


def test_induced_maps_are_chain_maps_on_random_morphisms():
    rng = random.Random(21)
    for _ in range(15):
        f, g = random_composable(rng)
        verify_chain_map(induced_chain_map(f, 3))
        verify_chain_map(induced_chain_map(g, 3))


def test_distance_increasing_map_can_break_chain_property():
    # inclusions are preserved, but {0,2} and {1,2} move from distance 1 to 3/2
    g = Hypergraph.from_edges([["1"], ["0", "2"], ["1", "2"]])
    h = Hypergraph.from_edges([["2"], ["0", "1"], ["1", "2"]])
    f = HypergraphMorphism(g, h, (0, 1, 0))
    assert check_morphism(f).distance_violations == [(1, 2)]
    with pytest.raises(ChainMapError):
        verify_chain_map(induced_chain_map(f, 3))


def test_chain_functoriality():
    rng = random.Random(8)
    for _ in range(10):
        f, g = random_composable(rng)
        cf, cg, cgf = (induced_chain_map(m, 3) for m in (f, g, f.then(g)))
        for (k, l2), M in cgf.matrices.items():
            rows = len(cg.target[l2].level(k))
            inner = len(cg.source[l2].level(k))
            cols = len(cf.source[l2].level(k))
            assert M == mult(cg.matrix(k, l2), cf.matrix(k, l2), rows, inner, cols)


# -- homology maps ------------------------------------------------------------------


def test_degree_zero_sends_edge_to_image():
    f = morphism_from_json(PATH3, SEGMENT, [0, 1, 2, 2])
    m = induced_homology_map(f, 0)[(0, 0)]
    assert m.source.group == HomologyGroup(4) and m.target.group == HomologyGroup(3)
    # the canonical chain basis is already a homology basis in degree zero
    for s in range(4):
        col = [row[s] for row in m.matrix]
        assert col == [int(t == f(s)) for t in range(3)]


def test_half_length_inclusions():
    f = morphism_from_json(PATH3, SEGMENT, [0, 1, 2, 2])
    m = induced_homology_map(f, 1)[(1, 1)]
    src, tgt = m.source.generators, m.target.generators
    for c, rep in enumerate(m.source.representatives):
        (gen,) = [src[i] for i, v in enumerate(rep) if v]
        image = (f(gen[0]), f(gen[1]))
        col = [row[c] for row in m.matrix]
        if image[0] == image[1]:
            assert not any(col)
        else:
            want = [0] * len(tgt)
            want[tgt.index(image)] = 1
            assert m.target.coordinates(want) == col


def test_identity_on_homology():
    for (k, l2), m in induced_homology_map(identity_morphism(DELTA2), 2).items():
        assert m.matrix == identity(len(m.source.orders))


def test_homology_functoriality():
    rng = random.Random(13)
    for _ in range(10):
        f, g = random_composable(rng)
        mf, mg, mgf = (induced_homology_map(m, 3) for m in (f, g, f.then(g)))
        for cell, m in mgf.items():
            if cell not in mf or cell not in mg:
                # the middle complex is empty here, so the composite must vanish
                assert not any(map(any, m.matrix))
                continue
            rows = len(m.target.orders)
            prod = mult(mg[cell].matrix, mf[cell].matrix, rows, len(mf[cell].target.orders),
                        len(m.source.orders))
            assert reduce_mod_orders(m.matrix, m.target.orders) == reduce_mod_orders(prod, m.target.orders)


def test_homology_map_json_roundtrips():
    doc = induced_homology_map(identity_morphism(PATH3), 1)[(1, 1)].to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["source"]["rank"] == 6


# -- disjoint unions -------------------------------------------------------------


def test_union_with_itself_doubles():
    rows = disjoint_union_check(PATH3, PATH3, 3)
    assert all(r.ok for r in rows)
    assert all(r.union.rank == 2 * r.left.rank for r in rows)


def test_union_example_with_delta2():
    rows = {(r.k, r.length2): r for r in disjoint_union_check(PATH3, DELTA2, 2)}
    assert rows[(0, 0)].union == HomologyGroup(11)
    assert all(r.ok for r in rows.values())


def test_union_with_empty():
    empty = Hypergraph.from_edges([])
    for r in disjoint_union_check(DELTA2, empty, 2):
        assert r.ok and r.union == r.left


def test_union_random_pairs():
    rng = random.Random(4)
    for _ in range(10):
        g = random_hypergraph(rng, max_vertices=4, max_edges=4)
        h = random_hypergraph(rng, max_vertices=4, max_edges=4)
        assert all(r.ok for r in disjoint_union_check(g, h, 3))

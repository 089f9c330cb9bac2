from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hypergraphs, random_graph
from hyperlag.errors import RankMismatch, RankTooSmall
from hyperlag.freeness import contains, contains_through, extension, first_contained, free_of_family
from hyperlag.hypergraph import Hypergraph, complete_graph, construct, covers_pairs, disjoint_union, s2n

P_FAMILY = [construct(p) for p in ("p1", "p2", "p3", "p4")]


def brute_contains(G, F):
    """All injections V(F) -> V(G); exponential, fine for tiny inputs."""
    if F.vertex_count > G.vertex_count:
        return False
    for img in permutations(G.vertices, F.vertex_count):
        if all(tuple(sorted(img[v - 1] for v in f)) in G.edge_set for f in F.edges):
            return True
    return False


def embedding_ok(G, F, emb):
    assert sorted(emb) == list(F.vertices)
    assert len(set(emb.values())) == len(emb)
    return all(tuple(sorted(emb[v] for v in f)) in G.edge_set for f in F.edges)


@given(hypergraphs(max_n=8), hypergraphs(min_n=3, max_n=5))
def test_contains_matches_brute_force(G, F):
    w = contains(G, F)
    assert (not w.free) == brute_contains(G, F)
    if not w.free:
        assert embedding_ok(G, F, w.embedding)


@given(hypergraphs(rank=2, max_n=8), hypergraphs(rank=2, min_n=2, max_n=5))
def test_contains_rank2_brute_force(G, F):
    assert (not contains(G, F).free) == brute_contains(G, F)


def test_examples():
    K4 = complete_graph(4)
    Km = construct("complete-minus-edge", r=3, t=4)
    w = contains(K4, Km)
    assert not w.free and embedding_ok(K4, Km, w.embedding)
    assert contains(Km, K4).free
    assert free_of_family(s2n(9), P_FAMILY)
    assert not free_of_family(complete_graph(8), [P_FAMILY[0]])
    assert free_of_family(K4, [])
    assert first_contained(complete_graph(8), P_FAMILY)[0] in range(4)
    assert first_contained(s2n(9), P_FAMILY) is None


def test_isolated_pattern_vertices_need_room():
    F = Hypergraph(3, 5, ((1, 2, 3),))
    assert contains(complete_graph(4), F).free
    assert not contains(complete_graph(5), F).free


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        contains(complete_graph(4), complete_graph(3, 2))


@given(hypergraphs(max_n=6), hypergraphs(max_n=4), hypergraphs(min_n=3, max_n=4))
def test_monotone_under_union(G, H, F):
    if not contains(G, F).free:
        assert not contains(disjoint_union(G, H), F).free


@given(hypergraphs(max_n=6), st.lists(hypergraphs(min_n=3, max_n=4), max_size=3), hypergraphs(min_n=3, max_n=4))
def test_family_antitone(G, family, extra):
    if not free_of_family(G, family):
        assert not free_of_family(G, family + [extra])


def test_contains_through_detects_new_copies():
    rng = np.random.default_rng(3)
    F = construct("f5")
    for _ in range(40):
        G = random_graph(rng, 3, 7, 0.25)
        if not contains(G, F).free:
            continue
        missing = [e for e in complete_graph(7).edges if e not in G.edge_set]
        e = missing[rng.integers(len(missing))]
        H = G.add_edge(e)
        assert contains_through(H, F, e).free == contains(H, F).free


def test_extension_matching():
    M = construct("matching", r=3, size=2)
    E = extension(M)
    assert (E.vertex_count, len(E)) == (15, 11)
    assert M.edge_set <= E.edge_set
    assert (1, 4, 7) in E.edge_set and (3, 6, 15) in E.edge_set
    assert covers_pairs(E, among=M.vertices)


def test_extension_fixed_points():
    for F in (complete_graph(4), construct("single-edge", r=3), complete_graph(5, 4)):
        assert extension(F) == F
    with pytest.raises(RankTooSmall):
        extension(complete_graph(3, 2))


@given(hypergraphs(rank=[3, 4], max_n=6))
def test_extension_covers_original_pairs(F):
    E = extension(F)
    assert covers_pairs(E, among=F.vertices)
    assert F.edge_set <= E.edge_set
    fresh = E.vertex_count - F.vertex_count
    assert fresh == (len(E) - len(F)) * (F.rank - 2)
    if covers_pairs(F):
        assert E == F

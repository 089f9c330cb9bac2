from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hypergraphs
from hyperlag.errors import (
    InvalidParameter,
    RankMismatch,
    SizeLimitExceeded,
    TargetNotFound,
    VertexOutOfRange,
)
from hyperlag.hypergraph import (
    FamilySpec,
    Hypergraph,
    canonical_form,
    complete_graph,
    construct,
    covers_pairs,
    delete,
    disjoint_union,
    link_graph,
    relabel,
    s2n,
    star,
)


def test_edges_are_canonicalized():
    G = Hypergraph.from_edges(3, [(3, 2, 1), (4, 1, 2)])
    assert G.edges == ((1, 2, 3), (1, 2, 4))
    assert G.vertex_count == 4


@pytest.mark.parametrize(
    "edges, exc",
    [([(1, 2)], ValueError), ([(1, 1, 2)], ValueError), ([(1, 2, 9)], VertexOutOfRange)],
)
def test_invalid_edges_rejected(edges, exc):
    with pytest.raises(exc):
        Hypergraph(3, 5, tuple(edges))


def test_duplicate_edge_rejected():
    with pytest.raises(ValueError):
        Hypergraph(3, 4, ((1, 2, 3), (1, 2, 3)))


def test_complete_k4():
    assert construct("complete", r=3, t=4).edges == ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


def test_s2n_edge_count_and_layout():
    G = s2n(9)
    assert len(G) == 7 + 2 * comb(7, 2) == 49
    for e in G.edges:
        assert 1 in e or 2 in e
    assert all((1, 2, k) in G.edge_set for k in range(3, 10))
    assert (1, 2, 3) in G and (3, 4, 5) not in G


def test_f5_and_p_family_literal():
    assert construct("f5").edges == ((1, 2, 3), (1, 2, 4), (3, 4, 5))
    P2 = construct("p2")
    assert P2.vertex_count == 8 and len(P2) == 7
    assert set(P2.edges) == {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 5, 6), (2, 5, 6), (3, 7, 8)}
    assert construct("p1").edges[-1] == (5, 6, 7)


@pytest.mark.parametrize("t, r", [(2, 3), (0, 3), (1, 2)])
def test_complete_invalid(t, r):
    with pytest.raises(InvalidParameter):
        construct(FamilySpec("complete", {"r": r, "t": t}))


def test_unknown_family():
    with pytest.raises(InvalidParameter):
        FamilySpec("petersen", {})


@given(st.integers(3, 9), st.integers(2, 4))
def test_edge_count_formulas(t, r):
    if t >= r:
        assert len(complete_graph(t, r)) == comb(t, r)
    assert len(star(t)) == t


def test_linear_path_and_matching_labels():
    assert construct("linear-path", r=3, length=2).edges == ((1, 2, 3), (3, 4, 5))
    assert construct("matching", r=3, size=2).edges == ((1, 2, 3), (4, 5, 6))


def test_link_graph_examples():
    assert link_graph(complete_graph(4), 1).pairs == ((2, 3), (2, 4), (3, 4))
    assert link_graph(construct("f5"), 5).pairs == ((3, 4),)
    single = Hypergraph(3, 4, ((1, 2, 3),))
    assert link_graph(single, 4).pairs == ()
    with pytest.raises(VertexOutOfRange):
        link_graph(single, 5)


@given(hypergraphs(rank=[2, 3, 4]))
def test_link_sizes_sum(G):
    assert sum(len(link_graph(G, v).pairs) for v in G.vertices) == G.rank * len(G)
    for v in G.vertices:
        for p in link_graph(G, v).pairs:
            assert v not in p and tuple(sorted(p + (v,))) in G.edge_set


def test_disjoint_union_examples():
    e = construct("single-edge", r=3)
    assert disjoint_union(e, e).edges == ((1, 2, 3), (4, 5, 6))
    U = disjoint_union(construct("f5"), e)
    assert (U.vertex_count, len(U)) == (8, 4)
    assert disjoint_union(U, Hypergraph(3, 0)) == U
    with pytest.raises(RankMismatch):
        disjoint_union(e, complete_graph(3, 2))


@given(hypergraphs(max_n=4), hypergraphs(max_n=4), hypergraphs(max_n=4))
def test_disjoint_union_assoc_comm(A, B, C):
    left = disjoint_union(disjoint_union(A, B), C)
    right = disjoint_union(A, disjoint_union(B, C))
    assert left == right
    assert canonical_form(disjoint_union(A, B)) == canonical_form(disjoint_union(B, A))


def test_delete_examples():
    K4 = complete_graph(4)
    assert delete(K4, vertices=[4]).edges == ((1, 2, 3),)
    Km = delete(K4, edges=[(2, 3, 4)])
    assert Km == construct("complete-minus-edge", r=3, t=4)
    assert Km.vertex_count == 4
    assert delete(K4) == K4
    with pytest.raises(TargetNotFound):
        delete(K4, vertices=[7])
    with pytest.raises(TargetNotFound):
        delete(Km, edges=[(2, 3, 4)])


def test_delete_relabels_in_order():
    G = Hypergraph(3, 5, ((1, 2, 5), (2, 3, 4)))
    assert delete(G, vertices=[1]) == Hypergraph(3, 4, ((1, 2, 3),))


def fano():
    return Hypergraph(3, 7, ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)))


def test_covers_pairs_examples():
    assert covers_pairs(complete_graph(4))
    assert not covers_pairs(construct("f5"))
    assert covers_pairs(fano())
    assert covers_pairs(construct("f5"), among=[1, 2, 3, 4])


def test_canonical_form_examples():
    a = Hypergraph(3, 5, ((1, 2, 3),))
    b = Hypergraph(3, 5, ((2, 4, 5),))
    assert canonical_form(a, drop_isolated=True) == canonical_form(b, drop_isolated=True)
    K4 = complete_graph(4)
    for perm in permutations(range(1, 5)):
        assert canonical_form(relabel(K4, perm)) == canonical_form(K4)
    km_iso = Hypergraph(3, 5, construct("complete-minus-edge", r=3, t=4).edges)
    assert canonical_form(construct("f5")) != canonical_form(km_iso)


def test_canonical_size_limit():
    with pytest.raises(SizeLimitExceeded):
        canonical_form(complete_graph(13))


@given(hypergraphs(rank=[2, 3], max_n=10), st.randoms(use_true_random=False))
def test_canonical_form_invariant_and_idempotent(G, rnd):
    perm = list(range(1, G.vertex_count + 1))
    rnd.shuffle(perm)
    H = relabel(G, perm)
    C = canonical_form(G)
    assert canonical_form(H) == C
    assert canonical_form(C) == C
    assert sorted(C.degrees[1:]) == sorted(G.degrees[1:])


def _iso_brute(G, H):
    if (G.rank, G.vertex_count, len(G)) != (H.rank, H.vertex_count, len(H)):
        return False
    return any(relabel(G, p).edge_set == H.edge_set for p in permutations(range(1, G.vertex_count + 1)))


@given(hypergraphs(max_n=6), hypergraphs(max_n=6))
def test_canonical_form_decides_isomorphism(G, H):
    assert (canonical_form(G) == canonical_form(H)) == _iso_brute(G, H)


@given(hypergraphs(rank=[2, 3, 4]))
def test_dict_round_trip(G):
    assert Hypergraph.from_dict(G.to_dict()) == G

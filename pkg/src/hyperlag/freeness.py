"""Non-induced subhypergraph containment, F-freeness, and the pair-covering extension."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import RankMismatch, RankTooSmall
from .hypergraph import Edge, Hypergraph, uncovered_pairs


@dataclass(frozen=True)
class FreenessWitness:
    outcome: str  # "free" or "contains"
    embedding: dict[int, int] | None = None

    @property
    def free(self) -> bool:
        return self.outcome == "free"

    def to_dict(self) -> dict:
        emb = None if self.embedding is None else {str(k): v for k, v in sorted(self.embedding.items())}
        return {"outcome": self.outcome, "embedding": emb}


FREE = FreenessWitness("free")


def _check_rank(G: Hypergraph, F: Hypergraph):
    if G.rank != F.rank:
        raise RankMismatch(f"ranks differ: host {G.rank}, pattern {F.rank}")


def _pattern_order(F: Hypergraph, fixed: Sequence[int] = ()) -> list[int]:
    """Order pattern vertices so that each one closes as many edges as possible early."""
    order = list(fixed)
    placed = set(order)
    remaining = [v for v in F.vertices if v not in placed]
    while remaining:
        def key(v):
            links = sum(1 for e in F.incidence[v] if any(u in placed for u in e if u != v))
            return (-links, -F.degrees[v], v)

        v = min(remaining, key=key)
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


def _search(G: Hypergraph, F: Hypergraph, seed: dict[int, int]) -> dict[int, int] | None:
    order = _pattern_order(F, fixed=list(seed))
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[Edge]] = [[] for _ in order]
    for f in F.edges:
        closing[max(pos[v] for v in f)].append(f)
    g_edges = G.edge_set
    candidates = sorted(G.vertices, key=lambda v: (-G.degrees[v], v))
    mapping = dict(seed)
    used = set(seed.values())

    # seeded prefix must itself be consistent
    for i in range(len(seed)):
        for f in closing[i]:
            if tuple(sorted(mapping[u] for u in f)) not in g_edges:
                return None

    def extend(i):
        if i == len(order):
            return True
        fv = order[i]
        need = F.degrees[fv]
        for gv in candidates:
            if G.degrees[gv] < need:
                break  # candidates are sorted by descending degree
            if gv in used:
                continue
            mapping[fv] = gv
            if all(tuple(sorted(mapping[u] for u in f)) in g_edges for f in closing[i]):
                used.add(gv)
                if extend(i + 1):
                    return True
                used.discard(gv)
            del mapping[fv]
        return False

    return dict(mapping) if extend(len(seed)) else None


def _trivially_free(G: Hypergraph, F: Hypergraph) -> bool:
    return F.vertex_count > G.vertex_count or len(F) > len(G)


def contains(G: Hypergraph, F: Hypergraph) -> FreenessWitness:
    """Look for a copy of F in G (not necessarily induced).

    The returned embedding maps every vertex of F, isolated ones included,
    injectively into G. The first witness under the fixed backtracking order
    is returned, so results are deterministic.
    """
    _check_rank(G, F)
    if _trivially_free(G, F):
        return FREE
    emb = _search(G, F, {})
    return FREE if emb is None else FreenessWitness("contains", emb)


def contains_through(G: Hypergraph, F: Hypergraph, edge: Iterable[int]) -> FreenessWitness:
    """Copies of F in G that use ``edge``; any new copy after adding ``edge`` must."""
    _check_rank(G, F)
    edge = tuple(sorted(edge))
    if _trivially_free(G, F) or edge not in G.edge_set:
        return FREE
    for f in F.edges:
        for img in permutations(edge):
            emb = _search(G, F, dict(zip(f, img)))
            if emb is not None:
                return FreenessWitness("contains", emb)
    return FREE


def _family_order(family: Sequence[Hypergraph]) -> list[Hypergraph]:
    return sorted(family, key=lambda F: (len(F), F.vertex_count))


def free_of_family(G: Hypergraph, family: Sequence[Hypergraph]) -> bool:
    for F in family:
        _check_rank(G, F)
    return all(contains(G, F).free for F in _family_order(family))


def first_contained(G: Hypergraph, family: Sequence[Hypergraph]) -> tuple[int, FreenessWitness] | None:
    """Index into ``family`` and witness of the first member found in G, or None if G is free."""
    indexed = sorted(range(len(family)), key=lambda i: (len(family[i]), family[i].vertex_count))
    for i in indexed:
        w = contains(G, family[i])
        if not w.free:
            return i, w
    return None


def extension(F: Hypergraph) -> Hypergraph:
    """Cover every uncovered pair of F by a fresh edge.

    Each uncovered pair {i, j}, in lexicographic order, gets r - 2 new vertices
    B_ij appended after the existing labels and the edge {i, j} | B_ij.
    """
    if F.rank < 3:
        raise RankTooSmall("extension is defined for rank >= 3")
    n = F.vertex_count
    edges = list(F.edges)
    for i, j in uncovered_pairs(F):
        fresh = tuple(range(n + 1, n + F.rank - 1))
        n += F.rank - 2
        edges.append((i, j) + fresh)
    return Hypergraph(F.rank, n, tuple(edges))

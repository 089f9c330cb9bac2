"""
r-uniform hypergraphs on dense 1-based vertex labels, the named families used
throughout the package, and structural primitives (links, unions, deletions,
canonical forms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import (
    InvalidParameter,
    RankMismatch,
    SizeLimitExceeded,
    TargetNotFound,
    VertexOutOfRange,
)

Edge = tuple[int, ...]

CANONICAL_SIZE_LIMIT = 12


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices ``1..vertex_count``.

    Edges are stored sorted ascending and the edge tuple is sorted
    lexicographically, so equal edge sets compare and hash equal.
    Isolated vertices are kept.
    """

    rank: int
    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidParameter(f"rank must be positive, got {self.rank}")
        if self.vertex_count < 0:
            raise InvalidParameter("vertex_count must be non-negative")
        canon = set()
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.rank or len(set(e)) != self.rank:
                raise InvalidParameter(f"edge {e} does not have {self.rank} distinct vertices")
            if e[0] < 1 or e[-1] > self.vertex_count:
                raise VertexOutOfRange(f"edge {e} outside 1..{self.vertex_count}")
            canon.add(e)
        if len(canon) != len(self.edges):
            raise InvalidParameter("duplicate edges")
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, rank: int, edges: Iterable[Iterable[int]], vertex_count: int | None = None):
        """Build from an edge iterable, deduplicating; ``vertex_count`` defaults to the max label."""
        edge_set = {tuple(sorted(e)) for e in edges}
        if vertex_count is None:
            vertex_count = max((e[-1] for e in edge_set), default=0)
        return cls(rank, vertex_count, tuple(edge_set))

    def __len__(self):
        return len(self.edges)

    def __contains__(self, edge):
        return tuple(sorted(edge)) in self.edge_set

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Degrees indexed by vertex label; index 0 is unused and holds 0."""
        deg = [0] * (self.vertex_count + 1)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple[tuple[Edge, ...], ...]:
        inc = [[] for _ in range(self.vertex_count + 1)]
        for e in self.edges:
            for v in e:
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def isolated_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.degrees[v] == 0]

    def codegree(self, u: int, v: int) -> int:
        return sum(1 for e in self.incidence[u] if v in e)

    def add_edge(self, edge: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.rank, self.vertex_count, self.edges + (tuple(sorted(edge)),))

    def remove_edge(self, edge: Iterable[int]) -> Hypergraph:
        return delete(self, edges=[edge])

    def is_complete(self) -> bool:
        """True if the edges are all r-subsets of the non-isolated vertices."""
        support = self.vertex_count - len(self.isolated_vertices())
        return len(self.edges) == comb(support, self.rank) and len(self.edges) > 0

    def to_dict(self) -> dict:
        return {"rank": self.rank, "vertex_count": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> Hypergraph:
        return cls(int(data["rank"]), int(data["vertex_count"]), tuple(tuple(e) for e in data["edges"]))

    def __str__(self):
        body = ", ".join("".join(map(str, e)) if self.vertex_count < 10 else "-".join(map(str, e)) for e in self.edges)
        return f"Hypergraph(r={self.rank}, n={self.vertex_count}, {{{body}}})"


@dataclass(frozen=True)
class LinkGraph:
    base_vertex: int
    pairs: tuple[Edge, ...]
    vertex_count: int

    def as_hypergraph(self) -> Hypergraph:
        """The link as an (r-1)-graph on the parent's vertex set (base vertex isolated)."""
        rank = len(self.pairs[0]) if self.pairs else 2
        return Hypergraph(rank, self.vertex_count, self.pairs)


FAMILIES = (
    "complete",
    "complete-minus-edge",
    "star",
    "f5",
    "s2n",
    "p1",
    "p2",
    "p3",
    "p4",
    "linear-path",
    "matching",
    "single-edge",
    "nonperfect",
    "nonperfect-witness",
)

# edge lists copied digit-for-digit; vertex 8 only occurs in P2
_P_BASE = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
_P_FAMILY = {
    "p1": _P_BASE + [(5, 6, 7)],
    "p2": _P_BASE + [(1, 5, 6), (2, 5, 6), (3, 7, 8)],
    "p3": _P_BASE + [(1, 5, 6), (2, 5, 6), (3, 4, 7)],
    "p4": _P_BASE + [(1, 5, 6), (2, 5, 6), (3, 5, 7)],
}


@dataclass(frozen=True)
class FamilySpec:
    """A named construction plus its integer parameters.

    ``params`` keys by family:

    ``complete``/``complete-minus-edge``: r, t;  ``star``: t (S_{2,t});
    ``s2n``: n;  ``linear-path``: r, length;  ``matching``: r, size;
    ``single-edge``: r;  ``nonperfect``/``nonperfect-witness``: t.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameter(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")


def _need(params, *names):
    missing = [k for k in names if k not in params]
    if missing:
        raise InvalidParameter(f"missing parameter(s): {', '.join(missing)}")
    return [int(params[k]) for k in names]


def complete_graph(t: int, r: int = 3) -> Hypergraph:
    if r < 1 or t < r:
        raise InvalidParameter(f"K_t^r needs t >= r >= 1, got t={t}, r={r}")
    return Hypergraph(r, t, tuple(combinations(range(1, t + 1), r)))


def star(t: int) -> Hypergraph:
    """S_{2,t}: centre pair {1, 2} and leaves 3..t+2."""
    if t < 1:
        raise InvalidParameter("S_{2,t} needs t >= 1")
    return Hypergraph(3, t + 2, tuple((1, 2, 2 + i) for i in range(1, t + 1)))


def s2n(n: int) -> Hypergraph:
    if n < 4:
        raise InvalidParameter("S_2(n) needs n >= 4")
    rest = range(3, n + 1)
    edges = [(1, 2, i) for i in rest]
    edges += [(i, j, k) for i in (1, 2) for j, k in combinations(rest, 2)]
    return Hypergraph(3, n, tuple(edges))


def nonperfect_witness(t: int) -> Hypergraph:
    """K_{t-1}^3 plus {ijt : i,j <= t-2} plus {1, t-1, t}."""
    if t < 5:
        raise InvalidParameter("construction needs t >= 5")
    edges = list(combinations(range(1, t), 3))
    edges += [(i, j, t) for i, j in combinations(range(1, t - 1), 2)]
    edges.append((1, t - 1, t))
    return Hypergraph(3, t, tuple(edges))


def nonperfect_forbidden(t: int) -> Hypergraph:
    """A t-vertex 3-graph with C(t-1,3)+C(t-2,2)+2 edges: the witness plus {2, t-1, t}."""
    return nonperfect_witness(t).add_edge((2, t - 1, t))


def construct(spec: FamilySpec | str, **params) -> Hypergraph:
    """Build a named hypergraph. Accepts a FamilySpec or a family name plus keyword params."""
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    fam, p = spec.family, spec.params
    if fam == "complete":
        r, t = _need(p, "r", "t")
        return complete_graph(t, r)
    if fam == "complete-minus-edge":
        r, t = _need(p, "r", "t")
        g = complete_graph(t, r)
        return delete(g, edges=[g.edges[-1]])
    if fam == "star":
        (t,) = _need(p, "t")
        return star(t)
    if fam == "f5":
        return Hypergraph(3, 5, ((1, 2, 3), (1, 2, 4), (3, 4, 5)))
    if fam == "s2n":
        (n,) = _need(p, "n")
        return s2n(n)
    if fam in _P_FAMILY:
        edges = _P_FAMILY[fam]
        return Hypergraph(3, max(max(e) for e in edges), tuple(edges))
    if fam == "linear-path":
        r, length = _need(p, "r", "length")
        if r < 2 or length < 1:
            raise InvalidParameter("linear path needs r >= 2, length >= 1")
        edges = [tuple(range(k * (r - 1) + 1, k * (r - 1) + r + 1)) for k in range(length)]
        return Hypergraph(r, length * (r - 1) + 1, tuple(edges))
    if fam == "matching":
        r, size = _need(p, "r", "size")
        if r < 1 or size < 0:
            raise InvalidParameter("matching needs r >= 1, size >= 0")
        edges = [tuple(range(k * r + 1, k * r + r + 1)) for k in range(size)]
        return Hypergraph(r, r * size, tuple(edges))
    if fam == "single-edge":
        (r,) = _need(p, "r")
        return complete_graph(r, r)
    if fam == "nonperfect":
        (t,) = _need(p, "t")
        return nonperfect_forbidden(t)
    if fam == "nonperfect-witness":
        (t,) = _need(p, "t")
        return nonperfect_witness(t)
    raise InvalidParameter(fam)  # unreachable: FamilySpec validates names


def link_graph(G: Hypergraph, v: int) -> LinkGraph:
    if not 1 <= v <= G.vertex_count:
        raise VertexOutOfRange(f"vertex {v} outside 1..{G.vertex_count}")
    pairs = tuple(sorted(tuple(u for u in e if u != v) for e in G.incidence[v]))
    return LinkGraph(v, pairs, G.vertex_count)


def disjoint_union(G: Hypergraph, H: Hypergraph) -> Hypergraph:
    if G.rank != H.rank:
        raise RankMismatch(f"ranks differ: {G.rank} vs {H.rank}")
    shift = G.vertex_count
    edges = G.edges + tuple(tuple(v + shift for v in e) for e in H.edges)
    return Hypergraph(G.rank, G.vertex_count + H.vertex_count, edges)


def delete(G: Hypergraph, vertices: Iterable[int] = (), edges: Iterable[Iterable[int]] = ()) -> Hypergraph:
    """Remove edges (keeping vertices), then the induced deletion of ``vertices``.

    Surviving vertices are relabelled 1..n' preserving order. Labels in both
    arguments refer to ``G``.
    """
    vertices = set(vertices)
    drop_edges = {tuple(sorted(e)) for e in edges}
    for v in vertices:
        if not 1 <= v <= G.vertex_count:
            raise TargetNotFound(f"vertex {v} not in graph")
    for e in drop_edges:
        if e not in G.edge_set:
            raise TargetNotFound(f"edge {e} not in graph")
    kept = [e for e in G.edges if e not in drop_edges and not vertices.intersection(e)]
    if not vertices:
        return Hypergraph(G.rank, G.vertex_count, tuple(kept))
    relabel = {}
    for v in G.vertices:
        if v not in vertices:
            relabel[v] = len(relabel) + 1
    return Hypergraph(G.rank, len(relabel), tuple(tuple(relabel[v] for v in e) for e in kept))


def induced(G: Hypergraph, keep: Iterable[int]) -> Hypergraph:
    keep = set(keep)
    return delete(G, vertices=[v for v in G.vertices if v not in keep])


def covers_pairs(G: Hypergraph, among: Iterable[int] | None = None) -> bool:
    """Every pair of vertices (of ``among``, if given) lies in some edge."""
    return not uncovered_pairs(G, among)


def uncovered_pairs(G: Hypergraph, among: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """Vertex pairs in no edge, in lexicographic order."""
    covered = set()
    for e in G.edges:
        covered.update(combinations(e, 2))
    pool = G.vertices if among is None else sorted(set(among))
    return [p for p in combinations(pool, 2) if p not in covered]


def relabel(G: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply ``v -> perm[v-1]``; ``perm`` is a permutation of 1..n."""
    return Hypergraph(G.rank, G.vertex_count, tuple(tuple(perm[v - 1] for v in e) for e in G.edges))


# --- canonical labelling ---------------------------------------------------
#
# Individualise-refine search. Refinement is colour refinement on the
# vertex/edge incidence structure; cells are ordered by invariant data only,
# so the search tree does not depend on input labels. Branches that differ by
# an automorphic transposition of the branching vertices are skipped.


def _refine(G: Hypergraph, colors: list[int]) -> list[int]:
    n = G.vertex_count
    while True:
        sigs = []
        for v in range(1, n + 1):
            nb = sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in G.incidence[v])
            sigs.append((colors[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [0] + [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors[1:])):
            return new
        colors = new


def _swap_is_automorphism(G: Hypergraph, a: int, b: int) -> bool:
    def sw(v):
        return b if v == a else a if v == b else v

    edges = G.edge_set
    for e in G.incidence[a]:
        if tuple(sorted(sw(v) for v in e)) not in edges:
            return False
    return True


def _individualize(colors: list[int], v: int) -> list[int]:
    # v gets a colour just below its former cell-mates
    keyed = [(2 * c + (0 if u != v else -1)) for u, c in enumerate(colors)]
    keyed[0] = -10
    ranks = {k: i for i, k in enumerate(sorted(set(keyed[1:])))}
    return [0] + [ranks[k] for k in keyed[1:]]


def _certificate(G: Hypergraph, colors: list[int]) -> tuple[Edge, ...]:
    # discrete colouring: colour c -> label c + 1
    return tuple(sorted(tuple(sorted(colors[v] + 1 for v in e)) for e in G.edges))


def canonical_labeling(G: Hypergraph, size_limit: int = CANONICAL_SIZE_LIMIT) -> tuple[tuple[Edge, ...], list[int]]:
    """Return (minimal certificate, perm) with ``relabel(G, perm).edges == certificate``."""
    if G.vertex_count > size_limit:
        raise SizeLimitExceeded(f"canonical form limited to n <= {size_limit}, got {G.vertex_count}")
    n = G.vertex_count
    if n == 0:
        return (), []
    base = [0] + [G.degrees[v] for v in G.vertices]
    best: list = [None, None]

    def search(colors):
        colors = _refine(G, colors)
        cells: dict[int, list[int]] = {}
        for v in range(1, n + 1):
            cells.setdefault(colors[v], []).append(v)
        if len(cells) == n:
            cert = _certificate(G, colors)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, [colors[v] + 1 for v in range(1, n + 1)]
            return
        # first smallest non-singleton cell
        target = min((len(c), k) for k, c in cells.items() if len(c) > 1)[1]
        tried: list[int] = []
        for v in cells[target]:
            if any(_swap_is_automorphism(G, u, v) for u in tried):
                continue
            tried.append(v)
            search(_individualize(colors, v))

    search(base)
    return best[0], best[1]


def canonical_form(G: Hypergraph, drop_isolated: bool = False, size_limit: int = CANONICAL_SIZE_LIMIT) -> Hypergraph:
    """Isomorphism-invariant relabelling: equal outputs iff the inputs are isomorphic."""
    if drop_isolated:
        G = delete(G, vertices=G.isolated_vertices())
    cert, _ = canonical_labeling(G, size_limit)
    return Hypergraph(G.rank, G.vertex_count, cert)

"""
Lagrangian polynomial of an r-graph over the probability simplex.

``evaluate``/``gradient`` work in exact rationals when given Fractions.
``maximize`` is float-only: a batched multiplicative-weights ascent over many
starts, followed by a Newton solve of the stationarity system on the
detected support and an active-set check of the zero coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NotExchangeable, RankMismatch, SizeLimitExceeded
from .hypergraph import Hypergraph, delete

SIMPLEX_TOL = 1e-12
PRUNE = 1e-10


@dataclass(frozen=True)
class WeightVector:
    """A point of the simplex, one weight per vertex (index 0 is vertex 1)."""

    weights: tuple
    mode: str = "float"

    def __post_init__(self):
        if self.mode not in ("float", "exact-rational"):
            raise InvalidParameter(f"unknown mode {self.mode!r}")
        if any(w < 0 for w in self.weights):
            raise InvalidParameter("weights must be non-negative")
        total = sum(self.weights)
        if self.mode == "exact-rational":
            if total != 1:
                raise InvalidParameter(f"exact weights sum to {total}, not 1")
        elif abs(total - 1) > SIMPLEX_TOL and len(self.weights) > 0:
            raise InvalidParameter(f"weights sum to {total!r}")

    @classmethod
    def exact(cls, weights) -> WeightVector:
        return cls(tuple(Fraction(w) for w in weights), "exact-rational")

    @classmethod
    def floats(cls, weights) -> WeightVector:
        return cls(tuple(float(w) for w in weights), "float")

    @classmethod
    def uniform(cls, n: int, exact: bool = False) -> WeightVector:
        return cls.exact([Fraction(1, n)] * n) if exact else cls.floats([1.0 / n] * n)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def as_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])


def _weights(G: Hypergraph, x):
    w = x.weights if isinstance(x, WeightVector) else tuple(x)
    if len(w) != G.vertex_count:
        raise DimensionMismatch(f"vector has {len(w)} entries, graph has {G.vertex_count} vertices")
    return w


def _is_exact(w) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in w)


def evaluate(G: Hypergraph, x):
    """Sum over edges of the product of the endpoint weights.

    Exact (a Fraction) when every weight is an int or Fraction.
    """
    w = _weights(G, x)
    if _is_exact(w):
        total = Fraction(0)
        for e in G.edges:
            total += math.prod(Fraction(w[v - 1]) for v in e)
        return total
    if not G.edges:
        return 0.0
    arr = np.asarray(w, dtype=float)
    return math.fsum(np.prod(arr[_edge_array(G)], axis=1))


def gradient(G: Hypergraph, x) -> list:
    """Partial derivatives: entry i sums, over edges through vertex i+1, the product of the other weights."""
    w = _weights(G, x)
    if _is_exact(w):
        grad = [Fraction(0)] * G.vertex_count
        for e in G.edges:
            for v in e:
                grad[v - 1] += math.prod(Fraction(w[u - 1]) for u in e if u != v)
        return grad
    return list(_poly(G).gradient(np.asarray(w, dtype=float)[None, :])[0])


def hessian(G: Hypergraph, x) -> np.ndarray:
    return _poly(G).hessian(np.asarray(_weights(G, x), dtype=float))


# --- vectorised polynomial -------------------------------------------------


def _edge_array(G: Hypergraph) -> np.ndarray:
    return np.array(G.edges, dtype=np.intp).reshape(len(G.edges), G.rank) - 1


class _Poly:
    """Batched evaluation of the Lagrangian polynomial for one graph."""

    def __init__(self, G: Hypergraph):
        self.n = G.vertex_count
        self.r = G.rank
        self.E = _edge_array(G)
        m = len(self.E)
        # one-hot scatter matrices, one per edge position
        self.scatter = []
        for k in range(self.r):
            M = np.zeros((m, self.n))
            M[np.arange(m), self.E[:, k]] = 1.0
            self.scatter.append(M)
        self.others = [[j for j in range(self.r) if j != k] for k in range(self.r)]
        # small graphs: gradient as a matrix product with the (r-1)-fold outer power
        self.dense = None
        if 2 <= self.r and self.n ** (self.r - 1) <= 4096 and m:
            W = np.zeros((self.n ** (self.r - 1), self.n))
            strides = self.n ** np.arange(self.r - 2, -1, -1)
            for e in self.E:
                for k in range(self.r):
                    rest = [e[j] for j in self.others[k]]
                    for p in permutations(rest):
                        W[int(np.dot(p, strides)), e[k]] += 1.0
            self.dense = W / math.factorial(self.r - 1)

    def values(self, X: np.ndarray) -> np.ndarray:
        return np.prod(X[:, self.E], axis=2).sum(axis=1)

    def gradient(self, X: np.ndarray) -> np.ndarray:
        if self.dense is not None:
            Q = X
            for _ in range(self.r - 2):
                Q = (Q[:, :, None] * X[:, None, :]).reshape(len(X), -1)
            return Q @ self.dense
        P = X[:, self.E]  # (S, m, r)
        G = np.zeros_like(X)
        for k in range(self.r):
            G += np.prod(P[:, :, self.others[k]], axis=2) @ self.scatter[k]
        return G

    def hessian(self, x: np.ndarray) -> np.ndarray:
        H = np.zeros((self.n, self.n))
        if self.r < 2:
            return H
        P = x[self.E]
        for a, b in combinations(range(self.r), 2):
            rest = [j for j in range(self.r) if j not in (a, b)]
            coef = np.prod(P[:, rest], axis=1) if rest else np.ones(len(self.E))
            np.add.at(H, (self.E[:, a], self.E[:, b]), coef)
        return H + H.T


@lru_cache(maxsize=4096)
def _poly(G: Hypergraph) -> _Poly:
    return _Poly(G)


# --- maximisation ----------------------------------------------------------


@dataclass(frozen=True)
class MaximizeConfig:
    starts: int = 64
    max_iters: int = 10_000
    step_rule: str = "multiplicative"  # or "projected"
    tol: float = 1e-9
    seed: int = 0
    heavy_starts: bool = True
    polish_limit: int | None = None  # polish only the best k distinct limit points


@dataclass
class OptimizationResult:
    value: float
    vector: WeightVector
    kkt_residual: float
    starts: int
    converged: bool
    offsupport_violation: float = 0.0
    iterations: int = 0

    @property
    def support(self) -> list[int]:
        return [i + 1 for i, w in enumerate(self.vector.weights) if w > 0]

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "vector": list(self.vector.weights),
            "kkt_residual": self.kkt_residual,
            "starts": self.starts,
            "converged": self.converged,
        }


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex (sort-based)."""
    v = np.atleast_2d(v)
    n = v.shape[1]
    u = -np.sort(-v, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    idx = np.arange(1, n + 1)
    cond = u - css / idx > 0
    rho = n - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(len(v)), rho] / (rho + 1)
    return np.maximum(v - theta[:, None], 0.0)


def kkt_report(G: Hypergraph, x: np.ndarray) -> tuple[float, float]:
    """(max over support of |grad_i - r*value|, max over zero coords of grad_i - r*value, floored at 0)."""
    if not G.edges:
        return 0.0, 0.0
    poly = _poly(G)
    g = poly.gradient(x[None, :])[0]
    target = G.rank * poly.values(x[None, :])[0]
    on = x > 0
    res = float(np.max(np.abs(g[on] - target))) if on.any() else 0.0
    off = float(np.max(g[~on] - target)) if (~on).any() else 0.0
    return res, max(off, 0.0)


def _starting_points(n: int, active: np.ndarray, cfg: MaximizeConfig, rng, warm) -> np.ndarray:
    k = len(active)
    rows = [np.full(k, 1.0 / k)]
    if cfg.heavy_starts and k > 1:
        for i in range(k):
            row = np.full(k, 0.5 / (k - 1))
            row[i] = 0.5
            rows.append(row)
    if cfg.starts > 0:
        rows.extend(rng.dirichlet(np.ones(k), size=cfg.starts))
    for w in warm or ():
        w = np.asarray(w, dtype=float)[active]
        if w.sum() > 0:
            rows.append(0.9 * w / w.sum() + 0.1 / k)
    return np.array(rows)


def _ascend(poly: _Poly, X: np.ndarray, cfg: MaximizeConfig) -> tuple[np.ndarray, int]:
    """Run the ascent on every row; a row is frozen once it is near-stationary on its support."""
    r = poly.r
    X = X.copy()
    live = np.arange(len(X))
    prev = np.full(len(X), -np.inf)
    step = 0.05
    it = 0
    for it in range(1, cfg.max_iters + 1):
        Y = X[live]
        G = poly.gradient(Y)
        if cfg.step_rule == "multiplicative":
            lam = np.einsum("ij,ij->i", Y, G) / r
            Yn = Y * G / (r * np.maximum(lam, 1e-300))[:, None]
            Yn /= Yn.sum(axis=1, keepdims=True)
        else:
            Yn = project_simplex(Y + step * G)
        X[live] = Yn
        if it % 20 == 0:
            # the Newton polish takes it from here
            lam = poly.values(Yn) * r
            Gn = poly.gradient(Yn)
            on = Yn > 1e-5
            res = np.max(np.where(on, np.abs(Gn - lam[:, None]), 0.0), axis=1)
            delta = np.max(np.abs(Yn - Y), axis=1)
            val = lam / r
            gain = val - prev[live]
            prev[live] = val
            live = live[(res >= 1e-7) & (delta >= 1e-13) & (gain >= 1e-15)]
            if len(live) == 0:
                break
    return X, it


def _newton_on_support(poly: _Poly, x: np.ndarray, support: np.ndarray, iters: int = 40):
    """Solve grad_S(x) = mu, sum x_S = 1 by Newton; None if it leaves the orthant."""
    k = len(support)
    y = x.copy()
    y[~np.isin(np.arange(len(x)), support)] = 0.0
    y /= y.sum()
    mu = poly.r * poly.values(y[None, :])[0]
    for _ in range(iters):
        g = poly.gradient(y[None, :])[0]
        F = np.append(g[support] - mu, y[support].sum() - 1.0)
        if np.max(np.abs(F)) < 1e-15:
            break
        H = poly.hessian(y)[np.ix_(support, support)]
        J = np.zeros((k + 1, k + 1))
        J[:k, :k] = H
        J[:k, k] = -1.0
        J[k, :k] = 1.0
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        y[support] += step[:k]
        mu += step[k]
        if np.any(y[support] <= 0):
            return None
    return y


def _polish(G: Hypergraph, poly: _Poly, x: np.ndarray, tol: float) -> np.ndarray:
    """Active-set refinement of one ascent limit point; never returns a worse point."""
    best = x.copy()
    best[best < PRUNE] = 0.0
    best /= best.sum()
    best_val = poly.values(best[None, :])[0]
    cur = x.copy()
    support = np.flatnonzero(cur > 1e-6)
    for _ in range(2 * len(x) + 2):
        if len(support) == 0:
            break
        y = _newton_on_support(poly, cur, support)
        if y is None:
            # drop the coordinate that was heading to zero fastest and retry
            drop = support[np.argmin(cur[support])]
            support = support[support != drop]
            continue
        y[y < PRUNE] = 0.0
        y /= y.sum()
        val = poly.values(y[None, :])[0]
        if val >= best_val - 1e-15:
            best, best_val = y, val
        g = poly.gradient(y[None, :])[0]
        excess = g - poly.r * val
        excess[support] = -np.inf
        j = int(np.argmax(excess))
        if excess[j] <= tol:
            break
        # an off-support coordinate wants weight: move a little onto it and re-ascend
        cur = 0.98 * y
        cur[j] += 0.02
        cur, _ = _ascend(poly, cur[None, :], MaximizeConfig(max_iters=2000))
        cur = cur[0]
        support = np.union1d(np.flatnonzero(cur > 1e-6), [j])
    return best


def maximize(G: Hypergraph, config: MaximizeConfig | None = None, warm_starts=None) -> OptimizationResult:
    """Multi-start search for the Lagrangian of G.

    ``value`` is the polynomial evaluated at the returned feasible vector, so it
    is always a lower bound on the true maximum. ``converged`` means the KKT
    residual on the support and the gain available at every zero coordinate
    are both within ``config.tol``.
    """
    cfg = config or MaximizeConfig()
    n = G.vertex_count
    if not G.edges:
        vec = WeightVector.uniform(n) if n else WeightVector(())
        return OptimizationResult(0.0, vec, 0.0, 0, True)
    active = np.array([v - 1 for v in G.vertices if G.degrees[v] > 0])
    sub = delete(G, vertices=G.isolated_vertices())
    poly = _poly(sub)
    rng = np.random.default_rng(cfg.seed)
    X0 = _starting_points(n, active, cfg, rng, warm_starts)
    X, iters = _ascend(poly, X0, cfg)

    candidates = []
    vals = poly.values(X)
    # polish distinct limit points, best first
    seen = []
    for i in np.argsort(-vals, kind="stable"):
        xi = X[i]
        if any(np.max(np.abs(xi - s)) < 1e-6 for s in seen):
            continue
        if cfg.polish_limit is not None and len(seen) >= cfg.polish_limit:
            break
        seen.append(xi)
        y = _polish(sub, poly, xi, cfg.tol)
        candidates.append((poly.values(y[None, :])[0], y))

    top = max(v for v, _ in candidates)
    tied = [y for v, y in candidates if v >= top - 1e-12]
    y_sub = min(tied, key=lambda y: tuple(np.round(y, 12)))
    x = np.zeros(n)
    x[active] = y_sub
    x /= x.sum()
    res, off = kkt_report(G, x)
    value = evaluate(G, list(x))
    return OptimizationResult(
        value=value,
        vector=WeightVector.floats(x),
        kkt_residual=res,
        starts=len(X0),
        converged=res <= cfg.tol and off <= cfg.tol,
        offsupport_violation=off,
        iterations=iters,
    )


def lagrangian(G: Hypergraph, config: MaximizeConfig | None = None) -> float:
    return maximize(G, config).value


# --- closed forms ----------------------------------------------------------


def clique_number(n: int, edges) -> int:
    """Maximum clique size of a simple graph on vertices 1..n (branch and bound with colouring bounds)."""
    adj = [set() for _ in range(n + 1)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = [1 if n else 0]

    def colour_bound(cands):
        # greedy colouring; returns vertices ordered by colour class and their colour numbers
        order, bounds = [], []
        uncoloured = sorted(cands, key=lambda v: -len(adj[v]))
        c = 0
        while uncoloured:
            c += 1
            cls, rest = [], []
            for v in uncoloured:
                (rest if any(v in adj[u] for u in cls) else cls).append(v)
            order.extend(cls)
            bounds.extend([c] * len(cls))
            uncoloured = rest
        return order, bounds

    def expand(size, cands):
        order, bounds = colour_bound(cands)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            new = cands & adj[v]
            if new:
                expand(size + 1, new)
            elif size + 1 > best[0]:
                best[0] = size + 1
            cands = cands - {v}

    if n:
        expand(0, set(range(1, n + 1)))
    return best[0]


def graph_clique_number(G: Hypergraph) -> int:
    if G.rank != 2:
        raise RankMismatch("clique number is defined here for 2-graphs")
    if not G.edges:
        return 1 if G.vertex_count else 0
    return clique_number(G.vertex_count, G.edges)


def motzkin_straus(G: Hypergraph) -> Fraction:
    """Exact Lagrangian of a 2-graph: (1 - 1/omega)/2 with omega its clique number."""
    if G.rank != 2:
        raise RankMismatch(f"expected a 2-graph, got rank {G.rank}")
    if not G.edges:
        return Fraction(0)
    w = graph_clique_number(G)
    return Fraction(1, 2) * (1 - Fraction(1, w))


def complete_lambda(t: int, r: int) -> Fraction:
    """Lagrangian of K_t^r, attained at the uniform vector: C(t, r) / t^r."""
    if not (t >= r >= 2):
        raise InvalidParameter(f"need t >= r >= 2, got t={t}, r={r}")
    return Fraction(comb(t, r), t**r)


def closed_form_lambda(G: Hypergraph) -> Fraction | None:
    """Exact value when one is known: empty graphs, 2-graphs, complete graphs plus isolated vertices."""
    if not G.edges:
        return Fraction(0)
    if G.rank == 2:
        return motzkin_straus(G)
    if G.is_complete():
        return complete_lambda(G.vertex_count - len(G.isolated_vertices()), G.rank)
    return None


# --- symmetrisation --------------------------------------------------------


def difference_link(G: Hypergraph, j: int, i: int) -> set:
    """(r-1)-sets e avoiding i with e+j an edge but e+i not."""
    out = set()
    for e in G.incidence[j]:
        rest = tuple(u for u in e if u != j)
        if i in rest:
            continue
        if tuple(sorted(rest + (i,))) not in G.edge_set:
            out.add(rest)
    return out


def exchangeability(G: Hypergraph, i: int, j: int) -> bool:
    if i == j:
        raise InvalidParameter("need two distinct vertices")
    return not difference_link(G, i, j) and not difference_link(G, j, i)


def symmetrize(G: Hypergraph, x, i: int, j: int) -> WeightVector:
    """Replace the weights of i and j by their average; refuses unless i and j are exchangeable."""
    w = list(_weights(G, x))
    if not exchangeability(G, i, j):
        raise NotExchangeable(f"vertices {i} and {j} have non-empty difference links")
    exact = _is_exact(w)
    avg = (Fraction(w[i - 1]) + Fraction(w[j - 1])) / 2 if exact else (w[i - 1] + w[j - 1]) / 2
    w[i - 1] = w[j - 1] = avg
    return WeightVector.exact(w) if exact else WeightVector(tuple(float(v) for v in w), "float")


# --- density ---------------------------------------------------------------


@dataclass
class DensityVerdict:
    status: str  # "dense", "not-dense", "inconclusive"
    witness_edge: tuple | None = None
    witness_vertex: int | None = None
    value: float = 0.0
    margins: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness_edge": list(self.witness_edge) if self.witness_edge else None,
            "witness_vertex": self.witness_vertex,
            "value": self.value,
            "margins": {"-".join(map(str, e)): m for e, m in self.margins.items()},
        }


def is_dense(G: Hypergraph, tol: float = 1e-7, config: MaximizeConfig | None = None, noise: float = 1e-9) -> DensityVerdict:
    """Edge-deletion scan for density.

    Every proper subgraph sits inside some G - e or misses a vertex, so it
    suffices to compare lambda(G - e) with lambda(G) and to reject isolated
    vertices. A margin at or below ``noise`` is a witness of non-density; a
    margin in (noise, tol] is reported as inconclusive.
    """
    cfg = config or MaximizeConfig()
    iso = G.isolated_vertices()
    if iso:
        return DensityVerdict("not-dense", witness_vertex=iso[0], value=maximize(G, cfg).value)
    full = maximize(G, cfg)
    margins = {}
    uncertain = None
    for e in G.edges:
        sub = delete(G, edges=[e])
        margin = full.value - maximize(sub, cfg, warm_starts=[full.vector.as_array()]).value
        margins[e] = margin
        if margin <= noise:
            return DensityVerdict("not-dense", witness_edge=e, value=full.value, margins=margins)
        if margin <= tol and uncertain is None:
            uncertain = e
    if uncertain is not None:
        return DensityVerdict("inconclusive", witness_edge=uncertain, value=full.value, margins=margins)
    return DensityVerdict("dense", value=full.value, margins=margins)


# --- lattice oracle --------------------------------------------------------


def simplex_lattice(k: int, N: int) -> np.ndarray:
    """All k-tuples of non-negative integers summing to N, one per row."""
    if k == 0:
        return np.zeros((1 if N == 0 else 0, 0), dtype=np.int32)
    rows = np.zeros((1, 0), dtype=np.int32)
    sums = np.zeros(1, dtype=np.int32)
    for _ in range(k - 1):
        counts = N - sums + 1
        idx = np.repeat(np.arange(len(rows)), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        vals = (np.arange(counts.sum()) - starts).astype(np.int32)
        rows = np.hstack([rows[idx], vals[:, None]])
        sums = sums[idx] + vals
    return np.hstack([rows, (N - sums)[:, None]])


def brute_force_lambda(G: Hypergraph, grid_step: float, max_vertices: int = 7, chunk: int = 200_000) -> float:
    """Maximum of the polynomial over the simplex lattice of spacing ``grid_step``.

    Isolated vertices are skipped: moving their lattice weight onto any other
    vertex stays on the lattice and never lowers the value.
    """
    if G.vertex_count > max_vertices:
        raise SizeLimitExceeded(f"lattice oracle limited to n <= {max_vertices}")
    if not G.edges:
        return 0.0
    N = round(1 / grid_step)
    if abs(N * grid_step - 1) > 1e-9:
        raise InvalidParameter("grid_step must be 1/N for an integer N")
    sub = delete(G, vertices=G.isolated_vertices())
    poly = _poly(sub)
    lattice = simplex_lattice(sub.vertex_count, N)
    best = 0.0
    for s in range(0, len(lattice), chunk):
        X = lattice[s : s + chunk] / N
        best = max(best, float(poly.values(X).max()))
    return best


def is_simplex_point(x: Sequence[float], tol: float = SIMPLEX_TOL) -> bool:
    return all(v >= 0 for v in x) and abs(sum(x) - 1) <= tol

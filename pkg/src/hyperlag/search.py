"""
Lower-bound probes for Lagrangian densities.

A seeded hill climb over edge sets on a fixed vertex budget looks for
F-free graphs with large Lagrangian and compares the best one against the
clique value lambda(K_{t-1}^r), t being the smallest forbidden vertex count.
"""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidParameter, RankMismatch
from .freeness import contains_through, free_of_family, _family_order
from .hypergraph import FamilySpec, Hypergraph, canonical_form, complete_graph, construct, delete
from .io import rational_str, write_graph
from .lagrangian import MaximizeConfig, closed_form_lambda, complete_lambda, is_dense, maximize

log = logging.getLogger(__name__)

COUNTEREXAMPLE_MARGIN = 1e-5
ACCEPT_TOL = 1e-7
PLATEAU_TOL = 1e-9

CONSISTENT = "consistent-with-λ-perfect"
COUNTEREXAMPLE = "counterexample-found"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchBudget:
    iterations: int = 300  # moves per restart
    restarts: int = 4
    seed: int = 0
    starts: int = 4  # random optimizer starts per evaluation
    max_iters: int = 3000
    workers: int = 1


@dataclass
class SearchReport:
    forbidden: list[Hypergraph]
    n: int
    best_graph: Hypergraph
    best_lambda: float
    target: Fraction
    verdict: str
    iterations: int
    seed: int
    best_vector: list[float] = field(default_factory=list)
    converged: bool = True
    alternatives: int = 0
    restart_values: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "forbidden": [F.to_dict() for F in self.forbidden],
            "n": self.n,
            "best_graph": self.best_graph.to_dict(),
            "best_lambda": self.best_lambda,
            "target": rational_str(self.target),
            "target_float": float(self.target),
            "verdict": self.verdict,
            "iterations": self.iterations,
            "seed": self.seed,
            "best_vector": self.best_vector,
            "converged": self.converged,
            "alternatives": self.alternatives,
            "restart_values": self.restart_values,
        }


def clique_target(forbidden: Sequence[Hypergraph]) -> tuple[int, Fraction]:
    """(t, lambda(K_{t-1}^r)) where t is the smallest forbidden vertex count."""
    r = forbidden[0].rank
    t = min(F.vertex_count for F in forbidden)
    return t, complete_lambda(t - 1, r) if t - 1 >= r else Fraction(0)


def _check_family(forbidden, n):
    if not forbidden:
        raise InvalidParameter("need at least one forbidden graph")
    ranks = {F.rank for F in forbidden}
    if len(ranks) != 1:
        raise RankMismatch(f"forbidden graphs have mixed ranks {sorted(ranks)}")
    r = ranks.pop()
    if n < r:
        raise InvalidParameter(f"need n >= r, got n={n}, r={r}")
    return r


def _addable(G: Hypergraph, edge, family) -> bool:
    """Whether G + edge stays free, given that G is free: only copies through the new edge matter."""
    H = G.add_edge(edge)
    return all(contains_through(H, F, edge).free for F in family)


def random_maximal_free(r: int, n: int, family, rng) -> Hypergraph:
    candidates = list(combinations(range(1, n + 1), r))
    G = Hypergraph(r, n)
    for i in rng.permutation(len(candidates)):
        e = candidates[i]
        if _addable(G, e, family):
            G = G.add_edge(e)
    return G


def _padded_clique(r, n, t, family) -> Hypergraph:
    k = min(t - 1, n)
    if k < r:
        return Hypergraph(r, n)
    K = complete_graph(k, r)
    G = Hypergraph(r, n, K.edges)
    return G if free_of_family(G, family) else Hypergraph(r, n)


class _Evaluator:
    def __init__(self, budget: SearchBudget):
        self.cfg = MaximizeConfig(starts=budget.starts, max_iters=budget.max_iters, seed=budget.seed, polish_limit=3)
        self.cache: dict = {}

    def __call__(self, G: Hypergraph, warm=None):
        hit = self.cache.get(G.edges)
        if hit is not None:
            return hit
        res = maximize(G, self.cfg, warm_starts=None if warm is None else [warm])
        out = (res.value, res.vector.as_array())
        if len(self.cache) < 20000:
            self.cache[G.edges] = out
        return out


def _climb(r, n, t, family, budget: SearchBudget, restart: int):
    """One restart: returns (best_lambda, best_edges, moves, alternative canonical forms)."""
    seq = np.random.SeedSequence([budget.seed, restart])
    rng = np.random.Generator(np.random.Philox(seq))
    lam = _Evaluator(budget)
    G = _padded_clique(r, n, t, family) if restart == 0 else random_maximal_free(r, n, family, rng)
    cur, vec = lam(G)
    best, best_G = cur, G
    alts: set = set()
    all_edges = list(combinations(range(1, n + 1), r))
    moves = 0
    for _ in range(budget.iterations):
        moves += 1
        non_edges = [e for e in all_edges if e not in G.edge_set]
        kind = rng.choice(["add", "remove", "swap"], p=[0.35, 0.2, 0.45])
        if kind == "add" and not non_edges:
            kind = "swap"
        if kind != "add" and not G.edges:
            kind = "add"
            if not non_edges:
                break
        if kind == "add":
            e = non_edges[rng.integers(len(non_edges))]
            if not _addable(G, e, family):
                continue
            H = G.add_edge(e)
        elif kind == "remove":
            H = delete(G, edges=[G.edges[rng.integers(len(G.edges))]])
        else:
            out = G.edges[rng.integers(len(G.edges))]
            pool = [e for e in non_edges if e != out]
            if not pool:
                continue
            e = pool[rng.integers(len(pool))]
            H = delete(G, edges=[out])
            if not _addable(H, e, family):
                continue
            H = H.add_edge(e)
        val, hvec = lam(H, warm=vec)
        # plateau moves allowed; for removals this keeps only lambda-preserving ones
        if val < cur - PLATEAU_TOL:
            continue
        G, cur, vec = H, val, hvec
        if cur > best + PLATEAU_TOL:
            best, best_G = cur, G
            alts = set()
        elif abs(cur - best) <= PLATEAU_TOL and n <= 10 and len(alts) < 8:
            alts.add(canonical_form(G, drop_isolated=True).edges)
    return best, best_G.edges, moves, len(alts)


def search(forbidden: Sequence[Hypergraph], n: int, budget: SearchBudget | None = None) -> SearchReport:
    """Hill-climb for an F-free r-graph on n vertices with large Lagrangian.

    Moves are add-edge (rejected if a forbidden copy appears), lambda-preserving
    remove-edge, and swap; plateau moves are accepted. Restart 0 starts from
    K_{t-1}^r padded with isolated vertices, the others from random maximal
    F-free graphs. The result is deterministic for a given seed.
    """
    budget = budget or SearchBudget()
    r = _check_family(forbidden, n)
    family = _family_order(list(forbidden))
    t, target = clique_target(forbidden)

    args = [(r, n, t, family, budget, k) for k in range(budget.restarts)]
    if budget.workers > 1:
        with ProcessPoolExecutor(budget.workers) as pool:
            outcomes = list(pool.map(_climb_star, args))
    else:
        outcomes = [_climb(*a) for a in args]

    # merge in restart order; strict improvement needed to replace, so ties keep the earliest
    best_val, best_edges = -1.0, ()
    moves = sum(o[2] for o in outcomes)
    alternatives = 0
    for val, edges, _, n_alt in outcomes:
        if val > best_val + PLATEAU_TOL:
            best_val, best_edges, alternatives = val, edges, n_alt
        elif abs(val - best_val) <= PLATEAU_TOL:
            alternatives += n_alt + (edges != best_edges)
    best_G = Hypergraph(r, n, best_edges)
    if not free_of_family(best_G, forbidden):
        raise AssertionError("search produced a graph containing a forbidden member")
    final = maximize(best_G, MaximizeConfig(seed=budget.seed))
    if alternatives:
        log.info("%d alternative graphs reached the best value; keeping the first", alternatives)

    if final.value > float(target) + COUNTEREXAMPLE_MARGIN:
        verdict = COUNTEREXAMPLE  # value is attained by a feasible vector, so it is a valid lower bound
    elif final.value > float(target) + ACCEPT_TOL or not final.converged:
        verdict = INCONCLUSIVE
    else:
        verdict = CONSISTENT
    return SearchReport(
        forbidden=list(forbidden),
        n=n,
        best_graph=best_G,
        best_lambda=final.value,
        target=target,
        verdict=verdict,
        iterations=moves,
        seed=budget.seed,
        best_vector=list(final.vector.weights),
        converged=final.converged,
        alternatives=alternatives,
        restart_values=[o[0] for o in outcomes],
    )


def _climb_star(args):
    return _climb(*args)


def lower_bound_from_construction(spec: FamilySpec | Hypergraph, forbidden: Sequence[Hypergraph]) -> dict:
    """Lagrangian of a construction, if it is certified free of every forbidden graph.

    The value is exact (a Fraction) when a closed form applies.
    """
    G = spec if isinstance(spec, Hypergraph) else construct(spec)
    free = free_of_family(G, forbidden)
    if not free:
        return {"lambda": None, "certified_free": False, "graph": G}
    exact = closed_form_lambda(G)
    value = exact if exact is not None else maximize(G).value
    return {"lambda": value, "certified_free": True, "graph": G}


def lambda_perfect_scan(H: Hypergraph, n_max: int, budget: SearchBudget | None = None, out_dir=None) -> list[SearchReport]:
    """Search every n from |V(H)| - 1 to n_max; stop at the first counterexample."""
    if n_max < H.vertex_count - 1:
        raise InvalidParameter("n_max must be at least |V(H)| - 1")
    reports = []
    for n in range(max(H.vertex_count - 1, H.rank), n_max + 1):
        rep = search([H], n, budget)
        reports.append(rep)
        if rep.verdict == COUNTEREXAMPLE:
            if out_dir is not None:
                out = Path(out_dir)
                out.mkdir(parents=True, exist_ok=True)
                write_graph(rep.best_graph, out / f"counterexample_n{n}.hg")
            break
    return reports


def dense_core(G: Hypergraph, tol: float = 1e-9, config: MaximizeConfig | None = None) -> Hypergraph:
    """Shrink G to a subgraph with the same Lagrangian (within tol) from which no edge or vertex can be dropped.

    Isolated vertices go first; then single edges are dropped while the value
    holds, restarting the scan after every removal.
    """
    cfg = config or MaximizeConfig()
    target = maximize(G, cfg).value
    changed = True
    while changed:
        changed = False
        G = delete(G, vertices=G.isolated_vertices())
        for e in G.edges:
            sub = delete(G, edges=[e])
            if maximize(sub, cfg).value >= target - tol:
                G, changed = sub, True
                break
    return G


def write_report(report: SearchReport, json_path, hg_path=None) -> dict:
    data = report.to_dict()
    if hg_path is not None:
        data["best_graph_path"] = str(write_graph(report.best_graph, hg_path))
    Path(json_path).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    return data


def write_csv(reports: Sequence[SearchReport], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "best_lambda", "target", "verdict"])
        for rep in reports:
            w.writerow([rep.n, repr(rep.best_lambda), rational_str(rep.target), rep.verdict])


__all__ = [
    "SearchBudget",
    "SearchReport",
    "search",
    "lower_bound_from_construction",
    "lambda_perfect_scan",
    "dense_core",
    "is_dense",
    "write_report",
    "write_csv",
]

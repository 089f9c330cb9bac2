import csv
import json
from fractions import Fraction

import pytest

from hyperlag.claims import s2n_symmetric_lambda
from hyperlag.errors import InvalidParameter, RankMismatch
from hyperlag.freeness import free_of_family
from hyperlag.hypergraph import FamilySpec, Hypergraph, complete_graph, construct, disjoint_union, nonperfect_forbidden, star
from hyperlag.io import read_graph
from hyperlag.lagrangian import complete_lambda, is_dense, maximize
from hyperlag.search import (
    COUNTEREXAMPLE,
    CONSISTENT,
    SearchBudget,
    clique_target,
    dense_core,
    lambda_perfect_scan,
    lower_bound_from_construction,
    search,
    write_csv,
    write_report,
)

SMALL = SearchBudget(iterations=60, restarts=2, seed=0)
P_FAMILY = [construct(p) for p in ("p1", "p2", "p3", "p4")]


def test_clique_target_uses_smallest_member():
    assert clique_target([disjoint_union(construct("f5"), construct("single-edge", r=3))]) == (8, Fraction(5, 49))
    assert clique_target(P_FAMILY) == (7, Fraction(5, 54))
    assert clique_target([complete_graph(3)]) == (3, 0)


def test_single_edge_forbidden_gives_empty():
    rep = search([construct("single-edge", r=3)], 5, SMALL)
    assert rep.best_lambda == 0 and len(rep.best_graph) == 0
    assert rep.verdict == CONSISTENT


def test_validation():
    with pytest.raises(RankMismatch):
        search([complete_graph(4), complete_graph(3, 2)], 6, SMALL)
    with pytest.raises(InvalidParameter):
        search([], 6, SMALL)
    with pytest.raises(InvalidParameter):
        search([complete_graph(4)], 2, SMALL)


def test_clique_restart_reaches_target():
    # every member has more than t - 1 vertices, so K_{t-1} is admissible
    forbidden = [disjoint_union(complete_graph(4), construct("single-edge", r=3))]
    rep = search(forbidden, 6, SMALL)
    assert rep.best_lambda == pytest.approx(float(complete_lambda(6, 3)), abs=1e-9)


def test_report_invariants_and_determinism():
    forbidden = [construct("complete-minus-edge", r=3, t=4)]
    a = search(forbidden, 6, SMALL)
    b = search(forbidden, 6, SMALL)
    assert a.to_dict() == b.to_dict()
    assert free_of_family(a.best_graph, forbidden)
    assert abs(maximize(a.best_graph).value - a.best_lambda) <= 1e-9
    assert (a.verdict == COUNTEREXAMPLE) == (a.best_lambda > float(a.target) + 1e-5)


def test_nonperfect_forbidden_counterexample():
    rep = search([nonperfect_forbidden(6)], 6, SMALL)
    assert rep.verdict == COUNTEREXAMPLE
    assert rep.best_lambda >= float(Fraction(41, 500)) - 1e-9


def test_p_family_stays_below_bound():
    rep = search(P_FAMILY, 8, SMALL)
    assert rep.best_lambda <= 3**0.5 / 18 + 1e-6


def test_lower_bound_from_construction():
    out = lower_bound_from_construction(FamilySpec("s2n", {"n": 10}), P_FAMILY)
    assert out["certified_free"]
    assert out["lambda"] == pytest.approx(s2n_symmetric_lambda(10)[0], abs=1e-7)
    target = [disjoint_union(construct("f5"), construct("single-edge", r=3))]
    out = lower_bound_from_construction(complete_graph(7), target)
    assert out["lambda"] == Fraction(5, 49) and out["certified_free"]
    assert not lower_bound_from_construction(complete_graph(4), [complete_graph(4)])["certified_free"]


def test_scan_star(tmp_path):
    reps = lambda_perfect_scan(star(2), 7, SMALL, out_dir=tmp_path)
    assert [r.n for r in reps] == [3, 4, 5, 6, 7]
    assert all(r.verdict == CONSISTENT for r in reps)
    assert all(r.target == Fraction(1, 27) for r in reps)


def test_scan_halts_and_saves(tmp_path):
    reps = lambda_perfect_scan(nonperfect_forbidden(6), 6, SMALL, out_dir=tmp_path)
    assert reps[-1].verdict == COUNTEREXAMPLE and reps[-1].n == 6
    saved = read_graph(tmp_path / "counterexample_n6.hg")
    assert saved == reps[-1].best_graph
    with pytest.raises(InvalidParameter):
        lambda_perfect_scan(nonperfect_forbidden(6), 4, SMALL)


def test_dense_core():
    G = Hypergraph(3, 6, complete_graph(5).edges + ((1, 2, 6),))
    core = dense_core(G)
    assert maximize(core).value == pytest.approx(maximize(G).value, abs=1e-9)
    assert is_dense(core).status == "dense"


def test_writers(tmp_path):
    rep = search([construct("complete-minus-edge", r=3, t=4)], 5, SMALL)
    data = write_report(rep, tmp_path / "r.json", tmp_path / "best.hg")
    on_disk = json.loads((tmp_path / "r.json").read_text())
    assert on_disk == data
    assert on_disk["target"] == "1/27" and on_disk["verdict"] == rep.verdict
    assert read_graph(tmp_path / "best.hg") == rep.best_graph
    write_csv([rep], tmp_path / "s.csv")
    rows = list(csv.reader(open(tmp_path / "s.csv")))
    assert rows[0] == ["n", "best_lambda", "target", "verdict"] and rows[1][0] == "5"

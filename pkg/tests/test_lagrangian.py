import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hypergraphs, random_graph, simplex_points
from hyperlag.errors import DimensionMismatch, InvalidParameter, NotExchangeable, RankMismatch, SizeLimitExceeded
from hyperlag.hypergraph import Hypergraph, complete_graph, construct, delete, nonperfect_witness, s2n, star
from hyperlag.lagrangian import (
    MaximizeConfig,
    WeightVector,
    brute_force_lambda,
    closed_form_lambda,
    complete_lambda,
    evaluate,
    exchangeability,
    gradient,
    hessian,
    is_dense,
    is_simplex_point,
    kkt_report,
    maximize,
    motzkin_straus,
    project_simplex,
    simplex_lattice,
    symmetrize,
)

F = Fraction


def fano():
    return Hypergraph(3, 7, ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)))


def test_evaluate_examples():
    assert evaluate(complete_graph(3, 2), [F(1, 3)] * 3) == F(1, 3)
    assert evaluate(complete_graph(3), [F(1, 3)] * 3) == F(1, 27)
    x = [F(1, 4)] * 3 + [F(1, 8)] * 2
    assert evaluate(nonperfect_witness(5), x) == F(17, 256)


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        evaluate(complete_graph(4), [0.5, 0.5])
    with pytest.raises(DimensionMismatch):
        gradient(complete_graph(4), [0.5, 0.5])


def test_weight_vector_invariants():
    assert WeightVector.uniform(4, exact=True).weights == (F(1, 4),) * 4
    with pytest.raises(ValueError):
        WeightVector.exact([F(1, 2), F(1, 3)])
    with pytest.raises(ValueError):
        WeightVector.floats([1.5, -0.5])


def test_gradient_examples():
    assert gradient(complete_graph(4), [F(1, 4)] * 4) == [F(3, 16)] * 4
    assert gradient(complete_graph(3), [F(1), F(0), F(0)]) == [0, 0, 0]


@given(hypergraphs(rank=[2, 3, 4], max_n=8).flatmap(lambda G: st.tuples(st.just(G), simplex_points(G.vertex_count, exact=True))))
def test_euler_identity_exact(pair):
    G, x = pair
    assert sum(xi * gi for xi, gi in zip(x, gradient(G, x))) == G.rank * evaluate(G, x)


@given(hypergraphs(rank=[2, 3, 4], max_n=8).flatmap(lambda G: st.tuples(st.just(G), simplex_points(G.vertex_count))))
def test_euler_identity_float(pair):
    G, x = pair
    assert abs(np.dot(x, gradient(G, x)) - G.rank * evaluate(G, x)) <= 1e-12


@given(hypergraphs(rank=[2, 3, 4], max_n=8).flatmap(lambda G: st.tuples(st.just(G), simplex_points(G.vertex_count))))
def test_gradient_finite_differences(pair):
    G, x = pair
    g = gradient(G, x)
    h = 1e-6
    for i in range(G.vertex_count):
        up, down = list(x), list(x)
        up[i] += h
        down[i] -= h
        fd = (evaluate(G, up) - evaluate(G, down)) / (2 * h)
        assert abs(fd - g[i]) <= 1e-6


def test_hessian_symmetric_matches_gradient(rng):
    G = random_graph(rng, 3, 6, 0.6)
    x = rng.dirichlet(np.ones(6))
    H = hessian(G, x)
    assert np.allclose(H, H.T)
    h = 1e-6
    for i in range(6):
        e = np.zeros(6)
        e[i] = h
        fd = (np.array(gradient(G, x + e)) - np.array(gradient(G, x - e))) / (2 * h)
        assert np.allclose(fd, H[:, i], atol=1e-6)


def test_maximize_examples():
    assert abs(maximize(complete_graph(7)).value - 5 / 49) <= 1e-9
    res = maximize(construct("complete-minus-edge", r=3, t=4))
    assert abs(res.value - 4 / 81) <= 1e-9
    assert res.converged
    assert sorted(res.vector.weights)[-1] == pytest.approx(1 / 3, abs=1e-6)


def test_maximize_empty_and_isolated():
    assert maximize(Hypergraph(3, 5)).value == 0
    G = Hypergraph(3, 6, ((1, 2, 3),))
    res = maximize(G)
    assert res.value == pytest.approx(1 / 27, abs=1e-12)
    assert res.support == [1, 2, 3]


def test_result_value_is_recomputed():
    rng = np.random.default_rng(0)
    for _ in range(10):
        G = random_graph(rng, 3, 7, 0.5)
        res = maximize(G)
        assert abs(res.value - evaluate(G, list(res.vector.weights))) <= 1e-12
        assert res.kkt_residual >= 0
        assert is_simplex_point(res.vector.weights)
        if res.converged:
            on, off = kkt_report(G, res.vector.as_array())
            assert on <= 1e-9 and off <= 1e-9


def test_maximize_is_deterministic():
    G = s2n(8)
    a, b = maximize(G, MaximizeConfig(seed=4)), maximize(G, MaximizeConfig(seed=4))
    assert a.value == b.value and a.vector == b.vector


def test_projected_step_rule_agrees():
    G = construct("complete-minus-edge", r=3, t=4)
    res = maximize(G, MaximizeConfig(step_rule="projected"))
    assert abs(res.value - 4 / 81) <= 1e-9


def test_s2n_tie_break_symmetric_heavy_pair():
    res = maximize(s2n(9))
    w = res.vector.weights
    assert abs(w[0] - w[1]) <= 1e-9
    assert max(w[2:]) < w[0]


def test_motzkin_straus_examples():
    assert motzkin_straus(complete_graph(4, 2)) == F(3, 8)
    assert motzkin_straus(Hypergraph(2, 5)) == 0
    c5 = Hypergraph(2, 5, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5)))
    assert motzkin_straus(c5) == F(1, 4)
    with pytest.raises(RankMismatch):
        motzkin_straus(complete_graph(4))


def test_motzkin_straus_against_optimizer(rng):
    for _ in range(25):
        G = random_graph(rng, 2, int(rng.integers(2, 11)), rng.uniform(0.1, 0.9))
        assert abs(maximize(G).value - motzkin_straus(G)) <= 1e-6


def test_complete_lambda():
    assert complete_lambda(6, 3) == F(5, 54)
    assert complete_lambda(7, 3) == F(5, 49)
    assert complete_lambda(3, 3) == F(1, 27)
    with pytest.raises(InvalidParameter):
        complete_lambda(2, 3)


def test_closed_form():
    assert closed_form_lambda(Hypergraph(3, 4)) == 0
    assert closed_form_lambda(Hypergraph(3, 9, complete_graph(7).edges)) == F(5, 49)
    assert closed_form_lambda(s2n(9)) is None


def test_exchangeability_examples():
    assert exchangeability(complete_graph(5), 2, 4)
    assert not exchangeability(construct("f5"), 1, 5)
    assert exchangeability(star(4), 3, 4)
    with pytest.raises(InvalidParameter):
        exchangeability(star(4), 3, 3)


def test_symmetrize_examples():
    K4 = complete_graph(4)
    x = [F(2, 5), F(1, 5), F(1, 5), F(1, 5)]
    y = symmetrize(K4, x, 1, 2)
    assert y.weights == (F(3, 10), F(3, 10), F(1, 5), F(1, 5))
    assert evaluate(K4, y.weights) > evaluate(K4, x)
    same = [F(1, 4)] * 4
    assert symmetrize(K4, same, 1, 2).weights == tuple(same)
    with pytest.raises(NotExchangeable):
        symmetrize(construct("f5"), [F(1, 5)] * 5, 1, 5)


@given(st.integers(5, 10).flatmap(lambda n: st.tuples(st.just(n), simplex_points(n, exact=True))))
def test_symmetrize_s2n_centres(pair):
    n, x = pair
    G = s2n(n)
    y = symmetrize(G, x, 1, 2)
    assert evaluate(G, y.weights) >= evaluate(G, x)
    if x[0] != x[1] and all(v > 0 for v in x):
        assert evaluate(G, y.weights) > evaluate(G, x)


def test_is_dense_examples():
    assert is_dense(complete_graph(5)).status == "dense"
    assert is_dense(Hypergraph(3, 5, complete_graph(4).edges)).status == "not-dense"
    v = is_dense(fano())
    assert v.status == "not-dense" and v.witness_edge in fano().edge_set


def test_project_simplex():
    p = project_simplex(np.array([[0.5, 0.9, -0.2], [1.0, 1.0, 1.0]]))
    assert np.allclose(p.sum(axis=1), 1) and (p >= 0).all()
    assert np.allclose(p[1], [1 / 3] * 3)


def test_simplex_lattice_counts():
    L = simplex_lattice(4, 6)
    assert len(L) == math.comb(9, 3)
    assert (L.sum(axis=1) == 6).all()


def test_brute_force_examples():
    assert brute_force_lambda(complete_graph(4), 0.01) >= complete_lambda(4, 3) - 0.01
    assert brute_force_lambda(complete_graph(3), 1 / 3) == pytest.approx(1 / 27, abs=1e-15)
    assert abs(brute_force_lambda(construct("complete-minus-edge", r=3, t=4), 0.005) - 4 / 81) <= 5e-3
    with pytest.raises(SizeLimitExceeded):
        brute_force_lambda(complete_graph(8), 0.1)


@given(hypergraphs(max_n=6, min_edges=1))
def test_maximize_dominates_lattice(G):
    res = maximize(G, MaximizeConfig(starts=16))
    bf = brute_force_lambda(G, 0.05)
    assert res.value >= bf - 1e-12
    assert res.value <= bf + 0.05


@given(hypergraphs(max_n=7, min_edges=1), st.data())
def test_monotone_under_edge_deletion(G, data):
    drop = data.draw(st.lists(st.sampled_from(G.edges), unique=True, max_size=len(G)))
    H = delete(G, edges=drop)
    cfg = MaximizeConfig(starts=16)
    assert maximize(H, cfg).value <= maximize(G, cfg).value + 2e-9

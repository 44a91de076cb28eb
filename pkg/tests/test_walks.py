import numpy as np
import pytest

from dirres import GraphError, build_digraph, build_engine, stationary_distribution, transition_matrix
from dirres import walks as W
from dirres.resistance import group_resistance_point

from . import oracles
from .conftest import bidirected_path, directed_cycle, random_strong_digraph

PAIR = build_digraph([(0, 1, 1), (1, 0, 1)])


def test_forced_first_step():
    est = W.estimate_escape_probability(PAIR, 0, 1, walks=500, seed=1)
    assert est.mean == 1.0 and est.std_error == 0.0
    est = W.estimate_escape_probability(directed_cycle(3), 0, [1, 2], walks=500, seed=1)
    assert est.mean == 1.0 and est.quantity == "P_es(i,X)"
    assert W.estimate_hitting_time(PAIR, 0, 1, walks=100, seed=0).mean == 1.0


def test_path_escape_and_hitting():
    path = bidirected_path(3)
    est = W.estimate_escape_probability(path, 0, 2, walks=100_000, seed=5)
    assert est.within(0.5)
    assert est.samples == 100_000
    assert est.std_error == pytest.approx(0.5 / np.sqrt(100_000), rel=0.01)
    assert W.estimate_hitting_time(path, 0, 2, walks=100_000, seed=6).within(4.0)


@pytest.mark.parametrize("n", [3, 7])
def test_cycle_deterministic_walks(n):
    c = directed_cycle(n)
    for j in range(1, n):
        h = W.estimate_hitting_time(c, 0, j, walks=50, seed=j)
        assert h.mean == j and h.std_error == 0.0
    assert W.estimate_commute_time(c, 0, n - 1, walks=50, seed=0).mean == n
    assert W.estimate_detour_time(c, 0, [1], 0, walks=50, seed=0).mean == n


def test_argument_errors():
    with pytest.raises(GraphError):
        W.estimate_escape_probability(PAIR, 0, [0, 1], walks=10, seed=0)
    with pytest.raises(ValueError):
        W.estimate_hitting_time(PAIR, 1, 1, walks=10, seed=0)
    with pytest.raises(ValueError):
        W.estimate_hitting_time(PAIR, 0, 1, walks=0, seed=0)


def test_determinism():
    g = random_strong_digraph(np.random.default_rng(2), 8, 0.3)
    a = W.estimate_commute_time(g, 0, 3, walks=2000, seed=17)
    b = W.estimate_commute_time(g, 0, 3, walks=2000, seed=17)
    assert a == b
    assert W.estimate_commute_time(g, 0, 3, walks=2000, seed=18) != a


def test_step_cap_marks_invalid():
    g = bidirected_path(6)
    est = W.estimate_hitting_time(g, 0, 5, walks=1000, seed=0, step_cap=2000)
    assert not est.valid
    assert est.samples < 1000


def test_kac_return_times():
    g = random_strong_digraph(np.random.default_rng(8), 7, 0.3)
    pi = stationary_distribution(g).pi
    for i in range(g.n):
        est = W.estimate_return_time(g, i, walks=20_000, seed=100 + i)
        assert est.within(1 / pi[i], 4.0), (i, est, 1 / pi[i])


def test_commute_times_match_resistance():
    g = random_strong_digraph(np.random.default_rng(9), 8, 0.3)
    e = build_engine(g)
    hits = 0
    cells = 0
    for i, j in [(0, 1), (2, 5), (7, 3), (4, 6)]:
        est = W.estimate_commute_time(g, i, j, walks=20_000, seed=i * 10 + j)
        cells += 1
        hits += est.within(e.volume * e.resistance(i, j))
    X = [1, 4]
    for i in (0, 3, 6):
        est = W.estimate_commute_time(g, i, X, walks=20_000, seed=50 + i)
        cells += 1
        hits += est.within(e.volume * group_resistance_point(e, i, X))
    assert hits >= cells - 1


def test_escape_identity_and_voltage_consistency():
    g = random_strong_digraph(np.random.default_rng(10), 6, 0.4)
    e = build_engine(g)
    P = transition_matrix(g)
    i, j = 0, 4
    pes = W.estimate_escape_probability(g, i, j, walks=50_000, seed=3)
    ratio = pes.mean * e.volume * e.pi.pi[i] * e.resistance(i, j)
    assert abs(ratio - 1) <= 3 * pes.std_error / pes.mean
    total, var = 0.0, 0.0
    for k in range(g.n):
        if k == i or P[i, k] == 0:
            continue
        phi = W.estimate_voltage(g, i, j, k, walks=20_000, seed=k)
        total += P[i, k] * phi.mean
        var += (P[i, k] * phi.std_error) ** 2
    assert abs(pes.mean - (1 - total)) <= 3 * (pes.std_error + np.sqrt(var))


def test_voltage_boundaries():
    g = bidirected_path(3)
    assert W.estimate_voltage(g, 0, 2, 0, walks=10, seed=0).mean == 1.0
    assert W.estimate_voltage(g, 0, 2, 2, walks=10, seed=0).mean == 0.0
    assert W.estimate_voltage(g, 0, 2, 1, walks=40_000, seed=0).within(0.5)


def test_kemeny_invariance():
    g = random_strong_digraph(np.random.default_rng(11), 6, 0.3)
    K = build_engine(g).kemeny_constant()
    assert abs(K - oracles.kemeny(g.W, 0)) <= 1e-9 * K
    for i in range(g.n):
        assert W.estimate_kemeny(g, i, walks=20_000, seed=i).within(K, 4.0)


def test_detour_monotone_in_transit_set():
    g = random_strong_digraph(np.random.default_rng(12), 8, 0.3)
    small = W.estimate_detour_time(g, 0, [3], 5, walks=20_000, seed=1)
    large = W.estimate_detour_time(g, 0, [3, 6, 7], 5, walks=20_000, seed=2)
    assert small.mean >= large.mean - 3 * (small.std_error + large.std_error)


def test_detour_return_identity():
    g = random_strong_digraph(np.random.default_rng(13), 6, 0.3)
    pi = stationary_distribution(g).pi
    est = W.estimate_detour_time(g, 2, [2], 2, walks=20_000, seed=4)
    assert est.within(1 / pi[2], 4.0)


def test_sampler_follows_transition_probabilities():
    g = build_digraph([(0, 1, 1), (0, 2, 3), (1, 0, 1), (2, 0, 1)])
    s = W._Sampler(g)
    u = np.random.default_rng(0).random(40_000)
    nxt = s.step(np.zeros(u.size, dtype=np.int64), u)
    assert abs((nxt == 2).mean() - 0.75) < 0.01
    assert set(np.unique(nxt)) == {1, 2}

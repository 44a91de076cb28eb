import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirres import GenSpec, GeneratorError, gen_directed_er, gen_directed_sf, gen_directed_ws


def arcs(g):
    return {(i, j) for i, j, _ in g.edges}


@pytest.mark.parametrize("seed", range(5))
def test_ws_reference_size(seed):
    g = gen_directed_ws(50, 10, 0.5, 1.0, seed)
    assert g.n == 50 and g.m == 500
    assert np.all(np.diag(g.W) == 0)
    assert set(np.unique(g.W)) <= {0.0, 1.0}


def test_ws_p0_is_ring_lattice():
    g = gen_directed_ws(12, 3, 0.0, 1.0, seed=4)
    assert arcs(g) == {(i, (i + d) % 12) for i in range(12) for d in (1, 2, 3)}


@settings(max_examples=30, deadline=None)
@given(st.integers(7, 40), st.integers(1, 3), st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**32))
def test_ws_arc_count_and_simplicity(n, K, p, b, seed):
    g = gen_directed_ws(n, K, p, b, seed)
    assert g.m == n * K
    assert np.all(np.diag(g.W) == 0)


def test_ws_rejects_bad_k():
    with pytest.raises(GeneratorError):
        gen_directed_ws(10, 5, 0.5, 1.0, 0)


def test_er_extremes():
    g = gen_directed_er(12, 1.0, 3)
    assert g.m == 12 * 11
    with pytest.raises(GeneratorError):
        gen_directed_er(12, 0.0, 3)


def test_er_arc_count_distribution():
    # binomial(2450, 0.15): mean 367.5, sd ~17.7
    counts = np.array([gen_directed_er(50, 0.15, s).m for s in range(40)])
    assert np.all(np.abs(counts - 367.5) <= 4 * 17.67)
    assert abs(counts.mean() - 367.5) <= 4 * 17.67 / np.sqrt(len(counts))


def test_sf_distinct_arcs_bounded():
    counts = [gen_directed_sf(50, 300, 0.5, 0.5, s).m for s in range(30)]
    assert all(240 < c <= 300 for c in counts)
    assert all(np.all(np.diag(gen_directed_sf(50, 300, 0.5, 0.5, s).W) == 0) for s in range(3))


def test_sf_uniform_vs_skewed_endpoints():
    flat = gen_directed_sf(200, 2000, 0.0, 0.0, 1)
    skew = gen_directed_sf(200, 2000, 0.9, 0.9, 1)
    head = lambda d: d[:100].sum() / d.sum()
    # uniform endpoints: half the out-degree mass on the first half, sd ~0.011
    assert abs(head(flat.out_degree) - 0.5) < 0.05
    assert abs(head(flat.in_degree) - 0.5) < 0.05
    assert head(skew.out_degree) > 0.6 and head(skew.in_degree) > 0.6


@pytest.mark.parametrize("spec", [GenSpec("ws", 30, 7, K=3), GenSpec("er", 30, 7, p=0.2), GenSpec("sf", 30, 7, m=100)])
def test_determinism(spec):
    a, b = spec.generate(), spec.generate()
    np.testing.assert_array_equal(a.W, b.W)
    c = spec.with_seed(8).generate()
    assert not np.array_equal(a.W, c.W)


def test_genspec_validation():
    with pytest.raises(GeneratorError):
        GenSpec("xx", 10)
    with pytest.raises(GeneratorError):
        GenSpec("er", 10, p=1.5)
    assert GenSpec("er", 50, p=0.15).label == "er(n=50,p=0.15)"

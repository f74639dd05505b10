import numpy as np
import pytest
from scipy import stats

import netei as ne
from netei.samplers import node_bins, rw_kernel_bins


def complete(n):
    return ne.Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def occupancy(trace, n):
    return np.bincount(trace.node_ids, minlength=n) / len(trace)


@pytest.fixture(scope="module")
def small_graph():
    model = ne.JointDegreeModel()
    d = ne.sample_degree_sequence(model, 20, 4)
    g, _ = ne.configuration_model(d, 4)
    assert g.largest_component().all()
    return g


def test_rw_on_k4_uniform():
    tr = ne.random_walk(complete(4), ne.SamplerConfig("rw", 100_000, seed=0))
    assert np.allclose(occupancy(tr, 4), 0.25, rtol=0.02)


def test_rw_occupancy_proportional_to_degree(small_graph):
    g = small_graph
    tr = ne.random_walk(g, ne.SamplerConfig("rw", 1_000_000, seed=1))
    counts = np.bincount(tr.node_ids, minlength=g.n_nodes)
    target = g.degrees / g.degrees.sum()
    ok = counts >= 100
    rel = np.abs(counts[ok] / len(tr) - target[ok]) / target[ok]
    assert rel.max() < 0.05


def test_rw_path_graph_step():
    g = ne.Graph.from_edges([(0, 1), (1, 2)])
    tr = ne.random_walk(g, ne.SamplerConfig("rw", 20_001, seed=3))
    ids = tr.node_ids
    after_one = ids[1:][ids[:-1] == 1]
    assert set(after_one.tolist()) == {0, 2}
    counts = np.bincount(after_one, minlength=3)[[0, 2]]
    assert stats.chisquare(counts).pvalue > 1e-3


def test_rw_detailed_balance(small_graph):
    tr = ne.random_walk(small_graph, ne.SamplerConfig("rw", 500_000, seed=2))
    n = small_graph.n_nodes
    flows = np.zeros((n, n))
    np.add.at(flows, (tr.node_ids[:-1], tr.node_ids[1:]), 1)
    big = flows + flows.T > 2000
    rel = np.abs(flows - flows.T)[big] / (flows + flows.T)[big]
    assert rel.max() < 0.05


def test_walk_moves_along_edges(small_graph):
    tr = ne.random_walk(small_graph, ne.SamplerConfig("rw", 5000, seed=8))
    adj = small_graph.to_sparse()
    assert all(adj[a, b] > 0 for a, b in zip(tr.node_ids[:-1], tr.node_ids[1:]))
    assert np.array_equal(tr.degrees, small_graph.degrees[tr.node_ids])


def test_pr_c1_equals_rw(small_graph):
    a = ne.walk(small_graph, ne.SamplerConfig("rw", 5000, seed=5))
    b = ne.walk(small_graph, ne.SamplerConfig("pr", 5000, c=1.0, seed=5))
    assert np.array_equal(a.node_ids, b.node_ids)


def test_rwj_alpha0_equals_rw(small_graph):
    a = ne.walk(small_graph, ne.SamplerConfig("rw", 5000, seed=6))
    b = ne.walk(small_graph, ne.SamplerConfig("rwj", 5000, alpha=0.0, seed=6))
    assert np.array_equal(a.node_ids, b.node_ids)


def test_pr_c0_is_iid_uniform(ref_graph):
    tr = ne.pagerank_walk(ref_graph, ne.SamplerConfig("pr", 100_000, c=0.0, seed=1))
    assert stats.chisquare(np.bincount(tr.node_ids, minlength=ref_graph.n_nodes)).pvalue > 1e-3
    assert ne.intervals_sweep(tr).plateau.value == pytest.approx(1.0, abs=0.1)


def test_pr_on_k4_uniform():
    tr = ne.pagerank_walk(complete(4), ne.SamplerConfig("pr", 100_000, c=0.85, seed=0))
    assert np.allclose(occupancy(tr, 4), 0.25, rtol=0.02)
    assert tr.meta["burn_in"] == 40 and tr.meta["burn_in_defaulted"]


def test_rwj_huge_alpha_uniform(small_graph):
    n = small_graph.n_nodes
    tr = ne.rwj_walk(small_graph, ne.SamplerConfig("rwj", 1_000_000, alpha=1e9, seed=0))
    assert np.allclose(occupancy(tr, n), 1 / n, rtol=0.02)


def test_rwj_occupancy_matches_closed_form(small_graph):
    cfg = ne.SamplerConfig("rwj", 1_000_000, alpha=5.0, seed=4)
    occ = occupancy(ne.rwj_walk(small_graph, cfg), small_graph.n_nodes)
    assert np.allclose(occ, ne.stationary_distribution(small_graph, cfg), rtol=0.05)


def test_rwj_marginal_matches_model(ref_graph, model):
    ed = model.mean_degree
    x = ne.rwj_walk(ref_graph, ne.SamplerConfig("rwj", 1_000_000, alpha=ed, seed=1)).degrees
    k = np.arange(1, x.max() + 1)
    ecdf = np.searchsorted(np.sort(x), k, side="right") / len(x)
    assert np.abs(ecdf - (1 - model.rwj_stationary_tail(k + 0.5, ed))).max() < 0.02


def test_rwj_marginal_matches_graph_law(ref_graph):
    alpha = 21.0
    cfg = ne.SamplerConfig("rwj", 1_000_000, alpha=alpha, seed=3)
    x = ne.rwj_walk(ref_graph, cfg).degrees
    deg = ref_graph.degrees
    k = np.arange(1, deg.max() + 1)
    w = deg + alpha
    exact = np.array([w[deg <= kk].sum() for kk in k]) / w.sum()
    ecdf = np.searchsorted(np.sort(x), k, side="right") / len(x)
    assert np.abs(ecdf - exact).max() < 0.01


def test_stationary_distribution_pr_unknown(small_graph):
    assert ne.stationary_distribution(small_graph, ne.SamplerConfig("pr", 10, c=0.5)) is None


@pytest.mark.parametrize("kw", [dict(kind="xx"), dict(n=0), dict(c=1.5), dict(alpha=-1), dict(burn_in=-2)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        ne.SamplerConfig(**kw)


def test_wrapper_kind_mismatch(small_graph):
    with pytest.raises(ValueError):
        ne.random_walk(small_graph, ne.SamplerConfig("pr"))


def test_explicit_burn_in_and_start(small_graph):
    tr = ne.walk(small_graph, ne.SamplerConfig("pr", 100, c=0.5, burn_in=7, seed=1), start=3)
    assert tr.meta == {"start": 3, "burn_in": 7, "burn_in_defaulted": False}


def test_reproducible(small_graph):
    cfg = ne.SamplerConfig("pr", 2000, c=0.7, seed=42)
    assert np.array_equal(ne.walk(small_graph, cfg).node_ids, ne.walk(small_graph, cfg).node_ids)


def test_kernel_histogram_two_cycle():
    h = ne.kernel_histogram(np.array([3, 7] * 50), bins=[0, 5, 10])
    assert h.counts.tolist() == [[0, 50], [49, 0]]
    assert h.conditional.tolist() == [[0, 1], [1, 0]]


def test_kernel_bins_sum_to_one(model):
    edges = np.r_[10, np.geomspace(11, 1e9, 60)]
    assert rw_kernel_bins(model, 30, edges).sum() == pytest.approx(1.0, abs=1e-5)
    assert node_bins(model, edges).sum() == pytest.approx(1.0, abs=1e-5)


def test_rw_kernel_row_matches_model(rw_trace, model):
    edges = np.r_[10, 15, 20, 30, 40, 60, 80, 120, 200, 400, 10000] - 0.5
    x = rw_trace
    sel = (x[:-1] >= 27) & (x[:-1] <= 33)
    cnt, _ = np.histogram(x[1:][sel], edges)
    ds, w = np.unique(x[:-1][sel], return_counts=True)
    pred = sum(wi * rw_kernel_bins(model, d, edges) for d, wi in zip(ds, w)) / w.sum()
    ratio = cnt / cnt.sum() / pred
    ok = cnt >= 200
    assert np.all(np.abs(ratio[ok] - 1) <= 0.2), np.round(ratio, 2)


def test_iid_trace_kernel_rows_constant(ref_graph):
    tr = ne.pagerank_walk(ref_graph, ne.SamplerConfig("pr", 200_000, c=0.0, seed=9))
    h = ne.kernel_histogram(tr, bins=[1, 14, 18, 25, 40, 10_000])
    assert stats.chi2_contingency(h.counts).pvalue > 1e-3

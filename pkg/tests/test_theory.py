import math

import numpy as np
import pytest

import netei as ne
from netei import theory

# frozen oracles
# C(u,u) at gamma=1.2, u=0.9: P(D1<=q, D2<=q) with q the 0.9 edge quantile, from
# 30-digit 2-D quadrature of the joint density over [10, q]^2
DIAG_09 = 0.84769662013095838842
# 1 - (21.0052/42.0052) 2^-1.2, 30-digit arithmetic
RWJ_21 = 0.78233541689900599488
# mu + sigma((1-(0.9)^(1/(1e4*0.5647)))^(-1/1.2) - 1), 30-digit arithmetic
XQ = 130926.62324966330217
HIT = 0.88542588985301930228
CLUSTER = 1.7708517797060386046


def test_rw_pareto_values():
    assert ne.ei_rw_pareto(1.0) == 0.5
    assert ne.ei_rw_pareto(1.2) == pytest.approx(0.5647, abs=1e-4)
    assert round(ne.ei_rw_pareto(1.2), 2) == 0.56


def test_rw_pareto_limits():
    assert ne.ei_rw_pareto(1e-9) < 1e-8
    assert ne.ei_rw_pareto(200) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ne.ei_rw_pareto(0)


def test_rwj():
    ed = ne.JointDegreeModel().mean_degree
    assert ne.ei_rwj_pareto(1.2, 0, ed) == ne.ei_rw_pareto(1.2)
    assert ne.ei_rwj_pareto(1.2, 21, 21.0052) == pytest.approx(RWJ_21, abs=1e-15)
    assert ne.ei_rwj_pareto(1.2, math.inf, ed) == 1.0
    assert ne.ei_rwj_pareto(1.2, 1e12, ed) == pytest.approx(1.0)
    vals = [ne.ei_rwj_pareto(1.2, a, ed) for a in (0, 10, 21, 50, 100)]
    assert vals == sorted(vals)


def test_pr_bound():
    assert ne.ei_pr_lower_bound(0) == 1
    assert ne.ei_pr_lower_bound(1) == 0
    assert ne.ei_pr_lower_bound(0.85) == pytest.approx(0.15)


def test_archimedean():
    assert ne.ei_archimedean(1) == 0.5
    assert ne.ei_archimedean(2) == 0.75
    assert ne.ei_archimedean(1.2) == ne.ei_rw_pareto(1.2)


def test_copula_diag_boundaries():
    assert ne.theoretical_copula_diag(0.0, 1.2) == 0.0
    assert ne.theoretical_copula_diag(1.0, 1.2) == 1.0
    with pytest.raises(ValueError):
        ne.theoretical_copula_diag(1.5, 1.2)


def test_copula_diag_oracle():
    assert ne.theoretical_copula_diag(0.9, 1.2) == pytest.approx(DIAG_09, abs=1e-9)


def test_copula_diag_matches_model(model):
    q = model.edge_quantile(0.9)
    direct = 1 - 2 * model.edge_tail(q) + model.joint_tail(q, q)
    assert ne.theoretical_copula_diag(0.9, 1.2) == pytest.approx(float(direct), abs=1e-12)


def test_copula_diag_derivative_gives_theta():
    h = 1e-6
    slope = (1 - ne.theoretical_copula_diag(1 - h, 1.2)) / h
    assert slope - 1 == pytest.approx(1 - 2**-1.2, abs=1e-3)


def test_copula_diag_vectorised_and_frechet_bounds():
    u = np.linspace(0, 1, 101)
    c = ne.theoretical_copula_diag(u, 1.2)
    assert c.shape == u.shape
    assert np.all(c >= np.maximum(2 * u - 1, 0) - 1e-15) and np.all(c <= u + 1e-15)
    assert np.all(np.diff(c) >= 0)


def test_maxima_quantile():
    inv = ne.JointDegreeModel().edge_quantile
    assert theory.maxima_quantile(inv, 1, 1.0, 0.3) == pytest.approx(float(inv(0.7)))
    a = theory.maxima_quantile(inv, 1000, 0.5, 0.1)
    b = theory.maxima_quantile(inv, 2000, 0.25, 0.1)
    assert a == pytest.approx(b, rel=1e-12)
    assert ne.maxima_quantile_pareto(10, 15, 1.2, 10**4, 0.5647, 0.1) == pytest.approx(XQ, rel=1e-10)
    assert theory.maxima_quantile(inv, 10**4, 0.5647, 0.1) == pytest.approx(XQ, rel=1e-10)


@pytest.mark.parametrize("fn", [
    lambda: ne.maxima_quantile_pareto(10, 15, 1.2, 100, 0.0, 0.1),
    lambda: ne.largest_degree_estimate(1, 1.2, 100, 0.0),
    lambda: ne.expected_hitting_fraction(0.0, 1),
    lambda: ne.mean_cluster_size(0.0),
])
def test_theta_zero_rejected(fn):
    with pytest.raises(ValueError):
        fn()


def test_largest_degree_identity():
    assert ne.largest_degree_estimate(math.log(2), 1.0, 12345, 1.0) == pytest.approx(12345)


def test_iid_largest_degree_formula():
    assert ne.iid_largest_degree(537_523_432, 1.124) == pytest.approx(537_523_432 ** (1 / 1.124))
    # the quoted 59,453,030 is reached at delta = 1.123
    assert ne.iid_largest_degree(537_523_432, 1.123) == pytest.approx(59_453_030, rel=1e-6)


def test_largest_degree_against_median_of_maxima():
    """Median of the maximum of a max-autoregressive Frechet(1.2) sequence.

    Tail ``P(X > x) ~ x^-1.2`` (C = 1) and extremal index ``1 - a^1.2``.
    The maximum of ``X_1..X_n`` equals ``max(a X_0, b max Z_t)``.
    """
    delta, theta, n = 1.2, 0.5647, 10**5
    a = (1 - theta) ** (1 / delta)
    b = theta ** (1 / delta)
    rng = np.random.default_rng(77)
    frechet = lambda size: (-np.log(rng.random(size))) ** (-1 / delta)
    maxima = [max(a * frechet(1)[0], b * frechet(n).max()) for _ in range(200)]
    est = ne.largest_degree_estimate(1.0, delta, n, theta)
    assert np.median(maxima) == pytest.approx(est, rel=0.15)


def test_hitting_fraction_and_cluster_size():
    assert ne.expected_hitting_fraction(1, 1) == 1
    assert ne.expected_hitting_fraction(0.5, 1) == 2
    assert ne.expected_hitting_fraction(0.5647, 2) == pytest.approx(HIT, rel=1e-14)
    assert ne.mean_cluster_size(1) == 1
    assert ne.mean_cluster_size(0.5) == 2
    assert ne.mean_cluster_size(0.5647) == pytest.approx(CLUSTER, rel=1e-14)


def test_theory_result_type():
    r = ne.EITheoryResult(0.5, "rw", {"gamma": 1})
    assert r.theta == 0.5
    with pytest.raises(ValueError):
        ne.EITheoryResult(1.5, "x")

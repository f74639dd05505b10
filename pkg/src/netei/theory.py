"""Closed-form extremal-index values and the quantities derived from them.

These are the reference values the estimators in :mod:`netei.estimators`
are checked against.  All functions are pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class EITheoryResult:
    theta: float
    method: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"extremal index out of [0, 1]: {self.theta}")


def _check_theta(theta):
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")


def ei_archimedean(beta: float) -> float:
    """Extremal index ``1 - 2**-beta`` of a sequence whose survival copula
    is Archimedean with a generator regularly varying with index ``-beta``."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return 1.0 - 2.0 ** -beta


def ei_rw_pareto(gamma: float) -> float:
    """Extremal index of the random-walk degree sequence under the
    bivariate Pareto model: ``1 - 2**-gamma``."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return 1.0 - 2.0 ** -gamma


def ei_rwj_pareto(gamma: float, alpha: float, mean_degree: float) -> float:
    """Extremal index of the random walk with jumps under the bivariate
    Pareto model: ``1 - E[D] / (E[D] + alpha) * 2**-gamma``."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if not mean_degree > 0:
        raise ValueError(f"mean degree must be positive, got {mean_degree}")
    if math.isinf(alpha):
        return 1.0
    return 1.0 - mean_degree / (mean_degree + alpha) * 2.0 ** -gamma


def ei_pr_lower_bound(c: float) -> float:
    """Lower bound ``1 - c`` on the extremal index of a PageRank walk with
    damping ``c``, valid for any degree correlation structure."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"c must lie in [0, 1], got {c}")
    return 1.0 - c


def theoretical_copula_diag(u, gamma):
    """Diagonal ``C(u, u)`` of the copula of consecutive random-walk degrees.

    ``C(u,u) = (1 + 2((1-u)^(-1/gamma) - 1))^(-gamma) + 2u - 1``, with the
    boundary values ``C(0,0) = 0`` and ``C(1,1) = 1``.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    u = np.asarray(u, dtype=float)
    if ((u < 0) | (u > 1)).any():
        raise ValueError("u must lie in [0, 1]")
    t = 1.0 - u
    with np.errstate(divide="ignore", over="ignore"):
        # survival diagonal written as t * (2 - t^(1/gamma))^-gamma; finite at t = 0
        surv = t * (2.0 - t ** (1.0 / gamma)) ** -gamma
    out = surv + 2.0 * u - 1.0
    return float(out) if out.ndim == 0 else out


def maxima_quantile(marginal_inverse, n: int, theta: float, eta: float) -> float:
    """Approximate ``(1 - eta)`` quantile of the maximum of ``n`` samples.

    ``x_eta = F^{-1}((1 - eta) ** (1 / (n * theta)))`` where
    ``marginal_inverse`` is ``F^{-1}``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if theta == 0:
        raise ValueError("maxima quantile is undefined for theta = 0")
    _check_theta(theta)
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    # 1 - (1-eta)^(1/(n theta)) computed without cancellation
    tail = -math.expm1(math.log1p(-eta) / (n * theta))
    return float(marginal_inverse(1.0 - tail))


def maxima_quantile_pareto(mu, sigma, gamma, n, theta, eta) -> float:
    """Closed form of :func:`maxima_quantile` for the Pareto edge marginal
    ``Fbar(x) = (1 + (x - mu)/sigma)^-gamma``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if theta == 0:
        raise ValueError("maxima quantile is undefined for theta = 0")
    _check_theta(theta)
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    tail = -math.expm1(math.log1p(-eta) / (n * theta))
    return mu + sigma * (tail ** (-1.0 / gamma) - 1.0)


def largest_degree_estimate(c_coeff: float, delta: float, n: float, theta: float) -> float:
    """Median-based estimate of the largest of ``n`` stationary samples with
    Pareto marginal ``Fbar(x) = C x^-delta`` and extremal index ``theta``:
    ``(n theta)^(1/delta) (C / log 2)^(1/delta)``.
    """
    if not (c_coeff > 0 and delta > 0 and n >= 1):
        raise ValueError("need C > 0, delta > 0 and n >= 1")
    _check_theta(theta)
    return (n * theta) ** (1.0 / delta) * (c_coeff / math.log(2.0)) ** (1.0 / delta)


def iid_largest_degree(n_nodes: float, delta: float, k: float = 1.0) -> float:
    """Rule-of-thumb largest degree ``K N^(1/delta)`` for i.i.d. Pareto
    degrees with tail exponent ``delta`` (``K`` close to 1)."""
    if not (n_nodes >= 1 and delta > 0 and k > 0):
        raise ValueError("need N >= 1, delta > 0 and K > 0")
    return k * n_nodes ** (1.0 / delta)


def expected_hitting_fraction(theta: float, tau: float) -> float:
    """Limit of ``E[T_n / n]`` for the first time the sequence exceeds a
    threshold ``u_n`` with ``n (1 - F(u_n)) -> tau``: ``1 / (theta tau)``."""
    if theta == 0 or tau == 0:
        raise ValueError("hitting fraction is undefined for theta = 0 or tau = 0")
    _check_theta(theta)
    if tau < 0:
        raise ValueError("tau must be positive")
    return 1.0 / (theta * tau)


def mean_cluster_size(theta: float) -> float:
    """Limiting mean size of a cluster of exceedances, ``1 / theta``."""
    if theta == 0:
        raise ValueError("mean cluster size is undefined for theta = 0")
    _check_theta(theta)
    return 1.0 / theta

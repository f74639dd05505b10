"""Bivariate Pareto model for the degrees at the two ends of an edge.

The joint tail of the end-point degrees ``(D1, D2)`` of a uniformly chosen
edge is

    Fbar(d1, d2) = (1 + (d1 - mu)/sigma + (d2 - mu)/sigma) ** -gamma,

for ``d1, d2 >= mu``.  Everything else (edge marginal, node-degree density,
mean degree) follows from it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate, special


@dataclass(frozen=True)
class JointDegreeModel:
    """Joint degree-degree distribution of neighbouring nodes.

    Parameters
    ----------
    mu : float
        Location (smallest degree), ``mu >= 1``.
    sigma : float
        Scale, ``sigma > 0``.
    gamma : float
        Tail index, ``gamma > 0``.
    """

    mu: float = 10.0
    sigma: float = 15.0
    gamma: float = 1.2

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.mu >= 1:
            raise ValueError(f"mu must be >= 1, got {self.mu}")

    def _z(self, d):
        return 1.0 + (np.asarray(d, dtype=float) - self.mu) / self.sigma

    # joint law -----------------------------------------------------------

    def joint_tail(self, d1, d2):
        """``P(D1 >= d1, D2 >= d2)``; arguments below ``mu`` are clipped to it."""
        d1 = np.maximum(d1, self.mu)
        d2 = np.maximum(d2, self.mu)
        return (self._z(d1) + self._z(d2) - 1.0) ** -self.gamma

    def joint_density(self, d1, d2):
        """Density ``f(d1, d2)``; zero outside ``[mu, inf)^2``."""
        g, s = self.gamma, self.sigma
        d1 = np.asarray(d1, dtype=float)
        d2 = np.asarray(d2, dtype=float)
        base = self._z(np.maximum(d1, self.mu)) + self._z(np.maximum(d2, self.mu)) - 1.0
        out = g * (g + 1) / s**2 * base ** (-g - 2)
        return np.where((d1 >= self.mu) & (d2 >= self.mu), out, 0.0)

    def swap_ratio(self, j1, k1, j2, k2):
        """Metropolis ratio ``f(j1,j2) f(k1,k2) / (f(j1,k1) f(j2,k2))``.

        Degrees below ``mu`` (possible after graph simplification) are
        evaluated at ``mu``.
        """
        z = lambda a, b: self._z(max(a, self.mu)) + self._z(max(b, self.mu)) - 1.0
        return (z(j1, k1) * z(j2, k2) / (z(j1, j2) * z(k1, k2))) ** (self.gamma + 2)

    # edge-end marginal -------------------------------------------------

    def edge_tail(self, d):
        """Marginal tail ``Fbar(d)`` of the degree at the end of a random edge."""
        return self._z(np.maximum(d, self.mu)) ** -self.gamma

    def edge_density(self, d):
        d = np.asarray(d, dtype=float)
        out = self.gamma / self.sigma * self._z(np.maximum(d, self.mu)) ** (-self.gamma - 1)
        return np.where(d >= self.mu, out, 0.0)

    def edge_quantile(self, p):
        """Inverse of the edge-end CDF ``F(d) = 1 - Fbar(d)``."""
        p = np.asarray(p, dtype=float)
        return self.mu + self.sigma * ((1.0 - p) ** (-1.0 / self.gamma) - 1.0)

    # node-degree marginal ----------------------------------------------

    @cached_property
    def mean_degree(self) -> float:
        """Mean node degree ``E[D] = (int f(d)/d dd) ** -1``.

        Computed by adaptive quadrature on ``[mu, inf)``; the tolerance is far
        below the 1e-4 relative error the rest of the package relies on.
        """
        val, err = integrate.quad(
            lambda d: self.edge_density(d) / d, self.mu, np.inf,
            epsabs=0.0, epsrel=1e-10, limit=200,
        )
        if not np.isfinite(val) or val <= 0 or err > 1e-6 * val:
            raise ArithmeticError(f"inverse-degree integral did not converge (value={val}, error={err})")
        return 1.0 / val

    def node_density(self, d):
        """Node-degree density ``f_d(d) = f(d) E[D] / d``."""
        d = np.asarray(d, dtype=float)
        return self.edge_density(d) * self.mean_degree / np.where(d > 0, d, 1.0)

    def node_tail(self, d):
        """Node-degree tail ``P(D > d)`` in closed form.

        Substituting ``s = 1/z`` turns ``E[D] * int_d^inf f(x)/x dx`` into a
        Gauss hypergeometric function.
        """
        z = self._z(np.maximum(d, self.mu))
        b = (self.mu - self.sigma) / self.sigma
        g = self.gamma
        tail = (g / self.sigma) * z ** (-g - 1) / (g + 1) * special.hyp2f1(1.0, g + 1.0, g + 2.0, -b / z)
        return np.minimum(self.mean_degree * tail, 1.0)

    def node_cdf(self, d):
        return 1.0 - self.node_tail(d)

    def rw_stationary_density(self, d):
        """Degree density seen by a stationary random walk; equals the edge marginal."""
        return self.edge_density(d)

    def rwj_stationary_density(self, d, alpha):
        """Degree density seen by a stationary walk with jump weight ``alpha``."""
        ed = self.mean_degree
        return (np.asarray(d, dtype=float) + alpha) * self.node_density(d) / (ed + alpha)

    def rwj_stationary_tail(self, d, alpha):
        ed = self.mean_degree
        return (ed * self.edge_tail(d) + alpha * self.node_tail(d)) / (ed + alpha)


def mean_degree(model: JointDegreeModel) -> float:
    """Mean node degree of ``model`` (see :attr:`JointDegreeModel.mean_degree`)."""
    return model.mean_degree

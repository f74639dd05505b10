"""Random-walk crawlers on a :class:`~netei.graph.Graph`.

Three walkers share one engine:

* ``rw``: move to a uniformly chosen neighbour;
* ``pr``: with probability ``c`` do an ``rw`` step, else jump to a
  uniformly chosen node (PageRank);
* ``rwj``: jump with probability ``alpha / (d + alpha)`` where ``d`` is
  the current degree, else do an ``rw`` step.

Every walker draws its random numbers in the same order, so ``pr`` with
``c = 1`` and ``rwj`` with ``alpha = 0`` reproduce ``rw`` exactly for the same
seed.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import Graph
from .model import JointDegreeModel

logger = logging.getLogger(__name__)

KINDS = ("rw", "pr", "rwj")
_CHUNK = 1 << 16


@dataclass(frozen=True)
class SamplerConfig:
    """Walker settings.

    ``burn_in=None`` resolves to 0 for ``rw`` and ``rwj`` (both start from
    their exact stationary law) and to ``10 * N`` for ``pr`` with ``c < 1``.
    """

    kind: str = "rw"
    n: int = 100_000
    c: float = 0.85
    alpha: float = 0.0
    burn_in: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sampler kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 1:
            raise ValueError("trace length must be >= 1")
        if self.burn_in is not None and self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if not 0 <= self.c <= 1:
            raise ValueError(f"damping c must lie in [0, 1], got {self.c}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")

    def resolved_burn_in(self, n_nodes: int) -> int:
        if self.burn_in is not None:
            return self.burn_in
        if self.kind == "pr" and self.c < 1:
            return 10 * n_nodes
        return 0

    def as_dict(self):
        return asdict(self)


@dataclass
class SampleTrace:
    node_ids: np.ndarray
    degrees: np.ndarray
    config: SamplerConfig
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.node_ids)


def _start_weights(g: Graph, cfg: SamplerConfig):
    deg = g.degrees.astype(float)
    if _is_plain_rw(cfg):
        mask = g.largest_component()
        return np.where(mask, deg, 0.0)
    if cfg.kind == "pr":
        return np.ones(g.n_nodes)
    return deg + cfg.alpha


def _is_plain_rw(cfg):
    return cfg.kind == "rw" or (cfg.kind == "pr" and cfg.c == 1) or (cfg.kind == "rwj" and cfg.alpha == 0)


def walk(g: Graph, cfg: SamplerConfig, start: int | None = None) -> SampleTrace:
    """Run the walker described by ``cfg`` on ``g``.

    The start node is drawn from the walker's stationary law where one is
    known in closed form: degree-proportional inside the largest connected
    component for ``rw``, proportional to ``degree + alpha`` for ``rwj`` and
    uniform for ``pr`` (which then relies on burn-in).  Pass ``start`` to
    override.
    """
    if g.n_edges == 0:
        raise ValueError("cannot walk on a graph without edges")
    rng = np.random.default_rng(cfg.seed)
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    deg = g.degrees.tolist()
    n_nodes = g.n_nodes

    u0 = rng.random()
    if start is None:
        w = np.cumsum(_start_weights(g, cfg))
        start = int(np.searchsorted(w, u0 * w[-1], side="right"))
    v = int(start)
    plain = _is_plain_rw(cfg)
    if plain and deg[v] == 0:
        raise ValueError(f"start node {v} is isolated")

    burn = cfg.resolved_burn_in(n_nodes)
    total = burn + cfg.n
    out = np.empty(cfg.n, dtype=np.int64)
    c, alpha, kind = cfg.c, cfg.alpha, cfg.kind

    t = 0
    while t < total:
        size = min(_CHUNK, total - t)
        u_jump = rng.random(size).tolist()
        u_step = rng.random(size).tolist()
        targets = rng.integers(n_nodes, size=size).tolist()
        for k in range(size):
            d = deg[v]
            if plain:
                jump = False
            elif kind == "pr":
                # dangling nodes always jump
                jump = u_jump[k] >= c or d == 0
            else:
                jump = u_jump[k] * (d + alpha) < alpha
            if jump:
                v = targets[k]
            else:
                v = indices[indptr[v] + int(u_step[k] * d)]
            if t + k >= burn:
                out[t + k - burn] = v
        t += size

    trace_deg = g.degrees[out]
    meta = {"start": int(start), "burn_in": burn, "burn_in_defaulted": cfg.burn_in is None}
    return SampleTrace(out, trace_deg, cfg, meta)


def random_walk(g: Graph, cfg: SamplerConfig, start=None) -> SampleTrace:
    if cfg.kind != "rw":
        raise ValueError("random_walk needs kind='rw'")
    return walk(g, cfg, start)


def pagerank_walk(g: Graph, cfg: SamplerConfig, start=None) -> SampleTrace:
    if cfg.kind != "pr":
        raise ValueError("pagerank_walk needs kind='pr'")
    return walk(g, cfg, start)


def rwj_walk(g: Graph, cfg: SamplerConfig, start=None) -> SampleTrace:
    if cfg.kind != "rwj":
        raise ValueError("rwj_walk needs kind='rwj'")
    return walk(g, cfg, start)


def stationary_distribution(g: Graph, cfg: SamplerConfig) -> np.ndarray | None:
    """Closed-form node occupancy for ``rw`` and ``rwj``; ``None`` for ``pr``."""
    if cfg.kind == "pr" and cfg.c < 1:
        return None
    w = _start_weights(g, cfg)
    return w / w.sum()


# degree-space kernels --------------------------------------------------


@dataclass
class KernelHistogram:
    """Empirical transition kernel on a degree-bin grid.

    ``conditional[i, j]`` estimates ``P(d_{t+1} in bin j | d_t in bin i)``.
    """

    edges: np.ndarray
    counts: np.ndarray

    @property
    def conditional(self) -> np.ndarray:
        rows = self.counts.sum(axis=1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(rows > 0, self.counts / rows, 0.0)


def kernel_histogram(trace, bins) -> KernelHistogram:
    """2-D histogram of consecutive degree pairs ``(d_t, d_{t+1})``."""
    d = np.asarray(trace.degrees if isinstance(trace, SampleTrace) else trace)
    if len(d) < 2:
        raise ValueError("need at least two samples")
    counts, edges, _ = np.histogram2d(d[:-1], d[1:], bins=[bins, bins])
    return KernelHistogram(np.asarray(edges), counts)


def rw_kernel_bins(model: JointDegreeModel, d_t: float, edges) -> np.ndarray:
    """Mass the degree-space random-walk kernel puts in each bin.

    Uses ``f_RW(y | d) = E[D] f(d, y) / (d f_d(d)) = f(d, y) / f(d)`` and
    integrates over ``y`` in closed form.
    """
    g, s = model.gamma, model.sigma
    edges = np.maximum(np.asarray(edges, dtype=float), model.mu)
    base = model._z(max(d_t, model.mu)) - 1.0
    partial = (g / s) * (base + model._z(edges)) ** (-g - 1)
    return (partial[:-1] - partial[1:]) / model.edge_density(max(d_t, model.mu))


def node_bins(model: JointDegreeModel, edges) -> np.ndarray:
    """Node-degree mass ``f_d`` in each bin."""
    return -np.diff(model.node_tail(np.asarray(edges, dtype=float)))


def pr_kernel_bins(model, d_t, edges, c):
    return c * rw_kernel_bins(model, d_t, edges) + (1 - c) * node_bins(model, edges)


def rwj_kernel_bins(model, d_t, edges, alpha):
    p_walk = d_t / (d_t + alpha)
    return p_walk * rw_kernel_bins(model, d_t, edges) + (1 - p_walk) * node_bins(model, edges)

"""Random graphs with a prescribed joint degree-degree distribution.

Three stages, run in order by :func:`generate_graph`:

1. draw a node-degree sequence from the model's node-degree density;
2. wire it with the configuration model (uniform stub matching);
3. rewire with degree-preserving double-edge swaps accepted by a
   Metropolis rule on the target joint density.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph
from .model import JointDegreeModel

logger = logging.getLogger(__name__)

# how far out the tabulated node-degree CDF reaches (tail mass left over)
_TABLE_TAIL = 1e-7
_TABLE_POINTS = 4096
_CHUNK = 1 << 16


def _degree_table(model: JointDegreeModel):
    """Log-spaced grid of degrees with the node-degree CDF on it."""
    hi = model.mu * 2.0
    while model.node_tail(hi) > _TABLE_TAIL:
        hi *= 2.0
    grid = np.geomspace(model.mu, hi, _TABLE_POINTS)
    cdf = model.node_cdf(grid)
    cdf[0] = 0.0
    return grid, np.maximum.accumulate(cdf)


def sample_degree_sequence(model: JointDegreeModel, n_nodes: int, seed=None) -> np.ndarray:
    """Draw ``n_nodes`` i.i.d. node degrees from ``model``.

    Inverse-CDF sampling on a tabulated CDF (linear interpolation between
    grid points; beyond the last point the power-law tail is extended
    analytically).  Draws are rounded to the nearest integer, floored at 1,
    and one uniformly chosen entry is incremented if the sum is odd.
    """
    if n_nodes < 2:
        raise ValueError("need at least two nodes")
    rng = np.random.default_rng(seed)
    grid, cdf = _degree_table(model)
    u = rng.random(n_nodes)
    d = np.interp(u, cdf, grid)
    beyond = u > cdf[-1]
    if beyond.any():
        # node tail decays like d^-(gamma+1)
        tail_last = 1.0 - cdf[-1]
        d[beyond] = grid[-1] * ((1.0 - u[beyond]) / tail_last) ** (-1.0 / (model.gamma + 1.0))
    deg = np.maximum(np.rint(d), 1).astype(np.int64)
    if deg.sum() % 2:
        deg[rng.integers(n_nodes)] += 1
    return deg


@dataclass
class ConfigurationReport:
    requested_stubs: int
    deleted_stubs: int
    self_loops: int
    multi_edges: int

    @property
    def deleted_fraction(self) -> float:
        return self.deleted_stubs / self.requested_stubs if self.requested_stubs else 0.0


def configuration_model(degrees, seed=None, *, multigraph=False):
    """Uniform random matching of half-edges.

    Self-loops produced by the matching are deleted; parallel edges are
    collapsed unless ``multigraph`` is true.  The realised degrees can
    therefore fall short of the requested ones.

    Returns
    -------
    graph : Graph
    report : ConfigurationReport
        How many stubs were lost to the clean-up.
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    if (degrees < 0).any():
        raise ValueError("degrees must be non-negative")
    total = int(degrees.sum())
    if total % 2:
        raise ValueError(f"degree sum must be even, got {total}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(len(degrees)), degrees)
    rng.shuffle(stubs)
    g = Graph.from_edges(stubs.reshape(-1, 2), len(degrees), multigraph=multigraph)
    report = ConfigurationReport(
        requested_stubs=total,
        deleted_stubs=total - 2 * g.n_edges,
        self_loops=g.info["self_loops_dropped"],
        multi_edges=g.info["duplicates_dropped"],
    )
    return g, report


@dataclass
class RewireReport:
    steps: int
    accepted: int = 0
    metropolis_rejected: int = 0
    structural_rejected: int = 0

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.steps if self.steps else 0.0

    def as_dict(self):
        return {**asdict(self), "acceptance_rate": self.acceptance_rate}


def metropolis_rewire(g: Graph, model: JointDegreeModel, steps: int, seed=None):
    """Degree-preserving Metropolis rewiring towards ``model``'s joint density.

    Each step picks two distinct edges uniformly at random and orients each
    one by a fair coin, giving ``(v1, w1)`` and ``(v2, w2)`` with end degrees
    ``(j1, k1)`` and ``(j2, k2)``.  The swap to ``(v1, v2), (w1, w2)`` is
    accepted when a uniform draw is at most
    ``min(1, f(j1,j2) f(k1,k2) / (f(j1,k1) f(j2,k2)))``.

    Swaps that would create a self-loop are always rejected.  On a simple
    input graph, swaps creating a parallel edge are rejected as well; a
    multigraph input allows them.  ``steps`` counts proposals, not
    acceptances.

    Returns
    -------
    graph : Graph
        New graph with identical degree sequence.
    report : RewireReport
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    edges = [tuple(e) for e in g.edges().tolist()]
    n_edges = len(edges)
    if n_edges < 2:
        raise ValueError("rewiring needs at least two edges")
    report = RewireReport(steps=steps)
    if steps == 0:
        return g, report

    rng = np.random.default_rng(seed)
    deg = g.degrees.tolist()
    simple = not g.multigraph
    present = set(edges) if simple else None
    ratio = model.swap_ratio

    done = 0
    while done < steps:
        size = min(_CHUNK, steps - done)
        picks = rng.integers(n_edges, size=(size, 2)).tolist()
        flips = rng.integers(4, size=size).tolist()
        ys = rng.random(size).tolist()
        for (a, b), flip, y in zip(picks, flips, ys):
            if a == b:
                report.structural_rejected += 1
                continue
            v1, w1 = edges[a]
            v2, w2 = edges[b]
            if flip & 1:
                v1, w1 = w1, v1
            if flip & 2:
                v2, w2 = w2, v2
            if v1 == v2 or w1 == w2:
                report.structural_rejected += 1
                continue
            e1 = (v1, v2) if v1 < v2 else (v2, v1)
            e2 = (w1, w2) if w1 < w2 else (w2, w1)
            if simple and (e1 in present or e2 in present):
                report.structural_rejected += 1
                continue
            j1, k1, j2, k2 = deg[v1], deg[w1], deg[v2], deg[w2]
            if y <= ratio(j1, k1, j2, k2):
                if simple:
                    present.discard(edges[a])
                    present.discard(edges[b])
                    present.add(e1)
                    present.add(e2)
                edges[a] = e1
                edges[b] = e2
                report.accepted += 1
            else:
                report.metropolis_rejected += 1
        done += size

    out = Graph.from_edges(np.asarray(edges), g.n_nodes, multigraph=g.multigraph, node_ids=g.node_ids)
    return out, report


@dataclass
class GenerationResult:
    graph: Graph
    degree_sequence: np.ndarray
    configuration: ConfigurationReport
    rewiring: RewireReport
    seeds: dict

    def summary(self) -> dict:
        return {
            "seeds": self.seeds,
            "configuration": {**asdict(self.configuration), "deleted_fraction": self.configuration.deleted_fraction},
            "rewiring": self.rewiring.as_dict(),
        }


def stage_seeds(seed, names):
    """Split one seed into independent per-stage integer seeds."""
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {name: int(child.generate_state(1, np.uint64)[0]) for name, child in zip(names, children)}


def generate_graph(model: JointDegreeModel, n_nodes: int, rewire_steps: int, seed=None, *, multigraph=True):
    """Degree sequence, configuration model and Metropolis rewiring in one go.

    ``multigraph=True`` keeps parallel edges through both the matching and
    the rewiring.  At a few thousand nodes a simple graph cannot hold the
    strong hub-to-hub dependence of heavy-tailed models (there are too few
    hub pairs), so parallel edges are the default here.
    """
    seeds = stage_seeds(seed, ["degrees", "configuration", "rewire"])
    degseq = sample_degree_sequence(model, n_nodes, seeds["degrees"])
    g0, conf = configuration_model(degseq, seeds["configuration"], multigraph=multigraph)
    g1, rew = metropolis_rewire(g0, model, rewire_steps, seeds["rewire"])
    logger.info(
        "generated %r: %.2f%% stubs deleted, rewiring acceptance %.3f",
        g1, 100 * conf.deleted_fraction, rew.acceptance_rate,
    )
    return GenerationResult(g1, degseq, conf, rew, seeds)

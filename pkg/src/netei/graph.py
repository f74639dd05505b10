"""Undirected graphs stored as compressed adjacency arrays.

A :class:`Graph` is immutable once built.  Neighbour lists are kept in one
flat ``indices`` array sliced by ``indptr`` (CSR layout), which makes the
per-step cost of a random walk a couple of array lookups.

Simple graphs are the default.  Graphs produced by the correlated-graph
generator may carry parallel edges (never self-loops); those are flagged
with ``multigraph=True`` and every neighbour list then holds one entry per
parallel edge.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

logger = logging.getLogger(__name__)

MULTIGRAPH_HEADER = "# netei: multigraph"
NODES_HEADER = "# netei: nodes"


class EdgeListError(ValueError):
    """Raised when an edge-list file cannot be parsed into a graph."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph in CSR form.

    Parameters
    ----------
    indptr : ndarray of int64, shape (N + 1,)
        Offsets into ``indices``; neighbours of node ``i`` are
        ``indices[indptr[i]:indptr[i + 1]]``, sorted ascending.
    indices : ndarray of int64, shape (2M,)
        Concatenated neighbour lists.
    multigraph : bool
        Whether parallel edges are allowed.
    node_ids : ndarray, optional
        Original node labels (position ``i`` holds the label of node ``i``).
    info : dict
        Free-form provenance, e.g. counts of dropped duplicate edges.
    """

    indptr: np.ndarray
    indices: np.ndarray
    multigraph: bool = False
    node_ids: np.ndarray | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        for arr in (self.indptr, self.indices):
            arr.flags.writeable = False

    @classmethod
    def from_edges(cls, edges, n_nodes=None, *, multigraph=False, node_ids=None, info=None):
        """Build a graph from an ``(M, 2)`` array of node-index pairs.

        Self-loops are always removed.  Duplicate edges are collapsed unless
        ``multigraph`` is true.  The counts of what was removed end up in
        ``graph.info``.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n_nodes is None:
            n_nodes = int(edges.max()) + 1 if len(edges) else 0
        if n_nodes < 1:
            raise ValueError("graph needs at least one node")
        if len(edges) and (edges.min() < 0 or edges.max() >= n_nodes):
            raise ValueError("edge endpoint outside 0..n_nodes-1")

        loops = edges[:, 0] == edges[:, 1]
        n_loops = int(loops.sum())
        edges = np.sort(edges[~loops], axis=1)
        n_dupes = 0
        if not multigraph and len(edges):
            unique = np.unique(edges, axis=0)
            n_dupes = len(edges) - len(unique)
            edges = unique

        src = np.concatenate([edges[:, 0], edges[:, 1]])
        dst = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order]
        counts = np.bincount(src, minlength=n_nodes)
        indptr = np.zeros(n_nodes + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])

        meta = dict(info or {})
        meta.setdefault("self_loops_dropped", n_loops)
        meta.setdefault("duplicates_dropped", n_dupes)
        return cls(indptr, indices.astype(np.int64), multigraph, node_ids, meta)

    @property
    def n_nodes(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edges(self) -> np.ndarray:
        """Edge list as an ``(M, 2)`` array with ``u < v`` in every row.

        Parallel edges appear once per copy.
        """
        src = np.repeat(np.arange(self.n_nodes), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_sparse(self) -> sparse.csr_matrix:
        data = np.ones(len(self.indices))
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n_nodes,) * 2)

    def components(self) -> np.ndarray:
        """Connected-component label of every node."""
        _, labels = csgraph.connected_components(self.to_sparse(), directed=False)
        return labels

    def largest_component(self) -> np.ndarray:
        """Boolean mask of the nodes in the largest connected component."""
        labels = self.components()
        return labels == np.argmax(np.bincount(labels))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.multigraph == other.multigraph
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None

    def __repr__(self):
        kind = "multigraph" if self.multigraph else "graph"
        return f"<Graph ({kind}) N={self.n_nodes} M={self.n_edges}>"


def graph_stats(g: Graph) -> dict:
    """Node/edge counts and degree summary; ``mean_degree`` is ``2M/N``."""
    deg = g.degrees
    return {
        "N": g.n_nodes,
        "M": g.n_edges,
        "mean_degree": 2.0 * g.n_edges / g.n_nodes,
        "max_degree": int(deg.max()) if len(deg) else 0,
    }


def load_edge_list(path: str | PathLike, multigraph: bool | None = None) -> Graph:
    """Read a SNAP-style edge list.

    Each non-comment line holds two whitespace-separated integer node ids;
    lines starting with ``#`` are ignored.  Node ids are compacted to
    ``0..N-1`` in order of their sorted original value, and the original ids
    are kept in ``graph.node_ids``.  Self-loops are dropped and, for simple
    graphs, so are repeated edges; both counts are logged and stored in
    ``graph.info``.

    With ``multigraph=None`` the file decides: graphs written by
    :func:`write_edge_list` with parallel edges carry a header comment that
    switches multigraph mode on.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise EdgeListError(f"cannot read edge list {path}: {exc}") from exc

    pairs = []
    detected_multi = False
    declared_nodes = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if stripped.startswith(MULTIGRAPH_HEADER):
                detected_multi = True
            elif stripped.startswith(NODES_HEADER):
                declared_nodes = int(stripped[len(NODES_HEADER):])
            continue
        parts = stripped.split()
        if len(parts) < 2:
            raise EdgeListError(f"{path}:{lineno}: expected two node ids, got {stripped!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise EdgeListError(f"{path}:{lineno}: non-integer node id in {stripped!r}") from None

    if not pairs:
        raise EdgeListError(f"{path}: no edges found")
    if multigraph is None:
        multigraph = detected_multi

    raw = np.asarray(pairs, dtype=np.int64)
    if declared_nodes is not None and raw.min() >= 0 and raw.max() < declared_nodes:
        # already dense ids; keeps isolated nodes that have no edge line
        node_ids, compact = np.arange(declared_nodes), raw
    else:
        node_ids, compact = np.unique(raw, return_inverse=True)
        compact = compact.reshape(raw.shape)
    g = Graph.from_edges(
        compact, len(node_ids), multigraph=multigraph, node_ids=node_ids,
        info={"source": str(path)},
    )
    if g.n_edges == 0:
        raise EdgeListError(f"{path}: graph is empty after dropping self-loops")
    dropped = g.info["duplicates_dropped"], g.info["self_loops_dropped"]
    if any(dropped):
        logger.info("%s: dropped %d duplicate edges and %d self-loops", path, *dropped)
    return g


def write_edge_list(g: Graph, path: str | PathLike, header: str | None = None) -> None:
    """Write ``g`` as a SNAP-style edge list (original ids if available)."""
    edges = g.edges()
    if g.node_ids is not None:
        edges = g.node_ids[edges]
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    if g.multigraph:
        lines.append(MULTIGRAPH_HEADER)
    if g.node_ids is None or np.array_equal(g.node_ids, np.arange(g.n_nodes)):
        lines.append(f"{NODES_HEADER} {g.n_nodes}")
    lines.append(f"# nodes: {g.n_nodes} edges: {g.n_edges}")
    lines.extend(f"{u} {v}" for u, v in edges.tolist())
    Path(path).write_text("\n".join(lines) + "\n")

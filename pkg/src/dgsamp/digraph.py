"""Directed weighted graphs in CSR form and their derived matrices.

A graph here is always: no self-loops, strictly positive edge weights,
no sink nodes (every node has at least one outgoing edge), and at least
one node reachable from every other node along directed paths.  Those
assumptions make the out-degree matrix invertible and give the
random-walk Laplacian rank n-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.csgraph import breadth_first_order

from .errors import (
    DuplicateEdgeError,
    GraphError,
    NonPositiveWeightError,
    NotCoReachableError,
    SelfLoopError,
    SinkNodeError,
)


@dataclass(frozen=True)
class DiGraph:
    """Directed weighted graph, out-adjacency in CSR.

    ``row_offsets`` has length n+1; the out-edges of node i are
    ``col_indices[row_offsets[i]:row_offsets[i+1]]`` with matching
    ``weights``, sorted by destination.  Immutable after construction.
    """

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for a in (self.row_offsets, self.col_indices, self.weights):
            a.setflags(write=False)

    @property
    def num_edges(self) -> int:
        return len(self.col_indices)

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """Out-adjacency W as a scipy CSR matrix."""
        return sparse.csr_matrix(
            (self.weights, self.col_indices, self.row_offsets), shape=(self.n, self.n)
        )

    @cached_property
    def csc(self) -> sparse.csc_matrix:
        """Column (in-edge) index of W, built once and cached."""
        return self.csr.tocsc()

    @property
    def out_degrees(self) -> np.ndarray:
        """Weighted out-degrees D_ii (sum of outgoing weights)."""
        return np.add.reduceat(self.weights, self.row_offsets[:-1])

    def out_edges(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.row_offsets[i], self.row_offsets[i + 1]
        return self.col_indices[lo:hi], self.weights[lo:hi]


@dataclass(frozen=True)
class NormalizedAdjacency:
    """W with each row divided by its weighted out-degree; rows sum to 1."""

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for a in (self.row_offsets, self.col_indices, self.weights):
            a.setflags(write=False)

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        return sparse.csr_matrix(
            (self.weights, self.col_indices, self.row_offsets), shape=(self.n, self.n)
        )

    @cached_property
    def csc(self) -> sparse.csc_matrix:
        return self.csr.tocsc()

    def row_sums(self) -> np.ndarray:
        return np.add.reduceat(self.weights, self.row_offsets[:-1])


@dataclass(frozen=True)
class RwLaplacian:
    """Random-walk Laplacian I - normalized adjacency, as CSR.

    Unit diagonal, zero row sums, and every Gershgorin disc left-end at 0.
    Keeps a handle on the normalized adjacency it was built from, since
    the disc-alignment pass works on those rows directly.
    """

    matrix: sparse.csr_matrix
    wbar: NormalizedAdjacency = field(repr=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def transpose_csr(self) -> sparse.csr_matrix:
        """L^T in CSR, cached for repeated L^T(Lv) products."""
        return self.matrix.T.tocsr()


@dataclass(frozen=True)
class Diagnostics:
    """Validation report: which assumptions hold and where they fail."""

    n: int
    self_loops: list
    non_positive_weights: list
    duplicate_edges: list
    sink_nodes: list
    co_reachable: bool
    universal_node: int | None

    @property
    def ok(self) -> bool:
        return (
            not self.self_loops
            and not self.non_positive_weights
            and not self.duplicate_edges
            and not self.sink_nodes
            and self.co_reachable
        )


def _co_reachability(n: int, csr: sparse.csr_matrix) -> tuple[bool, int | None]:
    """Find a node reachable from every other node, if any.

    Mother-vertex search on the reverse graph: sweep BFS roots, keep the
    last root that discovered new nodes, then confirm with one reverse
    BFS from that candidate.
    """
    if n == 1:
        return True, 0
    rev = csr.T.tocsr()
    visited = np.zeros(n, dtype=bool)
    candidate = 0
    for u in range(n):
        if not visited[u]:
            reached = breadth_first_order(rev, u, directed=True, return_predecessors=False)
            visited[reached] = True
            candidate = u
    reached = breadth_first_order(rev, candidate, directed=True, return_predecessors=False)
    if len(reached) == n:
        return True, candidate
    return False, None


def _build_csr(n, src, dst, w):
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    row_offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(row_offsets, src + 1, 1)
    np.cumsum(row_offsets, out=row_offsets)
    return row_offsets, dst, w, src


def diagnose(n: int, edges) -> Diagnostics:
    """Check raw edge data against every graph assumption without raising."""
    if n < 1:
        raise GraphError(f"need at least one node, got n={n}")
    edges = list(edges)
    src = np.asarray([e[0] for e in edges], dtype=np.int64)
    dst = np.asarray([e[1] for e in edges], dtype=np.int64)
    w = np.asarray([e[2] for e in edges], dtype=np.float64)
    if len(edges) and (
        src.min() < 0 or src.max() >= n or dst.min() < 0 or dst.max() >= n
    ):
        raise GraphError(f"edge endpoint out of range for n={n}")

    self_loops = [(int(s), int(d)) for s, d in zip(src, dst) if s == d]
    non_pos = [
        (int(s), int(d), float(x)) for s, d, x in zip(src, dst, w) if not x > 0.0
    ]
    seen = {}
    dups = []
    for s, d in zip(src, dst):
        key = (int(s), int(d))
        if key in seen:
            dups.append(key)
        seen[key] = True

    out_deg = np.zeros(n, dtype=np.int64)
    np.add.at(out_deg, src, 1)
    sinks = np.flatnonzero(out_deg == 0).tolist()

    csr = sparse.csr_matrix((np.ones(len(edges)), (src, dst)), shape=(n, n))
    co, universal = _co_reachability(n, csr)
    return Diagnostics(
        n=n,
        self_loops=self_loops,
        non_positive_weights=non_pos,
        duplicate_edges=dups,
        sink_nodes=sinks,
        co_reachable=co,
        universal_node=universal,
    )


def from_edges(n: int, edges) -> DiGraph:
    """Build a validated DiGraph from (src, dst, weight) triples.

    Raises the specific GraphError subtype for the first violated
    assumption; checks run cheapest-first.
    """
    edges = list(edges)
    if n < 1:
        raise GraphError(f"need at least one node, got n={n}")
    src = np.asarray([e[0] for e in edges], dtype=np.int64)
    dst = np.asarray([e[1] for e in edges], dtype=np.int64)
    w = np.asarray([e[2] for e in edges], dtype=np.float64)
    return _from_arrays(n, src, dst, w)


def _from_arrays(n, src, dst, w, pre_validated=False) -> DiGraph:
    if len(src) == 0:
        raise SinkNodeError("graph has no edges, every node is a sink")
    if src.min() < 0 or src.max() >= n or dst.min() < 0 or dst.max() >= n:
        raise GraphError(f"edge endpoint out of range for n={n}")
    if not pre_validated:
        loops = src == dst
        if loops.any():
            i = int(src[loops.argmax()])
            raise SelfLoopError(f"self-loop at node {i}")
        if not (w > 0.0).all():
            bad = int(np.flatnonzero(~(w > 0.0))[0])
            raise NonPositiveWeightError(
                f"edge ({int(src[bad])}, {int(dst[bad])}) has weight {w[bad]!r}"
            )
    row_offsets, cols, weights, srcs = _build_csr(n, src, dst, w)
    if not pre_validated:
        same = (srcs[1:] == srcs[:-1]) & (cols[1:] == cols[:-1])
        if same.any():
            k = int(same.argmax())
            raise DuplicateEdgeError(
                f"duplicate edge ({int(srcs[k])}, {int(cols[k])})"
            )
        out_deg = np.diff(row_offsets)
        if (out_deg == 0).any():
            raise SinkNodeError(
                f"sink nodes (no outgoing edge): {np.flatnonzero(out_deg == 0).tolist()}"
            )
    g = DiGraph(n=n, row_offsets=row_offsets, col_indices=cols, weights=weights)
    if not pre_validated:
        co, _ = _co_reachability(n, g.csr)
        if not co:
            raise NotCoReachableError(
                "no node is reachable from every other node by directed paths"
            )
    return g


def to_edges(g: DiGraph) -> list[tuple[int, int, float]]:
    """Edge list (src, dst, weight) in CSR order; inverse of from_edges."""
    srcs = np.repeat(np.arange(g.n), np.diff(g.row_offsets))
    return [
        (int(s), int(d), float(w))
        for s, d, w in zip(srcs, g.col_indices, g.weights)
    ]


def validate(g: DiGraph) -> Diagnostics:
    """Re-check an existing DiGraph; useful for graphs loaded from files."""
    return diagnose(g.n, to_edges(g))


def normalized_adjacency(g: DiGraph) -> NormalizedAdjacency:
    """Divide each row of W by its out-degree so rows sum to 1."""
    deg = g.out_degrees
    srcs = np.repeat(np.arange(g.n), np.diff(g.row_offsets))
    return NormalizedAdjacency(
        n=g.n,
        row_offsets=g.row_offsets.copy(),
        col_indices=g.col_indices.copy(),
        weights=g.weights / deg[srcs],
    )


def random_walk_laplacian(wbar: NormalizedAdjacency) -> RwLaplacian:
    """I minus the normalized adjacency; unit diagonal, zero row sums."""
    mat = (sparse.identity(wbar.n, format="csr") - wbar.csr).tocsr()
    mat.sort_indices()
    return RwLaplacian(matrix=mat, wbar=wbar)


def gen_er_digraph(n: int, p: float, rng: np.random.Generator) -> DiGraph:
    """Random directed graph with a guaranteed universal reachable node.

    Independent directed edges with probability p among the first n-1
    nodes; the last node receives an in-edge from everyone else and gets
    one out-edge to a uniformly chosen earlier node.  Weights are i.i.d.
    uniform on (0, 1], so none are zero.
    """
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    if not (0.0 <= p < 1.0):
        raise GraphError(f"need 0 <= p < 1, got {p}")
    m = n - 1
    mask = rng.random((m, m)) < p
    np.fill_diagonal(mask, False)
    er_src, er_dst = np.nonzero(mask)
    hub_in_src = np.arange(m)
    hub_out_dst = int(rng.integers(m))
    src = np.concatenate([er_src, hub_in_src, [m]])
    dst = np.concatenate([er_dst, np.full(m, m), [hub_out_dst]])
    w = 1.0 - rng.random(len(src))  # uniform on (0, 1]
    return _from_arrays(n, src, dst, w, pre_validated=True)


# ---------------------------------------------------------------------------
# JSON graph file format: {"n": int, "edges": [[src, dst, weight], ...]}

def dump_graph(g: DiGraph, path) -> None:
    with open(path, "w") as fh:
        json.dump({"n": g.n, "edges": to_edges(g)}, fh)


def load_graph(path) -> DiGraph:
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphError(f"{path}: expected object with 'n' and 'edges'")
    return from_edges(int(obj["n"]), obj["edges"])

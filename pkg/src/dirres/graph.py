"""Weighted digraphs, strong connectivity and the random-walk chain on them."""
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .config import DEFAULT
from .errors import GraphError, NumericalError
from .linalg import lu_solve


@dataclass(frozen=True, eq=False)
class Digraph:
    """Dense weighted digraph with vertices ``0..n-1``.

    ``labels[i]`` is the original identifier of vertex ``i``. ``looped``
    flags vertices that carried a self-loop in the input; the loop itself
    is not part of ``W`` unless the graph was built with ``keep_loops``.
    """

    W: np.ndarray
    labels: tuple
    looped: np.ndarray = field(default=None)
    loops_dropped: int = 0

    def __post_init__(self):
        W = np.array(self.W, dtype=np.float64)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise GraphError(f"adjacency must be square, got {W.shape}")
        if np.any(W < 0) or not np.all(np.isfinite(W)):
            raise GraphError("adjacency entries must be finite and nonnegative")
        W.setflags(write=False)
        object.__setattr__(self, "W", W)
        labels = tuple(self.labels)
        if len(labels) != W.shape[0]:
            raise GraphError("one label per vertex required")
        object.__setattr__(self, "labels", labels)
        looped = np.zeros(W.shape[0], dtype=bool) if self.looped is None else np.array(self.looped, dtype=bool)
        looped.setflags(write=False)
        object.__setattr__(self, "looped", looped)

    @classmethod
    def from_adjacency(cls, W, labels=None):
        W = np.asarray(W, dtype=np.float64)
        if labels is None:
            labels = range(W.shape[0])
        return cls(W, tuple(labels))

    @property
    def n(self) -> int:
        return self.W.shape[0]

    @property
    def m(self) -> int:
        """Number of distinct arcs in ``W``."""
        return int(np.count_nonzero(self.W))

    @property
    def m_with_loops(self) -> int:
        """Arc count including dropped self-loops (the edge-list convention)."""
        return self.m + int(self.looped.sum()) - int(np.count_nonzero(np.diag(self.W) * self.looped))

    @property
    def out_degree(self) -> np.ndarray:
        return self.W.sum(axis=1)

    @property
    def in_degree(self) -> np.ndarray:
        return self.W.sum(axis=0)

    @property
    def volume(self) -> float:
        return float(self.W.sum())

    @property
    def edges(self):
        src, dst = np.nonzero(self.W)
        return [(int(i), int(j), float(self.W[i, j])) for i, j in zip(src, dst)]

    def index_of(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    @property
    def _index(self):
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            self.__dict__["_index_cache"] = idx
        return idx

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.W, self.W.T))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m}, volume={self.volume:g})"


def build_digraph(edge_triples: Sequence[tuple[Hashable, Hashable, float]], keep_loops=False) -> Digraph:
    """Build a digraph from ``(src, dst, weight)`` triples.

    Vertex ids are compacted to ``0..n-1`` in order of first appearance,
    parallel arcs are merged by summing weights and self-loops are dropped
    (and counted in ``loops_dropped``) unless ``keep_loops`` is set.
    """
    edge_triples = list(edge_triples)
    if not edge_triples:
        raise GraphError("empty edge set")
    index = {}
    arcs = []
    for lineno, (u, v, w) in enumerate(edge_triples, start=1):
        w = float(w)
        if not w > 0 or not np.isfinite(w):
            raise GraphError(f"edge {lineno} ({u}, {v}, {w}): weight must be positive")
        for x in (u, v):
            if isinstance(x, (int, np.integer)) and x < 0:
                raise GraphError(f"edge {lineno} ({u}, {v}, {w}): negative vertex id")
            if x not in index:
                index[x] = len(index)
        arcs.append((index[u], index[v], w))
    n = len(index)
    W = np.zeros((n, n))
    looped = np.zeros(n, dtype=bool)
    loops = 0
    for i, j, w in arcs:
        if i == j:
            looped[i] = True
            loops += 1
            if not keep_loops:
                continue
        W[i, j] += w
    return Digraph(W, tuple(index), looped=looped, loops_dropped=0 if keep_loops else loops)


def scc_from_arcs(n, rows, cols) -> list[list[int]]:
    """Strongly connected components of the digraph with arcs ``rows[k] -> cols[k]``.

    Uses scipy's compiled SCC routine (Pearce's variant of Tarjan). Each
    component is returned sorted.
    """
    A = sp.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, comp = csgraph.connected_components(A, directed=True, connection="strong")
    order = np.argsort(comp, kind="stable")
    bounds = np.cumsum(np.bincount(comp, minlength=count))[:-1]
    return [part.tolist() for part in np.split(order, bounds)]


def strongly_connected_components(g: Digraph) -> list[list[int]]:
    rows, cols = np.nonzero(g.W)
    return scc_from_arcs(g.n, rows, cols)


def is_strongly_connected(g: Digraph) -> bool:
    return len(strongly_connected_components(g)) == 1


def induced_subgraph(g: Digraph, vertices) -> Digraph:
    vertices = np.asarray(sorted(vertices), dtype=int)
    W = g.W[np.ix_(vertices, vertices)]
    labels = tuple(g.labels[i] for i in vertices)
    looped = g.looped[vertices]
    return Digraph(W, labels, looped=looped, loops_dropped=int(looped.sum()) if g.loops_dropped else 0)


def _label_key(label):
    # labels may mix ints and strings; order ints numerically first
    return (0, label, "") if isinstance(label, (int, np.integer)) else (1, 0, str(label))


def largest_scc(g: Digraph) -> tuple[Digraph, dict]:
    """Induced subgraph on the largest strongly connected component.

    Ties go to the component containing the smallest original label.
    Returns the subgraph and the old-index -> new-index map.
    """
    comps = strongly_connected_components(g)
    best = min(comps, key=lambda c: (-len(c), min(_label_key(g.labels[i]) for i in c)))
    relabel = {old: new for new, old in enumerate(best)}
    if len(best) == g.n:
        return g, relabel
    return induced_subgraph(g, best), relabel


def transition_matrix(g: Digraph) -> np.ndarray:
    """Row-stochastic ``P = D^{-1} W``."""
    d = g.out_degree
    dead = np.flatnonzero(d <= 0)
    if dead.size:
        raise GraphError(f"vertex {g.labels[dead[0]]!r} has zero out-degree")
    return g.W / d[:, None]


@dataclass(frozen=True, eq=False)
class StationaryDistribution:
    pi: np.ndarray

    def __post_init__(self):
        pi = np.array(self.pi, dtype=np.float64)
        pi.setflags(write=False)
        object.__setattr__(self, "pi", pi)

    def __len__(self):
        return self.pi.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.pi if dtype is None else self.pi.astype(dtype)


def stationary_distribution(g: Digraph, tol=DEFAULT) -> StationaryDistribution:
    """Solve ``pi^T P = pi^T, sum(pi) = 1`` directly.

    The last equation of ``(P^T - I) x = 0`` is replaced by the
    normalisation row; this works for periodic chains where power
    iteration does not converge.
    """
    if g.n < 2:
        raise GraphError("stationary distribution needs at least two vertices")
    if not is_strongly_connected(g):
        raise GraphError("graph is not strongly connected")
    P = transition_matrix(g)
    n = g.n
    A = P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    pi = lu_solve(A, b, tol=tol)
    if pi.min() <= 0:
        raise NumericalError(f"stationary solve produced nonpositive entry {pi.min():.3e}")
    pi = pi / pi.sum()
    resid = np.abs(pi @ P - pi).max()
    if resid > 1e-10:
        raise NumericalError(f"stationary residual {resid:.3e} exceeds 1e-10")
    return StationaryDistribution(pi)

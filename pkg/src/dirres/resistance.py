"""Resistance distances on strongly connected digraphs.

Everything is expressed through the digraph Laplacian

    L = d_G * Pi (I - P),

with ``d_G`` the volume, ``Pi = diag(pi)`` and ``P`` the transition
matrix. ``L`` has zero row and column sums and reduces to ``D - W`` for
symmetric weights.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT
from .errors import GraphError, NumericalError
from .graph import Digraph, StationaryDistribution, stationary_distribution, transition_matrix
from .linalg import inverse, pseudoinverse_laplacian, submatrix_removing


def laplacian(g: Digraph, pi=None, tol=DEFAULT) -> np.ndarray:
    if pi is None:
        pi = stationary_distribution(g, tol=tol)
    pi = np.asarray(pi)
    P = transition_matrix(g)
    return g.volume * pi[:, None] * (np.eye(g.n) - P)


@dataclass(frozen=True, eq=False)
class ResistanceEngine:
    """Precomputed ``L`` and ``L^+`` for O(1) pairwise resistance queries.

    Build with :func:`build_engine`; O(n^3) once, then every pairwise or
    vertex query is a handful of lookups.
    """

    graph: Digraph
    volume: float
    pi: StationaryDistribution
    L: np.ndarray
    Ldag: np.ndarray
    tol: object = DEFAULT

    @property
    def n(self):
        return self.graph.n

    def _check(self, *vertices):
        for v in vertices:
            if not 0 <= v < self.n:
                raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")

    @cached_property
    def _diag(self):
        d = np.diag(self.Ldag).copy()
        d.setflags(write=False)
        return d

    @cached_property
    def trace_ldag(self) -> float:
        return float(self._diag.sum())

    def resistance(self, i, j) -> float:
        """Omega(i, j) = L+_ii + L+_jj - L+_ij - L+_ji."""
        self._check(i, j)
        if i == j:
            return 0.0
        A = self.Ldag
        return float(A[i, i] + A[j, j] - A[i, j] - A[j, i])

    @cached_property
    def resistance_matrix(self) -> np.ndarray:
        """All pairwise resistances, symmetric with a zero diagonal."""
        d = self._diag
        R = d[:, None] + d[None, :] - self.Ldag - self.Ldag.T
        np.fill_diagonal(R, 0.0)
        R.setflags(write=False)
        return R

    def vertex_resistance(self, i) -> float:
        """Omega(i) = sum_j Omega(i, j) = n L+_ii + tr(L+)."""
        self._check(i)
        return float(self.n * self._diag[i] + self.trace_ldag)

    def vertex_resistances(self) -> np.ndarray:
        return self.n * self._diag + self.trace_ldag

    def kirchhoff_index(self) -> float:
        """Sum of Omega over unordered pairs, as n tr(L+)."""
        return self.n * self.trace_ldag

    def kirchhoff_index_pairwise(self) -> float:
        return math.fsum(self.resistance_matrix[np.triu_indices(self.n, 1)])

    def multiplicative_kirchhoff_index(self) -> float:
        """d_G^2 sum_{i<j} pi_i pi_j Omega(i, j)."""
        pi = self.pi.pi
        terms = np.outer(pi, pi) * self.resistance_matrix
        return self.volume**2 * math.fsum(terms[np.triu_indices(self.n, 1)])

    def normalized_laplacian(self) -> np.ndarray:
        """Pi^{1/2} (I - P) Pi^{-1/2}."""
        s = np.sqrt(self.pi.pi)
        P = transition_matrix(self.graph)
        return s[:, None] * (np.eye(self.n) - P) / s[None, :]

    def kemeny_constant_trace(self) -> float:
        """tr of the pseudoinverse of the normalized Laplacian.

        Its left and right null spaces are both spanned by the unit vector
        ``s = sqrt(pi)``, so ``(Lt + s s^T)^{-1} = Lt^+ + s s^T`` and the
        trace drops by exactly one.
        """
        s = np.sqrt(self.pi.pi)
        M = inverse(self.normalized_laplacian() + np.outer(s, s), tol=self.tol)
        return float(np.trace(M)) - 1.0

    def kemeny_constant(self, check=True) -> float:
        """Kemeny's constant as R*/d_G, optionally cross-checked by trace."""
        K = self.multiplicative_kirchhoff_index() / self.volume
        if check:
            K2 = self.kemeny_constant_trace()
            if abs(K - K2) > 1e-7 * max(1.0, abs(K)):
                raise NumericalError(f"Kemeny routes disagree: {K!r} vs {K2!r}")
        return K

    def group_resistance_point(self, i, X) -> float:
        return group_resistance_point(self, i, X)

    def group_resistance(self, X) -> float:
        return group_resistance(self, X)


def build_engine(g: Digraph, tol=DEFAULT) -> ResistanceEngine:
    pi = stationary_distribution(g, tol=tol)
    L = laplacian(g, pi)
    L.setflags(write=False)
    Ldag = pseudoinverse_laplacian(L, tol=tol)
    Ldag.setflags(write=False)
    return ResistanceEngine(g, g.volume, pi, L, Ldag, tol)


def _laplacian_of(source, tol=DEFAULT):
    if isinstance(source, ResistanceEngine):
        return source.L
    if isinstance(source, Digraph):
        return laplacian(source, tol=tol)
    raise TypeError(f"expected Digraph or ResistanceEngine, got {type(source).__name__}")


def _vertex_set(X, n):
    X = sorted(set(int(x) for x in X))
    if not X:
        raise GraphError("vertex set must be nonempty")
    if len(X) >= n:
        raise GraphError("vertex set must be a strict subset of the vertices")
    for x in X:
        if not 0 <= x < n:
            raise IndexError(f"vertex {x} out of range 0..{n - 1}")
    return X


def _removed_inverse(L, X, tol):
    sub, kept = submatrix_removing(L, X)
    return inverse(sub, tol=tol), kept


def removed_inverse(source, X, tol=DEFAULT):
    """``(L_{\\X})^{-1}`` and the surviving original indices."""
    L = _laplacian_of(source, tol)
    return _removed_inverse(L, _vertex_set(X, L.shape[0]), tol)


def resistance_via_submatrix(source, i, j, tol=DEFAULT) -> float:
    """Omega(i, j) as the j-th diagonal entry of ``(L_{\\i})^{-1}``."""
    if i == j:
        raise ValueError("submatrix route needs i != j")
    Minv, kept = removed_inverse(source, [i], tol)
    r = int(np.searchsorted(kept, j))
    if r >= kept.size or kept[r] != j:
        raise IndexError(f"vertex {j} out of range")
    return float(Minv[r, r])


def group_resistance_point(source, i, X, tol=DEFAULT) -> float:
    """Omega(i, X) = ((L_{\\X})^{-1})_{ii}; zero when ``i`` is in ``X``."""
    L = _laplacian_of(source, tol)
    Xs = _vertex_set(X, L.shape[0])
    if not 0 <= i < L.shape[0]:
        raise IndexError(f"vertex {i} out of range")
    if i in Xs:
        return 0.0
    Minv, kept = _removed_inverse(L, Xs, tol)
    r = int(np.searchsorted(kept, i))
    return float(Minv[r, r])


def group_resistance(source, X, tol=DEFAULT) -> float:
    """Omega(X) = tr((L_{\\X})^{-1})."""
    Minv, _ = removed_inverse(source, X, tol)
    return float(np.trace(Minv))

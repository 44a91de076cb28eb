"""Resistance distance minimisation: choose k vertices minimising Omega(X).

``greedy_rdm`` is the O(n^3 + k n^2) greedy selector that keeps
``(L_{\\X})^{-1}`` current through rank-one downdates; ``brute_force_rdm``
enumerates every k-subset and serves as the exact oracle.
"""
import itertools
import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .config import BRUTE_FORCE_CAP, DEFAULT
from .errors import BudgetExceededError, NumericalError
from .graph import Digraph, _label_key
from .linalg import rank_one_downdate
from .resistance import ResistanceEngine, build_engine, group_resistance

log = logging.getLogger(__name__)

METHODS = ("greedy", "exact", "random", "top-degree", "min-res")


@dataclass
class SelectionResult:
    chosen: list
    objective: float
    method: str
    step_trace: list = field(default_factory=list)
    wall_time: float = 0.0
    indices: list = field(default_factory=list)

    @property
    def k(self):
        return len(self.chosen)


def _pick(values, labels, candidates, best="min", tol=DEFAULT):
    """Index among ``candidates`` optimising ``values``, ties to smallest label.

    Values within ``tol.tie`` (relative) of the optimum count as tied.
    """
    vals = np.asarray(values, dtype=np.float64)
    target = vals.min() if best == "min" else vals.max()
    slack = tol.tie * max(1.0, abs(target))
    if best == "min":
        tied = np.flatnonzero(vals <= target + slack)
    else:
        tied = np.flatnonzero(vals >= target - slack)
    return min(tied, key=lambda r: _label_key(labels[candidates[r]]))


def _check_k(g, k):
    if not isinstance(k, (int, np.integer)) or not 1 <= k < g.n:
        raise ValueError(f"k must be an integer in [1, {g.n - 1}], got {k!r}")


def marginal_gain(LXinv, v, tol=DEFAULT) -> float:
    """Omega(Z) - Omega(Z + v) from ``(L_{\\Z})^{-1}``.

    ``v`` indexes the rows of ``LXinv``. The numerator ``(A^2)_{vv}`` is
    the product of row ``v`` and column ``v`` of ``A``.
    """
    A = np.asarray(LXinv)
    denom = A[v, v]
    if denom <= tol.breakdown:
        raise NumericalError(f"marginal gain denominator {denom:.3e} vanishes")
    return float(A[v, :] @ A[:, v] / denom)


def marginal_gains(LXinv, tol=DEFAULT) -> np.ndarray:
    """``marginal_gain`` for every row at once, O(m^2)."""
    A = np.asarray(LXinv)
    denom = np.diag(A)
    if denom.min() <= tol.breakdown:
        raise NumericalError(f"marginal gain denominator {denom.min():.3e} vanishes")
    return np.einsum("ij,ji->i", A, A) / denom


def removed_inverse_from_pinv(Ldag, k):
    """``(L_{\\k})^{-1}`` from ``L^+`` in O(n^2).

    Entry (i, j) equals ``L+_kk + L+_ij - L+_ik - L+_kj`` for ``i, j != k``.
    """
    out = np.delete(np.delete(Ldag, k, axis=0), k, axis=1)
    out -= np.delete(Ldag[:, k], k)[:, None]
    out -= np.delete(Ldag[k, :], k)[None, :]
    out += Ldag[k, k]
    return out


def greedy_rdm(g: Digraph, k, engine: ResistanceEngine = None, tol=DEFAULT, history=None) -> SelectionResult:
    """Greedy k-vertex selection with rank-one inverse downdates.

    The first vertex minimises ``Omega(v) = n L+_vv + tr(L+)``; each
    further vertex maximises the marginal gain. If ``history`` is a list,
    the maintained inverse and its surviving indices are appended after
    every step (used to audit the update path).
    """
    _check_k(g, k)
    t0 = time.perf_counter()
    if engine is None:
        engine = build_engine(g, tol=tol)
    labels = g.labels
    n = g.n

    omegas = engine.vertex_resistances()
    all_idx = np.arange(n)
    first = int(_pick(omegas, labels, all_idx, "min", tol))
    chosen = [first]
    objective = float(omegas[first])
    trace = [(labels[first], objective)]
    Ainv = removed_inverse_from_pinv(engine.Ldag, first)
    kept = np.delete(all_idx, first)
    if history is not None:
        history.append((Ainv.copy(), kept.copy()))

    for _ in range(1, k):
        gains = marginal_gains(Ainv, tol)
        r = int(_pick(gains, labels, kept, "max", tol))
        v = int(kept[r])
        objective -= float(gains[r])
        Ainv = rank_one_downdate(Ainv, r, tol)
        kept = np.delete(kept, r)
        chosen.append(v)
        trace.append((labels[v], objective))
        if history is not None:
            history.append((Ainv.copy(), kept.copy()))

    direct = group_resistance(engine, chosen, tol)
    drift = abs(direct - objective)
    if drift > tol.algebraic * max(1.0, abs(direct)):
        log.warning("greedy downdate drift %.3e over %d steps", drift, k)
    return SelectionResult(
        chosen=[labels[v] for v in chosen],
        objective=direct,
        method="greedy",
        step_trace=trace,
        wall_time=time.perf_counter() - t0,
        indices=chosen,
    )


def _subset_traces(L, subsets, batch=4096):
    """tr((L_{\\X})^{-1}) for each X in ``subsets`` by batched direct inversion."""
    n = L.shape[0]
    out = []
    for start in range(0, len(subsets), batch):
        chunk = subsets[start:start + batch]
        mask = np.ones((len(chunk), n), dtype=bool)
        rows = np.repeat(np.arange(len(chunk)), len(chunk[0]))
        mask[rows, np.asarray(chunk).ravel()] = False
        keep = np.nonzero(mask)[1].reshape(len(chunk), -1)
        subs = L[keep[:, :, None], keep[:, None, :]]
        try:
            inv = np.linalg.inv(subs)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"singular submatrix during enumeration: {exc}") from exc
        out.append(np.trace(inv, axis1=1, axis2=2))
    return np.concatenate(out)


def brute_force_rdm(g: Digraph, k, engine: ResistanceEngine = None, cap=BRUTE_FORCE_CAP, tol=DEFAULT) -> SelectionResult:
    """Exact optimum by enumerating all k-subsets in lexicographic order.

    Ties (within ``tol.tie``) resolve to the lexicographically smallest
    label set.
    """
    _check_k(g, k)
    required = math.comb(g.n, k)
    if required > cap:
        raise BudgetExceededError(required, cap)
    t0 = time.perf_counter()
    if engine is None:
        engine = build_engine(g, tol=tol)
    order = sorted(range(g.n), key=lambda i: _label_key(g.labels[i]))
    subsets = list(itertools.combinations(order, k))
    values = _subset_traces(engine.L, subsets)
    target = values.min()
    slack = tol.tie * max(1.0, abs(target))
    best = int(np.flatnonzero(values <= target + slack)[0])
    chosen = list(subsets[best])
    return SelectionResult(
        chosen=[g.labels[v] for v in chosen],
        objective=float(values[best]),
        method="exact",
        step_trace=[],
        wall_time=time.perf_counter() - t0,
        indices=chosen,
    )


def _ranked(g, k, scores, method, engine, tol, t0):
    remaining = list(range(g.n))
    chosen = []
    for _ in range(k):
        r = _pick(scores[remaining], g.labels, remaining, "min", tol)
        chosen.append(remaining.pop(r))
    return SelectionResult(
        chosen=[g.labels[v] for v in chosen],
        objective=group_resistance(engine if engine is not None else g, chosen, tol),
        method=method,
        wall_time=time.perf_counter() - t0,
        indices=chosen,
    )


def baseline_random(g: Digraph, k, seed, engine=None, tol=DEFAULT) -> SelectionResult:
    """k vertices uniformly without replacement (Philox stream keyed by ``seed``)."""
    _check_k(g, k)
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(seed))
    chosen = [int(v) for v in rng.choice(g.n, size=k, replace=False)]
    return SelectionResult(
        chosen=[g.labels[v] for v in chosen],
        objective=group_resistance(engine if engine is not None else g, chosen, tol),
        method="random",
        wall_time=time.perf_counter() - t0,
        indices=chosen,
    )


def baseline_top_degree(g: Digraph, k, engine=None, tol=DEFAULT) -> SelectionResult:
    """k vertices of highest (weighted) out-degree."""
    _check_k(g, k)
    t0 = time.perf_counter()
    return _ranked(g, k, -g.out_degree, "top-degree", engine, tol, t0)


def baseline_min_res(g: Digraph, k, engine=None, tol=DEFAULT) -> SelectionResult:
    """k vertices of smallest vertex resistance Omega(i)."""
    _check_k(g, k)
    t0 = time.perf_counter()
    if engine is None:
        engine = build_engine(g, tol=tol)
    return _ranked(g, k, engine.vertex_resistances(), "min-res", engine, tol, t0)


def approximation_bound_gap(omega_best_single, omega_greedy, omega_opt, k):
    """Slack in the greedy guarantee; nonnegative when the bound holds.

    Returns ``(Omega(v*) - Omega(greedy)) - c_k (Omega(v*) - Omega(opt))``
    with ``c_k = 1 - k / ((k - 1) e)``.
    """
    if k < 2:
        raise ValueError("bound is stated for k >= 2")
    c = 1.0 - k / ((k - 1) * math.e)
    return (omega_best_single - omega_greedy) - c * (omega_best_single - omega_opt)

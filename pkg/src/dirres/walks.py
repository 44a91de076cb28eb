"""Monte Carlo random walks: an independent oracle for the probabilistic identities.

Nothing here touches a Laplacian. Walks step by inverse-CDF sampling over
the cumulative rows of ``P``; the whole batch of walkers advances in
lock-step, so an estimate is fully determined by ``(seed, walks)``.
"""
from dataclasses import dataclass

import numpy as np

from .config import WALK_STEP_CAP
from .errors import GraphError
from .graph import Digraph, stationary_distribution, transition_matrix

QUANTITIES = ("P_es(i,j)", "P_es(i,X)", "H(i,j)", "C(i,j)", "C(i,X)", "H(i,X,j)", "return(i)", "phi", "K")


@dataclass(frozen=True)
class WalkEstimate:
    mean: float
    std_error: float
    samples: int
    quantity: str
    valid: bool = True

    def within(self, value, k=3.0):
        """True if ``value`` lies within ``k`` standard errors of the mean."""
        return abs(self.mean - value) <= k * self.std_error

    def __str__(self):
        flag = "" if self.valid else " (INVALID: step cap hit)"
        return f"{self.quantity} = {self.mean:.6g} +- {self.std_error:.2g} [{self.samples} walks]{flag}"


def _summarise(values, quantity, valid=True):
    values = np.asarray(values, dtype=np.float64)
    count = values.size
    if count == 0:
        return WalkEstimate(float("nan"), float("nan"), 0, quantity, False)
    sd = values.std(ddof=1) if count > 1 else 0.0
    return WalkEstimate(float(values.mean()), float(sd / np.sqrt(count)), int(count), quantity, valid)


class _Sampler:
    """Flattened cumulative rows of P with row ``r`` shifted into ``(r, r+1]``.

    A uniform ``u`` drawn at vertex ``r`` maps to the next vertex through a
    single ``searchsorted`` on ``r + u``.
    """

    def __init__(self, g: Digraph):
        P = transition_matrix(g)
        src, dst = np.nonzero(P)
        cum = np.empty(src.size)
        ends = np.flatnonzero(np.r_[src[1:] != src[:-1], True])
        start = 0
        for end in ends:
            row = src[start]
            c = np.cumsum(P[row, dst[start:end + 1]])
            c[-1] = 1.0
            cum[start:end + 1] = row + c
            start = end + 1
        self.cum = cum
        self.dst = dst
        self.n = g.n

    def step(self, cur, u):
        return self.dst[np.searchsorted(self.cum, cur + u, side="right")]


def _mask(n, vertices):
    m = np.zeros(n, dtype=bool)
    m[list(vertices)] = True
    return m


def _run(sampler, start, walks, seed, touch, stop, abort=None, step_cap=WALK_STEP_CAP):
    """Advance ``walks`` walkers from ``start``.

    A walker enters phase 1 on arriving (time >= 1) at a ``touch`` vertex,
    finishes successfully on arriving at a ``stop`` vertex while in phase
    1, and finishes unsuccessfully on arriving at an ``abort`` vertex while
    still in phase 0. Returns per-walk step counts, success flags and a
    validity flag (False if the total step budget ran out).
    """
    rng = np.random.Generator(np.random.Philox(int(seed)))
    if abort is None:
        abort = np.zeros(sampler.n, dtype=bool)
    steps = np.zeros(walks, dtype=np.int64)
    success = np.zeros(walks, dtype=bool)
    finished = np.zeros(walks, dtype=bool)
    alive = np.arange(walks)
    cur = np.full(walks, start, dtype=np.int64)
    phase = np.zeros(walks, dtype=bool)
    total = 0
    while alive.size:
        if total + alive.size > step_cap:
            return steps[finished], success[finished], False
        total += alive.size
        cur = sampler.step(cur, rng.random(alive.size))
        steps[alive] += 1
        phase |= touch[cur]
        good = phase & stop[cur]
        bad = ~phase & abort[cur]
        done = good | bad
        if done.any():
            idx = alive[done]
            success[idx] = good[done]
            finished[idx] = True
            keep = ~done
            alive, cur, phase = alive[keep], cur[keep], phase[keep]
    return steps, success, True


def _prepare(g, walks):
    if walks < 1:
        raise ValueError("need at least one walk")
    return _Sampler(g)


def _as_set(target):
    if isinstance(target, (int, np.integer)):
        return [int(target)], False
    s = sorted(set(int(t) for t in target))
    if not s:
        raise GraphError("target set must be nonempty")
    return s, True


def estimate_escape_probability(g: Digraph, i, target, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    """Fraction of walks from ``i`` that reach ``target`` before returning to ``i``."""
    T, is_set = _as_set(target)
    if i in T:
        raise GraphError("start vertex must not belong to the target")
    sampler = _prepare(g, walks)
    tm = _mask(g.n, T)
    _, success, ok = _run(sampler, i, walks, seed, touch=tm, stop=tm, abort=_mask(g.n, [i]), step_cap=step_cap)
    return _summarise(success, "P_es(i,X)" if is_set else "P_es(i,j)", ok)


def estimate_hitting_time(g: Digraph, i, j, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    """Mean number of steps from ``i`` to the first visit of ``j``."""
    if i == j:
        raise ValueError("hitting time needs i != j")
    sampler = _prepare(g, walks)
    jm = _mask(g.n, [j])
    steps, _, ok = _run(sampler, i, walks, seed, touch=jm, stop=jm, step_cap=step_cap)
    return _summarise(steps, "H(i,j)", ok)


def estimate_commute_time(g: Digraph, i, target, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    """Mean steps from ``i`` to ``target`` (vertex or set) and back to ``i``."""
    T, is_set = _as_set(target)
    if i in T:
        raise GraphError("start vertex must not belong to the target")
    sampler = _prepare(g, walks)
    steps, _, ok = _run(sampler, i, walks, seed, touch=_mask(g.n, T), stop=_mask(g.n, [i]), step_cap=step_cap)
    return _summarise(steps, "C(i,X)" if is_set else "C(i,j)", ok)


def estimate_detour_time(g: Digraph, i, X, j, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    """Mean steps of a walk from ``i`` that stops at ``j`` only after touching ``X``.

    Visits at time 0 do not count, so ``i == j`` with ``X = {j}`` gives
    the first-return time.
    """
    Xs, _ = _as_set(X)
    sampler = _prepare(g, walks)
    steps, _, ok = _run(sampler, i, walks, seed, touch=_mask(g.n, Xs), stop=_mask(g.n, [j]), step_cap=step_cap)
    return _summarise(steps, "H(i,X,j)", ok)


def estimate_return_time(g: Digraph, i, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    est = estimate_detour_time(g, i, [i], i, walks, seed, step_cap)
    return WalkEstimate(est.mean, est.std_error, est.samples, "return(i)", est.valid)


def estimate_voltage(g: Digraph, a, b, k, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    """phi_{a,b}(k): probability that a walk from ``k`` reaches ``a`` before ``b``.

    ``b`` may be a vertex or a set. Being at ``k`` at time 0 counts.
    """
    B, _ = _as_set(b)
    if a in B:
        raise GraphError("a must not belong to b")
    if k == a:
        return WalkEstimate(1.0, 0.0, walks, "phi")
    if k in B:
        return WalkEstimate(0.0, 0.0, walks, "phi")
    sampler = _prepare(g, walks)
    am = _mask(g.n, [a])
    _, success, ok = _run(sampler, k, walks, seed, touch=am, stop=am, abort=_mask(g.n, B), step_cap=step_cap)
    return _summarise(success, "phi", ok)


def estimate_kemeny(g: Digraph, i, walks, seed, step_cap=WALK_STEP_CAP) -> WalkEstimate:
    """sum_j pi_j H(i, j) with the target drawn from the stationary law per walk."""
    pi = stationary_distribution(g).pi
    sampler = _prepare(g, walks)
    rng = np.random.Generator(np.random.Philox(int(seed)))
    counts = rng.multinomial(walks, pi / pi.sum())
    samples = []
    ok = True
    for j in np.flatnonzero(counts):
        c = int(counts[j])
        if j == i:
            samples.append(np.zeros(c))
            continue
        jm = _mask(g.n, [j])
        sub_seed = int(rng.integers(2**63))
        steps, _, good = _run(sampler, i, c, sub_seed, touch=jm, stop=jm, step_cap=step_cap)
        ok &= good
        samples.append(steps)
    return _summarise(np.concatenate(samples), "K", ok)

"""Seeded directed random graph models: small-world, Erdos-Renyi, scale-free.

All randomness comes from numpy's Philox4x64 counter-based bit generator
keyed by the integer seed, so a given ``GenSpec`` yields the same edge
list on every platform numpy supports.
"""
import logging
from dataclasses import asdict, dataclass

import numpy as np

from .errors import GeneratorError
from .graph import Digraph

log = logging.getLogger(__name__)

MODELS = ("ws", "er", "sf")


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    seed: int = 0
    K: int = 10
    p: float = 0.5
    b: float = 1.0
    m: int = 300
    a_out: float = 0.5
    a_in: float = 0.5

    def __post_init__(self):
        if self.model not in MODELS:
            raise GeneratorError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.n < 3:
            raise GeneratorError("n must be at least 3")
        if not 0 <= self.p <= 1 or not 0 <= self.b <= 1:
            raise GeneratorError("probabilities p and b must lie in [0, 1]")
        if not (0 <= self.a_out < 1 and 0 <= self.a_in < 1):
            raise GeneratorError("scale-free exponents must lie in [0, 1)")

    @property
    def label(self):
        if self.model == "ws":
            return f"ws(n={self.n},K={self.K},p={self.p:g},b={self.b:g})"
        if self.model == "er":
            return f"er(n={self.n},p={self.p:g})"
        return f"sf(n={self.n},m={self.m},a_out={self.a_out:g},a_in={self.a_in:g})"

    def with_seed(self, seed):
        d = asdict(self)
        d["seed"] = int(seed)
        return GenSpec(**d)

    def generate(self) -> Digraph:
        if self.model == "ws":
            return gen_directed_ws(self.n, self.K, self.p, self.b, self.seed)
        if self.model == "er":
            return gen_directed_er(self.n, self.p, self.seed)
        return gen_directed_sf(self.n, self.m, self.a_out, self.a_in, self.seed)


def _from_arcs(n, arcs):
    W = np.zeros((n, n))
    for i, j in arcs:
        W[i, j] = 1.0
    return Digraph.from_adjacency(W)


def gen_directed_ws(n, K, p, b, seed) -> Digraph:
    """Directed Watts-Strogatz graph with ``n * K`` unit-weight arcs.

    Starts from the ring lattice where every vertex points to its K
    counterclockwise neighbours. Lap by lap (nearest neighbours first) and
    vertex by vertex, each lattice edge is rewired with probability ``p``
    to a uniformly drawn endpoint, then oriented out of the current vertex
    with probability ``b`` and into it otherwise. Targets producing a
    self-loop or an existing arc are redrawn, at most ``100 n`` times.
    """
    if not 1 <= K < n / 2:
        raise GeneratorError(f"need 1 <= K < n/2, got K={K}, n={n}")
    if not 0 <= p <= 1 or not 0 <= b <= 1:
        raise GeneratorError("p and b must lie in [0, 1]")
    rng = make_rng(seed)
    arcs = {(i, (i + lap) % n) for lap in range(1, K + 1) for i in range(n)}
    budget = 100 * n
    for lap in range(1, K + 1):
        for i in range(n):
            j = (i + lap) % n
            rewire = rng.random() < p
            outward = rng.random() < b
            arcs.discard((i, j))
            if not rewire:
                arc = (i, j) if outward else (j, i)
                if arc not in arcs:
                    arcs.add(arc)
                    continue
                # reversed lattice edge collides with an existing arc: redraw
            for _ in range(budget):
                t = int(rng.integers(n))
                arc = (i, t) if outward else (t, i)
                if t != i and arc not in arcs:
                    break
            else:
                raise GeneratorError(f"no admissible rewiring target for vertex {i} after {budget} draws")
            arcs.add(arc)
    return _from_arcs(n, sorted(arcs))


def gen_directed_er(n, p, seed) -> Digraph:
    """Each ordered pair ``(i, j)``, ``i != j``, becomes an arc with probability p."""
    if not 0 < p <= 1:
        raise GeneratorError(f"p must lie in (0, 1], got {p}")
    rng = make_rng(seed)
    A = rng.random((n, n)) < p
    np.fill_diagonal(A, False)
    return Digraph.from_adjacency(A.astype(np.float64))


def gen_directed_sf(n, m, a_out, a_in, seed) -> Digraph:
    """Two-weight scale-free digraph from ``m`` endpoint draws.

    Vertex ``i`` (1-based) is a source with probability proportional to
    ``i**-a_out`` and a target proportionally to ``i**-a_in``. Draws with
    equal endpoints are redrawn; repeated arcs collapse to a single
    unit-weight arc, so the final arc count is at most ``m``.
    """
    if m < 1:
        raise GeneratorError("m must be positive")
    if not (0 <= a_out < 1 and 0 <= a_in < 1):
        raise GeneratorError("exponents must lie in [0, 1)")
    rng = make_rng(seed)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    p_out = ranks**-a_out
    p_in = ranks**-a_in
    p_out /= p_out.sum()
    p_in /= p_in.sum()
    arcs = set()
    duplicates = 0
    for _ in range(m):
        while True:
            i = int(rng.choice(n, p=p_out))
            j = int(rng.choice(n, p=p_in))
            if i != j:
                break
        if (i, j) in arcs:
            duplicates += 1
        arcs.add((i, j))
    if duplicates:
        log.info("scale-free generator merged %d duplicate arcs (%d of %d kept)", duplicates, len(arcs), m)
    return _from_arcs(n, sorted(arcs))

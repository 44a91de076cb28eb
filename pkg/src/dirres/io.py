"""Edge-list ingestion (SNAP / KONECT conventions) and CSV result files."""
import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GraphError, ParseError
from .graph import Digraph, _label_key, scc_from_arcs

DATA_DIR_ENV = "DIRRES_DATA_DIR"


def parse_edge_list(text, weighted=True, comment_chars="#%"):
    """Parse whitespace-separated ``src dst [weight ...]`` lines.

    Lines starting with any of ``comment_chars`` and blank lines are
    skipped. Two-column lines get weight 1.0; the third column is the
    weight when ``weighted`` is set and ignored otherwise. Further columns
    (KONECT timestamps) are ignored. Integer ids are kept as given.
    """
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in comment_chars:
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError(f"expected at least two columns, got {raw!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"vertex ids must be integers: {raw!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id: {raw!r}", lineno)
        w = 1.0
        if len(fields) >= 3:
            try:
                w3 = float(fields[2])
            except ValueError:
                raise ParseError(f"weight is not a number: {fields[2]!r}", lineno) from None
            if not np.isfinite(w3) or w3 < 0:
                raise ParseError(f"weight must be finite and nonnegative: {fields[2]!r}", lineno)
            if weighted:
                w = w3
        triples.append((u, v, w))
    return triples


@dataclass(frozen=True)
class LoadReport:
    n: int
    m: int
    n_scc: int
    m_scc: int
    loops: int
    loops_scc: int

    def line(self):
        return f"{self.n} {self.m} {self.n_scc} {self.m_scc}"


def resolve_path(path):
    p = Path(path)
    if not p.exists() and not p.is_absolute() and os.environ.get(DATA_DIR_ENV):
        alt = Path(os.environ[DATA_DIR_ENV]) / p
        if alt.exists():
            return alt
    return p


def reduce_triples(triples, keep_loops=False):
    """Largest SCC of an edge list without densifying the whole graph.

    ``n``/``m`` count distinct vertices and distinct ordered pairs
    (self-loops included) of the input; ``n_scc``/``m_scc`` the same inside
    the largest strongly connected component.
    """
    if not triples:
        raise GraphError("empty edge set")
    index = {}
    weights = {}
    for lineno, (u, v, w) in enumerate(triples, start=1):
        if not w > 0:
            raise GraphError(f"edge {lineno} ({u}, {v}, {w}): weight must be positive")
        for x in (u, v):
            if x not in index:
                index[x] = len(index)
        key = (index[u], index[v])
        weights[key] = weights.get(key, 0.0) + float(w)
    n = len(index)
    labels = list(index)
    pairs = np.array(list(weights), dtype=np.int64).reshape(-1, 2)
    loop_at = np.zeros(n, dtype=bool)
    loop_at[pairs[pairs[:, 0] == pairs[:, 1], 0]] = True
    comps = scc_from_arcs(n, pairs[:, 0], pairs[:, 1])
    best = min(comps, key=lambda c: (-len(c), min(_label_key(labels[i]) for i in c)))
    pos = {old: new for new, old in enumerate(best)}
    k = len(best)
    W = np.zeros((k, k))
    for (i, j), w in weights.items():
        if i in pos and j in pos and (i != j or keep_loops):
            W[pos[i], pos[j]] = w
    looped = loop_at[best]
    g = Digraph(W, tuple(labels[i] for i in best), looped=looped,
                loops_dropped=0 if keep_loops else int(looped.sum()))
    report = LoadReport(
        n=n, m=len(weights), n_scc=k, m_scc=g.m_with_loops,
        loops=int(loop_at.sum()), loops_scc=int(looped.sum()),
    )
    return g, report


def load_and_reduce(path, weighted=True, keep_loops=False, comment_chars="#%"):
    """Read an edge-list file and return its largest SCC with a size report."""
    text = resolve_path(path).read_text(encoding="utf-8")
    return reduce_triples(parse_edge_list(text, weighted, comment_chars), keep_loops)


def format_edge_list(g: Digraph, weighted=False):
    out = io.StringIO()
    for i, j, w in g.edges:
        a, b = g.labels[i], g.labels[j]
        out.write(f"{a} {b} {w!r}\n" if weighted else f"{a} {b}\n")
    return out.getvalue()


CSV_FIELDS = ("network", "n", "m", "n_scc", "m_scc", "method", "k", "objective", "chosen", "seed", "wall_time_s")


@dataclass(frozen=True)
class ResultRow:
    network: str
    n: int
    m: int
    n_scc: int
    m_scc: int
    method: str
    k: int
    objective: float
    chosen: tuple
    seed: int
    wall_time_s: float

    def sort_key(self):
        return (self.network, self.method, self.k, self.seed)

    def to_record(self):
        return {
            "network": self.network,
            "n": str(self.n),
            "m": str(self.m),
            "n_scc": str(self.n_scc),
            "m_scc": str(self.m_scc),
            "method": self.method,
            "k": str(self.k),
            "objective": "%.17g" % self.objective,
            "chosen": ";".join(str(v) for v in self.chosen),
            "seed": str(self.seed),
            "wall_time_s": "%.17g" % self.wall_time_s,
        }

    @classmethod
    def from_record(cls, rec):
        chosen = tuple(_parse_label(v) for v in rec["chosen"].split(";")) if rec["chosen"] else ()
        return cls(
            network=rec["network"], n=int(rec["n"]), m=int(rec["m"]),
            n_scc=int(rec["n_scc"]), m_scc=int(rec["m_scc"]), method=rec["method"],
            k=int(rec["k"]), objective=float(rec["objective"]), chosen=chosen,
            seed=int(rec["seed"]), wall_time_s=float(rec["wall_time_s"]),
        )


def _parse_label(s):
    try:
        return int(s)
    except ValueError:
        return s


def write_csv(rows, handle):
    writer = csv.DictWriter(handle, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_record())


def rows_to_csv(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(handle):
    return [ResultRow.from_record(rec) for rec in csv.DictReader(handle)]

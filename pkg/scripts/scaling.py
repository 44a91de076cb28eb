"""Greedy wall time versus n on ER digraphs (k = 6), single-threaded BLAS.

    python3 scripts/scaling.py --sizes 200 400 800 1600
"""
import argparse
import time

import numpy as np
from threadpoolctl import threadpool_limits

from dirres import GenSpec, greedy_rdm
from dirres.linalg import inverse


def best_of(fn, repeats):
    out = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 400, 800, 1600])
    ap.add_argument("--p", type=float, default=0.15)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    with threadpool_limits(limits=args.threads):
        prev = prev_inv = None
        print(f"{'n':>6}{'greedy s':>12}{'ratio':>8}{'inverse s':>12}{'ratio':>8}")
        for n in args.sizes:
            g = GenSpec("er", n, seed=1, p=args.p).generate()
            greedy_rdm(g, args.k)
            t = best_of(lambda: greedy_rdm(g, args.k), args.repeats)
            # a single dense inversion of the same size, for reference
            ti = best_of(lambda: inverse(g.W + n * np.eye(n)), args.repeats)
            r = f"{t / prev:8.2f}" if prev else f"{'':>8}"
            ri = f"{ti / prev_inv:8.2f}" if prev_inv else f"{'':>8}"
            print(f"{n:>6}{t:>12.4f}{r}{ti:>12.4f}{ri}")
            prev, prev_inv = t, ti


if __name__ == "__main__":
    main()

"""Command-line entry point ``dirres``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
"""
import argparse
import logging
import sys

from . import __version__
from .config import DEFAULT
from .errors import DirresError
from .experiment import ExperimentConfig, run_experiment
from .generators import MODELS, GenSpec
from .graph import largest_scc
from .io import format_edge_list, load_and_reduce, rows_to_csv
from .rdm import METHODS
from .resistance import build_engine, group_resistance, group_resistance_point
from . import walks

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("graph source")
    src.add_argument("--input", help="edge-list file (relative paths also searched in $DIRRES_DATA_DIR)")
    src.add_argument("--gen", choices=MODELS, help="generate a random digraph instead of reading a file")
    src.add_argument("--n", type=int, default=50)
    src.add_argument("--K", type=int, default=10, help="ws: neighbours per side")
    src.add_argument("--p", type=float, default=None, help="ws rewiring / er arc probability")
    src.add_argument("--b", type=float, default=1.0, help="ws: probability an edge points outward")
    src.add_argument("--m", type=int, default=300, help="sf: number of arc draws")
    src.add_argument("--a-out", type=float, default=0.5)
    src.add_argument("--a-in", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weighted", dest="weighted", action="store_true", default=True,
                   help="use the third column as weight (default)")
    p.add_argument("--binarize", dest="weighted", action="store_false", help="ignore weights")
    p.add_argument("--keep-loops", action="store_true", help="keep self-loops instead of dropping them")
    p.add_argument("--tolerance", type=float, default=None, help="algebraic tolerance override")
    p.add_argument("--output", help="write CSV / edge list here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _genspec(args):
    if args.gen == "er":
        p = 0.15 if args.p is None else args.p
    else:
        p = 0.5 if args.p is None else args.p
    return GenSpec(args.gen, args.n, args.seed, K=args.K, p=p, b=args.b, m=args.m,
                   a_out=args.a_out, a_in=args.a_in)


def _graph(args):
    """Largest SCC of the selected source, with ``(n, m, n', m')``."""
    if args.input and args.gen:
        raise _UsageError("give either --input or --gen, not both")
    if args.input:
        g, rep = load_and_reduce(args.input, weighted=args.weighted, keep_loops=args.keep_loops)
        return g, (rep.n, rep.m, rep.n_scc, rep.m_scc)
    if args.gen:
        raw = _genspec(args).generate()
        g, _ = largest_scc(raw)
        return g, (raw.n, raw.m, g.n, g.m)
    raise _UsageError("a graph source is required: --input FILE or --gen MODEL")


class _UsageError(Exception):
    pass


def _vertex(g, label):
    return g.index_of(label)


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_resist(args, tol):
    g, _ = _graph(args)
    e = build_engine(g, tol)
    a, b = args.pair
    print(repr(e.resistance(_vertex(g, a), _vertex(g, b))))


def cmd_node_res(args, tol):
    g, _ = _graph(args)
    e = build_engine(g, tol)
    if args.vertex is not None:
        print(repr(e.vertex_resistance(_vertex(g, args.vertex))))
        return
    lines = [f"{lab} {val!r}" for lab, val in zip(g.labels, e.vertex_resistances())]
    _emit(args, "\n".join(lines) + "\n")


def cmd_kirchhoff(args, tol):
    g, _ = _graph(args)
    e = build_engine(g, tol)
    print(f"R {e.kirchhoff_index()!r}")
    print(f"R* {e.multiplicative_kirchhoff_index()!r}")


def cmd_kemeny(args, tol):
    g, _ = _graph(args)
    print(repr(build_engine(g, tol).kemeny_constant()))


def cmd_group(args, tol):
    g, _ = _graph(args)
    X = [_vertex(g, v) for v in args.set]
    if args.vertex is not None:
        print(repr(group_resistance_point(g, _vertex(g, args.vertex), X, tol)))
    else:
        print(repr(group_resistance(g, X, tol)))


def cmd_rdm(args, tol):
    if args.input and args.gen:
        raise _UsageError("give either --input or --gen, not both")
    if args.gen:
        source = _genspec(args)
    elif args.input:
        source = args.input
    else:
        raise _UsageError("a graph source is required: --input FILE or --gen MODEL")
    cfg = ExperimentConfig(
        input=source,
        k_max=args.k,
        methods=args.method or ["greedy"],
        seeds=args.seeds or [args.seed],
        brute_force_cap=args.cap,
        tolerances=tol,
        weighted=args.weighted,
        keep_loops=args.keep_loops,
        record_wall_time=not args.no_timing,
        network=args.network,
    )
    rows = run_experiment(cfg)
    _emit(args, rows_to_csv(rows))
    if args.output:
        best = {}
        for r in rows:
            if r.k == args.k and r.objective == r.objective:
                best.setdefault(r.method, []).append(r.objective)
        for method, vals in best.items():
            print(f"{method} k={args.k} mean objective {sum(vals) / len(vals):.10g} over {len(vals)} run(s)")


def cmd_gen(args, tol):
    if not args.gen:
        raise _UsageError("gen needs --gen MODEL")
    g = _genspec(args).generate()
    _emit(args, format_edge_list(g))
    if args.output:
        print(f"{g.n} {g.m}")


def cmd_scc(args, tol):
    _, sizes = _graph(args)
    print("%d %d %d %d" % sizes)


def cmd_simulate(args, tol):
    g, _ = _graph(args)
    i = _vertex(g, args.source)
    target = [_vertex(g, v) for v in args.target] if args.target else None
    q = args.quantity
    kw = dict(walks=args.walks, seed=args.seed)
    if q == "return":
        est = walks.estimate_return_time(g, i, **kw)
    elif q == "kemeny":
        est = walks.estimate_kemeny(g, i, **kw)
    elif target is None:
        raise _UsageError(f"--target is required for {q}")
    elif q == "escape":
        est = walks.estimate_escape_probability(g, i, target[0] if len(target) == 1 else target, **kw)
    elif q == "hitting":
        est = walks.estimate_hitting_time(g, i, target[0], **kw)
    elif q == "commute":
        est = walks.estimate_commute_time(g, i, target[0] if len(target) == 1 else target, **kw)
    else:
        if not args.via:
            raise _UsageError("detour needs --via X [X ...]")
        est = walks.estimate_detour_time(g, i, [_vertex(g, v) for v in args.via], target[0], **kw)
    print(f"{est.mean!r} {est.std_error!r} {est.samples}" + ("" if est.valid else " invalid"))


def build_parser():
    common = _common()
    parser = _Parser(prog="dirres", description="Resistance distances on strongly connected digraphs")
    parser.add_argument("--version", action="version", version=f"dirres {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    p = add("resist", cmd_resist, "resistance distance between two vertices")
    p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("I", "J"))
    p = add("node-res", cmd_node_res, "vertex resistance Omega(i), one or all vertices")
    p.add_argument("--vertex", type=int)
    add("kirchhoff", cmd_kirchhoff, "Kirchhoff and multiplicative Kirchhoff index")
    add("kemeny", cmd_kemeny, "Kemeny's constant")
    p = add("group", cmd_group, "group resistance Omega(X), or Omega(i, X) with --vertex")
    p.add_argument("--set", nargs="+", type=int, required=True)
    p.add_argument("--vertex", type=int)
    p = add("rdm", cmd_rdm, "select k vertices minimising group resistance; CSV rows for k = 1..K")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", action="append", choices=METHODS)
    p.add_argument("--seeds", nargs="+", type=int)
    p.add_argument("--cap", type=int, default=2_000_000, help="brute-force subset cap")
    p.add_argument("--network", help="label for the network column")
    p.add_argument("--no-timing", action="store_true", help="write 0 wall times (byte-stable output)")
    add("gen", cmd_gen, "write a generated digraph as an edge list")
    add("scc", cmd_scc, "print 'n m n' m'' for the input and its largest SCC")
    p = add("simulate", cmd_simulate, "Monte Carlo random-walk estimate (mean, standard error, walks)")
    p.add_argument("--quantity", required=True,
                   choices=("escape", "hitting", "commute", "detour", "return", "kemeny"))
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", nargs="+", type=int)
    p.add_argument("--via", nargs="+", type=int)
    p.add_argument("--walks", type=int, default=100_000)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    tol = DEFAULT.with_overrides(algebraic=args.tolerance)
    try:
        args.func(args, tol)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dirres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DirresError as exc:
        print(f"dirres: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError, IndexError) as exc:
        print(f"dirres: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

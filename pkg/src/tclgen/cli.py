"""Command-line interface.

    tclgen fit <in> [--samples 10000] [--seed S]
    tclgen generate <in> --rho <v|auto> [--iterations N] [--seed S] -o <out>
    tclgen stats <in> [--hop-sources K|all]
    tclgen compare <a> <b>
    tclgen verify <in> --runs R
    tclgen bench <in> --scale k

Every command prints a JSON report (or writes it with ``--report``).
Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation. ``TCLGEN_SEED`` supplies the seed when ``--seed`` is absent.
"""
import argparse
import os
import sys

from ._random import derive_rng
from .bench import bench_generation, retry_bound
from .exceptions import GraphError, InvariantViolation
from .fitting import EmConfig, fit_rho
from .generators import GenParams, generate_cl_fast, generate_tcl
from .io import IngestOptions, RunReport, load_edge_list, write_edge_list, write_series_csv
from .stats import (
    compute_stats,
    empirical_edge_probabilities,
    hop_plot_gap,
    ks_distance,
    top_degree_edges,
    two_hop_landing,
)

SEED_ENV = "TCLGEN_SEED"
SLOW_CL_NODE_LIMIT = 5_000

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "")
        if message:
            sys.stderr.write(message)
        raise SystemExit(0)


def _rho_arg(text):
    if text == "auto":
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number in [0, 1] or 'auto', got {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"rho must lie in [0, 1], got {value}")
    return value


def _sources_arg(text):
    if text == "all":
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'all', got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("hop sources must be positive")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"master seed (default: ${SEED_ENV})")
    common.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--degree-cap", type=_positive_int, default=None,
                        help="drop nodes whose degree exceeds this before anything else")
    common.add_argument("--no-reflect", dest="reflect", action="store_false",
                        help="input is already undirected (recorded in the report only)")

    p = _Parser(prog="tclgen", description="Chung-Lu / Transitive Chung-Lu graph generation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("fit", parents=[common], help="learn rho by EM")
    s.add_argument("input")
    s.add_argument("--samples", type=_positive_int, default=10_000)
    s.add_argument("--max-iter", type=_positive_int, default=100)
    s.add_argument("--timings", action="store_true", help="include wall times (breaks byte-for-byte reproducibility)")

    s = sub.add_parser("generate", parents=[common], help="generate a synthetic graph")
    s.add_argument("input")
    s.add_argument("--rho", type=_rho_arg, required=True)
    s.add_argument("--iterations", type=int, default=None)
    s.add_argument("--samples", type=_positive_int, default=10_000)
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("stats", parents=[common], help="degree, clustering and hop-plot statistics")
    s.add_argument("input")
    s.add_argument("--hop-sources", type=_sources_arg, default=None)
    s.add_argument("--cc-include-deg1", action="store_true",
                   help="count degree-1 nodes as clustering 0 instead of excluding them")
    s.add_argument("--csv-dir", default=None, help="also write each series as a two-column CSV")

    s = sub.add_parser("compare", parents=[common], help="distances between two graphs' statistics")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--hop-sources", type=_sources_arg, default=None)
    s.add_argument("--cc-include-deg1", action="store_true")

    s = sub.add_parser("verify", parents=[common], help="Monte Carlo checks of the generators")
    s.add_argument("input")
    s.add_argument("--runs", type=_positive_int, required=True)
    s.add_argument("--walks", type=_positive_int, default=1_000, help="two-hop walks per generated graph")
    s.add_argument("--rho", type=_rho_arg, default=0.0)

    s = sub.add_parser("bench", parents=[common], help="generation time at M, 2M, ..., kM edges")
    s.add_argument("input")
    s.add_argument("--scale", type=_positive_int, required=True)
    s.add_argument("--repeats", type=_positive_int, default=5)
    s.add_argument("--rho", type=_rho_arg, default=0.0)
    return p


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _load(path, args):
    return load_edge_list(path, IngestOptions(reflect=args.reflect, degree_cap=args.degree_cap))


def _fit(g, args, seed):
    cfg = EmConfig(samples_per_iteration=args.samples, max_iterations=getattr(args, "max_iter", 100))
    return fit_rho(g, cfg, derive_rng(seed, "fit"))


def _cmd_fit(args, seed):
    g = _load(args.input, args)
    trace = _fit(g, args, seed)
    return {"n": g.n_nodes, "m": g.n_edges, "em": trace.as_dict(timings=args.timings)}


def _cmd_generate(args, seed):
    g = _load(args.input, args)
    out = {}
    rho = args.rho
    if rho == "auto":
        trace = _fit(g, args, seed)
        rho = trace.rho_final
        out["em"] = trace.as_dict()
    params = GenParams(rho=rho, iterations=args.iterations, seed=seed)
    h, metrics = generate_tcl(g, params)
    write_edge_list(h, args.output)
    if h.labels is not None:
        with open(args.output + ".labels", "w", newline="\n") as fh:
            fh.write("# dense_id original_label\n")
            fh.writelines(f"{i} {lab}\n" for i, lab in enumerate(h.labels.tolist()))
    out.update({"rho": rho, "n": h.n_nodes, "m": h.n_edges, "metrics": metrics.as_dict()})
    return out


def _cmd_stats(args, seed):
    g = _load(args.input, args)
    rep = compute_stats(g, args.hop_sources, derive_rng(seed, "stats"), args.cc_include_deg1)
    if args.csv_dir:
        os.makedirs(args.csv_dir, exist_ok=True)
        write_series_csv(rep.degree_ccdf.points, os.path.join(args.csv_dir, "degree_ccdf.csv"), ("degree", "ccdf"))
        write_series_csv(rep.clustering_ccdf.points, os.path.join(args.csv_dir, "clustering_ccdf.csv"),
                         ("clustering", "ccdf"))
        write_series_csv(rep.hop_plot.points, os.path.join(args.csv_dir, "hop_plot.csv"), ("hops", "fraction"))
    return rep.as_dict()


def _cmd_compare(args, seed):
    ga, gb = _load(args.a, args), _load(args.b, args)
    ra = compute_stats(ga, args.hop_sources, derive_rng(seed, "stats"), args.cc_include_deg1)
    rb = compute_stats(gb, args.hop_sources, derive_rng(seed, "stats"), args.cc_include_deg1)
    cc = None
    if len(ra.clustering_ccdf) and len(rb.clustering_ccdf):
        cc = ks_distance(ra.clustering_ccdf, rb.clustering_ccdf)
    return {
        "degree_ks": ks_distance(ra.degree_ccdf, rb.degree_ccdf),
        "clustering_ks": cc,
        "hop_plot_max_gap": hop_plot_gap(ra.hop_plot, rb.hop_plot),
    }


def _cmd_verify(args, seed):
    g = _load(args.input, args)
    out = {"n": g.n_nodes, "m": g.n_edges, "runs": args.runs}
    watch = top_degree_edges(g)
    if g.n_nodes <= SLOW_CL_NODE_LIMIT and watch:
        fast = empirical_edge_probabilities(g, "cl-fast", args.runs, watch, derive_rng(seed, "verify-fast"))
        slow = empirical_edge_probabilities(g, "cl-slow", args.runs, watch, derive_rng(seed, "verify-slow"))
        gap = max(abs(fast[e][0] - slow[e][0]) for e in watch)
        out["edge_probabilities"] = {
            "watched": len(watch),
            "max_abs_fast_minus_slow": gap,
            "within_0.02": gap <= 0.02,
            "points": [[float(fast[e][1]), float(fast[e][0]), float(slow[e][0])] for e in watch],
        }
    else:
        out["edge_probabilities"] = None
    tv, _ = two_hop_landing(g, args.runs, args.walks, derive_rng(seed, "verify-walk"))
    out["two_hop"] = {"total_variation": tv, "within_0.05": tv <= 0.05}
    rho = args.rho
    if rho == "auto":
        rho = fit_rho(g, EmConfig(), derive_rng(seed, "fit")).rho_final
    _, m_cl = generate_cl_fast(g, rng=derive_rng(seed, "verify-retry-cl"))
    _, m_tcl = generate_tcl(g, GenParams(rho=rho), rng=derive_rng(seed, "verify-retry-tcl"))
    bound = retry_bound(g)
    out["retry"] = {
        "bound": bound,
        "cl_ratio": m_cl.retry_ratio,
        "tcl_ratio": m_tcl.retry_ratio,
        "tcl_rho": rho,
        "within_bound": max(m_cl.retry_ratio, m_tcl.retry_ratio) <= bound,
    }
    return out


def _cmd_bench(args, seed):
    g = _load(args.input, args)
    rows = bench_generation(g, args.scale, rho=0.0 if args.rho == "auto" else args.rho,
                            repeats=args.repeats, seed=seed or 0)
    return {"rows": rows}


_COMMANDS = {
    "fit": _cmd_fit,
    "generate": _cmd_generate,
    "stats": _cmd_stats,
    "compare": _cmd_compare,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def _echo(args, seed):
    params = {k: v for k, v in vars(args).items() if k not in ("command", "report")}
    params["seed"] = seed
    return params


def run_command(argv):
    """Run one CLI invocation.

    Returns
    -------
    (int, RunReport or None)
        Exit code and the report (``None`` on failure).
    """
    try:
        args = build_parser().parse_args(argv)
        seed = _seed(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE, None
    try:
        outputs = _COMMANDS[args.command](args, seed)
    except (InvariantViolation, AssertionError) as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL, None
    except (GraphError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA, None
    report = RunReport(command=args.command, parameters=_echo(args, seed), outputs=outputs)
    text = report.to_json()
    if args.report:
        with open(args.report, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK, report


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
